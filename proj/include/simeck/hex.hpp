#pragma once

#include <string>
#include <string_view>

#include "simeck/core.hpp"

namespace simeck {

// Hex I/O used by the command line tools: big-endian nibble order,
// lowercase output. Blocks render as X || Y, keys as K^3 || K^2 || K^1 || K^0.
// Parsers demand the exact nibble count for the word size and throw
// std::invalid_argument otherwise.

std::string to_hex(word_t value, unsigned n);
std::string block_to_hex(Block b, unsigned n);
std::string key_to_hex(const MasterKey& key, unsigned n);

word_t parse_hex_word(std::string_view text, unsigned n);
Block parse_hex_block(std::string_view text, unsigned n);
MasterKey parse_hex_key(std::string_view text, unsigned n);

}  // namespace simeck
