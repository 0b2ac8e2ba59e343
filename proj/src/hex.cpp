#include "simeck/hex.hpp"

#include <stdexcept>

namespace simeck {

namespace {

constexpr char kDigits[] = "0123456789abcdef";

int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(word_t value, unsigned n) {
    unsigned digits = n / 4;
    std::string out(digits, '0');
    for (unsigned i = 0; i < digits; ++i)
        out[digits - 1 - i] = kDigits[(value >> (4 * i)) & 0xf];
    return out;
}

std::string block_to_hex(Block b, unsigned n) {
    return to_hex(b.x, n) + to_hex(b.y, n);
}

std::string key_to_hex(const MasterKey& key, unsigned n) {
    return to_hex(key.k[3], n) + to_hex(key.k[2], n) + to_hex(key.k[1], n) + to_hex(key.k[0], n);
}

word_t parse_hex_word(std::string_view text, unsigned n) {
    unsigned digits = n / 4;
    if (text.size() != digits)
        throw std::invalid_argument("expected " + std::to_string(digits) + " hex digits, got " +
                                    std::to_string(text.size()));
    word_t value = 0;
    for (char c : text) {
        int d = nibble(c);
        if (d < 0) throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
        value = (value << 4) | static_cast<word_t>(d);
    }
    return value;
}

Block parse_hex_block(std::string_view text, unsigned n) {
    unsigned digits = n / 4;
    if (text.size() != 2 * digits)
        throw std::invalid_argument("expected " + std::to_string(2 * digits) + " hex digits, got " +
                                    std::to_string(text.size()));
    return {parse_hex_word(text.substr(0, digits), n), parse_hex_word(text.substr(digits), n)};
}

MasterKey parse_hex_key(std::string_view text, unsigned n) {
    unsigned digits = n / 4;
    if (text.size() != 4 * digits)
        throw std::invalid_argument("expected " + std::to_string(4 * digits) + " hex digits, got " +
                                    std::to_string(text.size()));
    MasterKey key;
    for (unsigned i = 0; i < 4; ++i)
        key.k[3 - i] = parse_hex_word(text.substr(i * digits, digits), n);
    return key;
}

}  // namespace simeck
