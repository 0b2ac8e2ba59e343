#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace simeck {

// All three family members work on n-bit words with n <= 32. Words are held
// in uint32_t and masked back to n bits after every operation.
using word_t = std::uint32_t;

enum class VariantId { s32_64, s48_96, s64_128 };

// Round-constant bit sequences: z0 comes from the LFSR with primitive
// polynomial x^5 + x^2 + 1, z1 from x^6 + x + 1, both seeded with all ones.
enum class ZSequence { z0, z1 };

struct Variant {
    VariantId id;
    unsigned word_size;  // n: 16, 24 or 32
    unsigned rounds;     // T: 32, 36 or 44
    ZSequence sequence;
    word_t mask;         // 2^n - 1
    word_t constant;     // key schedule constant 2^n - 4

    unsigned block_bits() const { return 2 * word_size; }
    unsigned key_bits() const { return 4 * word_size; }
};

const Variant& variant(VariantId id);
std::span<const Variant, 3> all_variants();
const char* variant_name(VariantId id);

// (x, y): left and right n-bit halves of the state; the plaintext is x || y.
struct Block {
    word_t x = 0;
    word_t y = 0;
    friend bool operator==(const Block&, const Block&) = default;
};

// The master key supplies the first four round keys; k[i] is K^i. The
// conventional big-endian rendering is K^3 || K^2 || K^1 || K^0.
struct MasterKey {
    std::array<word_t, 4> k{};
    friend bool operator==(const MasterKey&, const MasterKey&) = default;
};

// Circular left rotation of an n-bit word; the amount is reduced mod n.
word_t rotl(word_t x, unsigned a, unsigned n);

// F(X) = (X & S^5(X)) ^ S^1(X)
word_t f_function(word_t x, unsigned n);

// One Feistel round: (x, y) -> (y ^ F(x) ^ k, x), and its inverse.
Block round_forward(Block s, word_t key, unsigned n);
Block round_backward(Block s, word_t key, unsigned n);

// i-th bit of the round-constant sequence. The LFSR outputs the low state
// bit before stepping.
int z_bit(ZSequence seq, unsigned i);
int z_bit(const Variant& v, unsigned i);

// Round keys K^0 .. K^{T-1}: K^{i+4} = K^i ^ F(K^{i+1}) ^ C ^ z_i.
std::vector<word_t> expand_key(const MasterKey& key, const Variant& v);

// Rolls the schedule recurrence backwards from four consecutive round keys
// (K^s .. K^{s+3}) to the master key. Throws std::invalid_argument when
// s + 4 > T.
MasterKey invert_key_schedule(std::span<const word_t, 4> keys, unsigned start_index, const Variant& v);

Block encrypt_rounds(Block b, std::span<const word_t> round_keys, unsigned n);
Block encrypt(Block p, const MasterKey& key, const Variant& v);
Block decrypt(Block c, const MasterKey& key, const Variant& v);

// All T + 1 round inputs (X^0, Y^0) .. (X^T, Y^T). Simulator ground truth;
// attack code only ever sees ciphertexts.
std::vector<Block> encrypt_traced(Block p, const MasterKey& key, const Variant& v);

// Positions a single-bit disturbance in the left half can reach i rounds
// later, as a bit mask anchored at offset 0. One round maps offset j onto
// {j, j+1, j+5}, so the mask grows as S_0 = {0}, S_{i+1} = S_i | S_i<<1 | S_i<<5.
word_t diffusion_mask(unsigned rounds_after, unsigned n);

}  // namespace simeck
