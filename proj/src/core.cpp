#include "simeck/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace simeck {

namespace {

constexpr word_t mask_for(unsigned n) {
    return n >= 32 ? 0xffffffffu : ((word_t{1} << n) - 1);
}

constexpr std::array<Variant, 3> kVariants{{
    {VariantId::s32_64, 16, 32, ZSequence::z0, mask_for(16), mask_for(16) ^ 3u},
    {VariantId::s48_96, 24, 36, ZSequence::z0, mask_for(24), mask_for(24) ^ 3u},
    {VariantId::s64_128, 32, 44, ZSequence::z1, mask_for(32), mask_for(32) ^ 3u},
}};

// Fibonacci LFSR state update. State bit k holds sequence bit s_{t+k}; the
// new top bit is s_{t+5} = s_{t+2} ^ s_t (z0) or s_{t+6} = s_{t+1} ^ s_t (z1).
std::uint32_t lfsr_init(ZSequence seq) {
    return seq == ZSequence::z0 ? 0x1f : 0x3f;
}

std::uint32_t lfsr_step(std::uint32_t state, ZSequence seq) {
    if (seq == ZSequence::z0) {
        std::uint32_t fb = (state ^ (state >> 2)) & 1;
        return (state >> 1) | (fb << 4);
    }
    std::uint32_t fb = (state ^ (state >> 1)) & 1;
    return (state >> 1) | (fb << 5);
}

}  // namespace

const Variant& variant(VariantId id) {
    return kVariants[static_cast<std::size_t>(id)];
}

std::span<const Variant, 3> all_variants() {
    return kVariants;
}

const char* variant_name(VariantId id) {
    switch (id) {
        case VariantId::s32_64: return "s32_64";
        case VariantId::s48_96: return "s48_96";
        case VariantId::s64_128: return "s64_128";
    }
    return "";
}

word_t rotl(word_t x, unsigned a, unsigned n) {
    a %= n;
    x &= mask_for(n);
    if (a == 0) return x;
    return ((x << a) | (x >> (n - a))) & mask_for(n);
}

word_t f_function(word_t x, unsigned n) {
    return (x & rotl(x, 5, n)) ^ rotl(x, 1, n);
}

Block round_forward(Block s, word_t key, unsigned n) {
    return {(s.y ^ f_function(s.x, n) ^ key) & mask_for(n), s.x};
}

Block round_backward(Block s, word_t key, unsigned n) {
    return {s.y, (s.x ^ f_function(s.y, n) ^ key) & mask_for(n)};
}

int z_bit(ZSequence seq, unsigned i) {
    std::uint32_t state = lfsr_init(seq);
    for (unsigned k = 0; k < i; ++k) state = lfsr_step(state, seq);
    return static_cast<int>(state & 1);
}

int z_bit(const Variant& v, unsigned i) {
    return z_bit(v.sequence, i);
}

std::vector<word_t> expand_key(const MasterKey& key, const Variant& v) {
    std::vector<word_t> keys(v.rounds);
    for (unsigned i = 0; i < 4; ++i) keys[i] = key.k[i] & v.mask;
    std::uint32_t lfsr = lfsr_init(v.sequence);
    for (unsigned i = 0; i + 4 < v.rounds; ++i) {
        keys[i + 4] = keys[i] ^ f_function(keys[i + 1], v.word_size) ^ v.constant ^ (lfsr & 1);
        lfsr = lfsr_step(lfsr, v.sequence);
    }
    return keys;
}

MasterKey invert_key_schedule(std::span<const word_t, 4> keys, unsigned start_index, const Variant& v) {
    if (start_index + 4 > v.rounds)
        throw std::invalid_argument("invert_key_schedule: start_index out of range");
    // w holds (K^i, K^{i+1}, K^{i+2}, K^{i+3}); step down with
    // K^{i-1} = K^{i+3} ^ F(K^i) ^ C ^ z_{i-1}.
    std::array<word_t, 4> w;
    std::copy(keys.begin(), keys.end(), w.begin());
    for (unsigned i = start_index; i > 0; --i) {
        word_t prev = w[3] ^ f_function(w[0], v.word_size) ^ v.constant ^
                      static_cast<word_t>(z_bit(v.sequence, i - 1));
        w = {prev & v.mask, w[0], w[1], w[2]};
    }
    return MasterKey{w};
}

Block encrypt_rounds(Block b, std::span<const word_t> round_keys, unsigned n) {
    for (word_t k : round_keys) b = round_forward(b, k, n);
    return b;
}

Block encrypt(Block p, const MasterKey& key, const Variant& v) {
    auto keys = expand_key(key, v);
    return encrypt_rounds({p.x & v.mask, p.y & v.mask}, keys, v.word_size);
}

Block decrypt(Block c, const MasterKey& key, const Variant& v) {
    auto keys = expand_key(key, v);
    Block s{c.x & v.mask, c.y & v.mask};
    for (unsigned r = v.rounds; r > 0; --r) s = round_backward(s, keys[r - 1], v.word_size);
    return s;
}

std::vector<Block> encrypt_traced(Block p, const MasterKey& key, const Variant& v) {
    auto keys = expand_key(key, v);
    std::vector<Block> trace;
    trace.reserve(v.rounds + 1);
    Block s{p.x & v.mask, p.y & v.mask};
    trace.push_back(s);
    for (unsigned r = 0; r < v.rounds; ++r) {
        s = round_forward(s, keys[r], v.word_size);
        trace.push_back(s);
    }
    return trace;
}

word_t diffusion_mask(unsigned rounds_after, unsigned n) {
    word_t m = 1;
    for (unsigned i = 0; i < rounds_after; ++i)
        m |= rotl(m, 1, n) | rotl(m, 5, n);
    return m;
}

}  // namespace simeck
