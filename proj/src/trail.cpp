#include "simeck/trail.hpp"

#include <stdexcept>

#include "simeck/oracle.hpp"
#include "simeck/rng.hpp"

namespace simeck::sim {

TrailTable classify_trail(const Variant& v, unsigned fault_round, unsigned position,
                          unsigned samples, std::uint64_t seed) {
    if (fault_round == 0 || fault_round > v.rounds)
        throw std::invalid_argument("trail fault round out of range");
    if (position >= v.word_size) throw std::invalid_argument("trail position out of range");

    unsigned first = fault_round - 1;
    unsigned rows = v.rounds - first + 1;
    std::vector<word_t> seen_one(rows, 0), seen_zero(rows, 0);

    SplitMix64 rng{seed};
    std::uint64_t idx = 0;
    for (unsigned s = 0; s < samples; ++s) {
        MasterKey key;
        for (auto& w : key.k) w = static_cast<word_t>(rng.at(idx++)) & v.mask;
        Block p{static_cast<word_t>(rng.at(idx++)) & v.mask,
                static_cast<word_t>(rng.at(idx++)) & v.mask};
        auto good = encrypt_traced(p, key, v);
        auto bad = encrypt_traced_with_fault(p, key, v, {fault_round, position});
        for (unsigned r = 0; r < rows; ++r) {
            word_t delta = good[first + r].x ^ bad[first + r].x;
            seen_one[r] |= delta;
            seen_zero[r] |= ~delta & v.mask;
        }
    }

    TrailTable table{fault_round, position, first, {}};
    table.rows.reserve(rows);
    for (unsigned r = 0; r < rows; ++r) {
        std::string row(v.word_size, '?');
        for (unsigned j = 0; j < v.word_size; ++j) {
            bool one = (seen_one[r] >> j) & 1;
            bool zero = (seen_zero[r] >> j) & 1;
            row[j] = one && zero ? '*' : (one ? '1' : '0');
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string predicted_trail_row(const Variant& v, unsigned position, int rounds_after) {
    std::string row(v.word_size, '0');
    if (rounds_after < 0) return row;
    auto dist = static_cast<unsigned>(rounds_after);
    word_t support = rotl(diffusion_mask(dist, v.word_size), position, v.word_size);
    for (unsigned j = 0; j < v.word_size; ++j)
        if ((support >> j) & 1) row[j] = '*';
    if (dist <= 4 && 5 * dist <= v.word_size) row[(position + dist) % v.word_size] = '1';
    return row;
}

}  // namespace simeck::sim
