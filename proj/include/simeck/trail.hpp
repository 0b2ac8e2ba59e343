#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simeck/core.hpp"

namespace simeck::sim {

// Differential trail of the left half for the rounds around a single-bit
// flip, each cell classified as constant 0, constant 1 or data dependent
// (*). Row r covers Delta^{first_round + r}; bit 0 is the leftmost
// character. The table spans fault_round - 1 through T.
struct TrailTable {
    unsigned fault_round = 0;
    unsigned position = 0;
    unsigned first_round = 0;
    std::vector<std::string> rows;
};

// Empirical classification over `samples` random key/plaintext pairs.
TrailTable classify_trail(const Variant& v, unsigned fault_round, unsigned position,
                          unsigned samples, std::uint64_t seed);

// Closed-form prediction of the same row from the flip's diffusion pattern:
// 0 outside the reachable support, 1 on the pinned diagonal, * elsewhere.
// rounds_after -1 is the quiet row before the fault.
std::string predicted_trail_row(const Variant& v, unsigned position, int rounds_after);

}  // namespace simeck::sim
