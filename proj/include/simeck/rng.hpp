#pragma once

#include <cstdint>

namespace simeck {

// SplitMix64 used as a stateless counter generator: draw k depends only on
// (seed, k), so streams can be split per trial and replayed exactly.
struct SplitMix64 {
    std::uint64_t seed = 0;

    std::uint64_t at(std::uint64_t index) const {
        std::uint64_t x = seed + (index + 1) * 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }
};

}  // namespace simeck
