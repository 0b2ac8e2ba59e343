#pragma once

#include <cstdint>
#include <vector>

#include "simeck/core.hpp"
#include "simeck/rng.hpp"

namespace simeck::sim {

struct FaultSpec {
    unsigned round;     // the flip lands in X^round before that round runs; round == T flips the ciphertext half
    unsigned position;  // bit index, LSB = 0
};

// What the attacker is allowed to see: one correct/faulty ciphertext pair.
struct CiphertextPair {
    Block correct;
    Block faulty;
};

struct FaultedPair {
    Block correct;
    Block faulty;
    unsigned true_position;  // ground truth for test assertions; attack code must not read it

    CiphertextPair observable() const { return {correct, faulty}; }
};

// Re-runs a traced encryption with bit spec.position of X^{spec.round}
// flipped before that round executes. trace[r] is the actual (faulted)
// input of round r.
std::vector<Block> encrypt_traced_with_fault(Block p, const MasterKey& key, const Variant& v,
                                             FaultSpec spec);

// Simulates the attacker's physical access: a fixed plaintext encrypted
// under a hidden key, plus on-demand re-runs with one bit of an
// intermediate left input flipped at a random position the attacker
// neither controls nor observes.
class FaultOracle {
public:
    FaultOracle(const Variant& v, const MasterKey& key, Block plaintext, std::uint64_t seed);

    const Variant& variant() const { return *variant_; }
    Block plaintext() const { return plaintext_; }
    Block correct_ciphertext() const { return trace_.back(); }
    std::uint64_t injections() const { return draw_index_; }

    // Flips a uniformly random bit of X^round and returns the resulting pair.
    FaultedPair inject_fault(unsigned round);

    // Controlled-position variant for trail studies and tests. Does not
    // consume the random stream.
    FaultedPair inject_fault_at(FaultSpec spec) const;

private:
    const Variant* variant_;
    MasterKey key_;
    Block plaintext_;
    std::vector<word_t> schedule_;
    std::vector<Block> trace_;  // correct encryption, ground truth
    SplitMix64 positions_;
    std::uint64_t draw_index_ = 0;
};

}  // namespace simeck::sim
