#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "simeck/core.hpp"
#include "simeck/oracle.hpp"

namespace simeck::dfa {

// A partially recovered n-bit word. Bit j of value is meaningful only where
// bit j of mask is set; unknown bits are stored as 0.
struct KnownBits {
    word_t value = 0;
    word_t mask = 0;

    bool known(unsigned j) const { return (mask >> j) & 1; }
    int bit(unsigned j) const { return static_cast<int>((value >> j) & 1); }
    bool complete(word_t full_mask) const { return (mask & full_mask) == full_mask; }
};

// Records bit j as b. Returns false if j was already known with the other
// value; the stored state is unchanged in that case.
bool set_known_bit(KnownBits& kb, unsigned j, int b);

// Merges `from` into `into`. Overlapping bits must agree; on disagreement
// `into` is left untouched, the clashing positions are reported through
// `conflicts` and false is returned.
bool merge_known_bits(KnownBits& into, const KnownBits& from, word_t* conflicts = nullptr);

// Differential observables of one pair after d rounds have been peeled off.
// With the current top round written as T' = T - d:
//   x_top          X^{T'-1}  (the exposed Y half of the peeled ciphertext)
//   delta_top_plus Delta^{T'}
//   delta_top      Delta^{T'-1}
//   delta_minus1   Delta^{T'-2}, reconstructed from the three values above
struct DifferentialView {
    unsigned depth = 0;
    word_t x_top = 0;
    word_t delta_top_plus = 0;
    word_t delta_top = 0;
    word_t delta_minus1 = 0;
};

// One-round differential step of the F function, as a bit: given the full
// word Delta^t, bit j of Delta^{t-1}, and the correct input X^t, returns
// bit j of Delta^{t+1}:
//   d^{t+1}_j = d^t_j x^t_{j-5} ^ d^t_{j-5} x^t_j ^ d^t_j d^t_{j-5}
//             ^ d^t_{j-1} ^ d^{t-1}_j
int propagate_delta_bit(word_t delta_t, int delta_prev_bit, word_t x_t, unsigned j, unsigned n);

// Inverse direction, whole word: the unique Delta^{t-1} consistent with
// (Delta^t, Delta^{t+1}, X^t):
//   Delta^{t-1} = Delta^t & S^5(X^t) ^ S^5(Delta^t) & X^t
//               ^ Delta^t & S^5(Delta^t) ^ S^1(Delta^t) ^ Delta^{t+1}
word_t compute_prev_delta(word_t delta, word_t delta_next, word_t x, unsigned n);

// Builds the depth-d view from a (peeled) ciphertext pair.
DifferentialView observe(const sim::CiphertextPair& pair, unsigned depth, const Variant& v);

// Bits of Delta^{t+distance} that a single flip at (t, position) pins down:
// a forced 1 at position+distance (while distance <= 4 and 5*distance <= n)
// and forced 0s everywhere the disturbance cannot have reached. distance 0
// returns the flip itself as a fully known word.
KnownBits known_prev_differences(unsigned position, unsigned distance, const Variant& v);

struct LocalizationResult {
    std::vector<unsigned> candidates;
    bool unique() const { return candidates.size() == 1; }
};

// Slides the reference pattern over all n rotations of delta and returns
// every fault position consistent with it: the anchor 1 at offset
// `distance`, 0 everywhere outside the diffusion support. Standard use is
// distance 3 on Delta^{T-2}; peeled views use smaller distances. An empty
// candidate list marks the pair as inconsistent.
LocalizationResult locate_fault(word_t delta, const Variant& v, unsigned distance = 3);

// Same sliding match, but against all three differentials of a view at
// once (distances 3-d, 4-d and 5-d). The joint pattern prunes most of the
// rotations a single row cannot reject.
LocalizationResult locate_fault(const DifferentialView& view, const Variant& v);

// The two always-available state bits below the view's top round. With the
// diagonal of Delta^{T'-2} at p = position + 3 - depth, telescoping the
// linear trail entries of consecutive rounds gives
//   x[p+5] = delta_top[p+5] ^ delta_minus1[p+4]
//   x[p-5] = delta_top[p]   ^ delta_minus1[p-1]
// both bits of X^{T'-2}.
KnownBits deduce_linear_bits(const DifferentialView& view, unsigned position, const Variant& v);

// All bits of X^{T'-2} recoverable from the one-round differential relation
// at round T'-2: wherever exactly one of (d_j, d_{j-5}) of Delta^{T'-2} is
// set and bit j of the round-below difference Delta^{T'-3} is known,
//   x = delta_top[j] ^ delta_minus1[j-1] ^ Delta^{T'-3}[j]
// recovers x[j-5] (if d_j = 1) or x[j] (if d_{j-5} = 1). Returns nullopt if
// two deductions contradict each other, which marks the pair as bad.
std::optional<KnownBits> deduce_observation_bits(const DifferentialView& view, unsigned position,
                                                 const Variant& v);

// Lifts known bits of X^{T'-2} to bits of the round key K^{T'-1} through
// K^{T'-1} = X^{T'-2} ^ F(Y^{T'}) ^ X^{T'}.
KnownBits key_bits_from_state(const KnownBits& x_below, word_t y_top, word_t x_top, unsigned n);

struct AttackResult {
    bool success = false;
    MasterKey master_key{};
    std::array<int, 4> faults_per_key{};  // new injections while recovering K^{T-1-d}
    int total_faults = 0;
    // Conflict audit. Clean single-bit flips should never produce these.
    int discarded_pairs = 0;
    bool conflict_limit_hit = false;
    bool budget_exhausted = false;
};

// Runs the full key-recovery attack against one oracle: collects faulted
// pairs at round T-5, recovers K^{T-1} .. K^{T-4} by repeated deduction and
// peeling (reusing every collected pair at each depth), then inverts the
// key schedule. Success is self-checked by re-encrypting the plaintext.
class AttackEngine {
public:
    explicit AttackEngine(sim::FaultOracle& oracle);

    AttackResult run();

    // Recovers the round key at the current depth, consuming pooled pairs
    // first and injecting new faults only as needed.
    struct RoundKeyRecovery {
        word_t key = 0;
        int new_faults = 0;
        bool ok = false;
    };
    RoundKeyRecovery recover_round_key();

    // Decrypts one round of every stored ciphertext with the recovered key.
    void peel(word_t round_key);

    // Adds an externally supplied pair to the pool (test hook).
    void add_pair(const sim::CiphertextPair& pair);

    unsigned depth() const { return depth_; }
    Block current_correct() const { return correct_; }

private:
    struct PooledPair {
        Block faulty;  // peeled to the current depth
        std::optional<unsigned> position;
        bool dead = false;
    };

    // Localizes and deduces; merges any recovered bits into acc.
    void process_pair(PooledPair& pair, KnownBits& acc);
    std::optional<KnownBits> deduce_for(const DifferentialView& view, unsigned position) const;
    void discard(PooledPair& pair, word_t conflict_positions);

    sim::FaultOracle* oracle_;
    const Variant* v_;
    unsigned depth_ = 0;
    Block correct_{};  // correct ciphertext peeled to the current depth (shared by all pairs)
    std::vector<PooledPair> pool_;
    std::vector<word_t> recovered_;  // K^{T-1}, K^{T-2}, ...
    std::uint64_t injection_budget_;
    std::uint64_t injections_ = 0;
    std::array<int, 32> conflict_count_{};  // per bit position, reset each depth
    int discarded_pairs_ = 0;
    bool conflict_limit_hit_ = false;
};

AttackResult full_attack(sim::FaultOracle& oracle);

}  // namespace simeck::dfa
