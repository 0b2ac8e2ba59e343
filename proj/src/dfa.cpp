#include "simeck/dfa.hpp"

namespace simeck::dfa {

namespace {

int word_bit(word_t w, unsigned j, unsigned n) {
    return static_cast<int>((w >> (j % n)) & 1);
}

// The fault stays pinned to 1 on the diagonal l+i while every branch feeding
// that bit is still quiet; the wrap-around branch catches up once 5i > n.
bool diagonal_forced(unsigned distance, unsigned n) {
    return distance <= 4 && 5 * distance <= n;
}

}  // namespace

bool set_known_bit(KnownBits& kb, unsigned j, int b) {
    word_t m = word_t{1} << j;
    if (kb.mask & m) return kb.bit(j) == b;
    kb.mask |= m;
    kb.value |= b ? m : 0;
    return true;
}

bool merge_known_bits(KnownBits& into, const KnownBits& from, word_t* conflicts) {
    word_t clash = into.mask & from.mask & (into.value ^ from.value);
    if (conflicts) *conflicts = clash;
    if (clash) return false;
    into.value |= from.value;
    into.mask |= from.mask;
    return true;
}

int propagate_delta_bit(word_t delta_t, int delta_prev_bit, word_t x_t, unsigned j, unsigned n) {
    int dj = word_bit(delta_t, j, n);
    int dj5 = word_bit(delta_t, j + n - 5, n);
    int dj1 = word_bit(delta_t, j + n - 1, n);
    int xj = word_bit(x_t, j, n);
    int xj5 = word_bit(x_t, j + n - 5, n);
    return (dj & xj5) ^ (dj5 & xj) ^ (dj & dj5) ^ dj1 ^ (delta_prev_bit & 1);
}

word_t compute_prev_delta(word_t delta, word_t delta_next, word_t x, unsigned n) {
    return (delta & rotl(x, 5, n)) ^ (rotl(delta, 5, n) & x) ^ (delta & rotl(delta, 5, n)) ^
           rotl(delta, 1, n) ^ delta_next;
}

DifferentialView observe(const sim::CiphertextPair& pair, unsigned depth, const Variant& v) {
    DifferentialView view;
    view.depth = depth;
    view.x_top = pair.correct.y;
    view.delta_top_plus = pair.correct.x ^ pair.faulty.x;
    view.delta_top = pair.correct.y ^ pair.faulty.y;
    view.delta_minus1 = compute_prev_delta(view.delta_top, view.delta_top_plus, view.x_top, v.word_size);
    return view;
}

KnownBits known_prev_differences(unsigned position, unsigned distance, const Variant& v) {
    unsigned n = v.word_size;
    word_t support = rotl(diffusion_mask(distance, n), position, n);
    KnownBits kb;
    kb.mask = ~support & v.mask;  // untouched positions are forced 0
    if (diagonal_forced(distance, n)) {
        word_t diag = word_t{1} << ((position + distance) % n);
        kb.mask |= diag;
        kb.value |= diag;
    }
    return kb;
}

namespace {

// One pattern row: delta must vanish outside the rotated support and, while
// the diagonal is still pinned, carry a 1 at offset `distance`.
bool matches_pattern(word_t delta, unsigned candidate, unsigned distance, unsigned n) {
    if ((delta & ~rotl(diffusion_mask(distance, n), candidate, n)) != 0) return false;
    if (diagonal_forced(distance, n) && !word_bit(delta, candidate + distance, n)) return false;
    return true;
}

}  // namespace

LocalizationResult locate_fault(word_t delta, const Variant& v, unsigned distance) {
    LocalizationResult result;
    for (unsigned l = 0; l < v.word_size; ++l)
        if (matches_pattern(delta, l, distance, v.word_size)) result.candidates.push_back(l);
    return result;
}

LocalizationResult locate_fault(const DifferentialView& view, const Variant& v) {
    unsigned n = v.word_size;
    LocalizationResult result;
    if (view.depth > 3) return result;  // nothing left of the pattern past depth 3
    for (unsigned l = 0; l < n; ++l) {
        if (!matches_pattern(view.delta_minus1, l, 3 - view.depth, n)) continue;
        if (!matches_pattern(view.delta_top, l, 4 - view.depth, n)) continue;
        if (!matches_pattern(view.delta_top_plus, l, 5 - view.depth, n)) continue;
        result.candidates.push_back(l);
    }
    return result;
}

KnownBits deduce_linear_bits(const DifferentialView& view, unsigned position, const Variant& v) {
    unsigned n = v.word_size;
    unsigned p = (position + 3 + n - view.depth) % n;  // diagonal of Delta^{T'-2}
    KnownBits kb;
    set_known_bit(kb, (p + 5) % n,
                  word_bit(view.delta_top, p + 5, n) ^ word_bit(view.delta_minus1, p + 4, n));
    set_known_bit(kb, (p + n - 5) % n,
                  word_bit(view.delta_top, p, n) ^ word_bit(view.delta_minus1, p + n - 1, n));
    return kb;
}

std::optional<KnownBits> deduce_observation_bits(const DifferentialView& view, unsigned position,
                                                 const Variant& v) {
    unsigned n = v.word_size;
    // Knowledge of the difference one round below the deduction round,
    // Delta^{T'-3} = Delta^{t + 2 - depth} for a fault at round t = T - 5:
    // partially pinned by the propagation pattern while 2 - depth >= 1,
    // exactly the flip word at depth 2, identically zero at depth 3.
    KnownBits prev;
    if (view.depth <= 2) {
        prev = known_prev_differences(position, 2 - view.depth, v);
    } else {
        prev = {0, v.mask};
    }

    KnownBits out;
    for (unsigned j = 0; j < n; ++j) {
        int dj = word_bit(view.delta_minus1, j, n);
        int dj5 = word_bit(view.delta_minus1, j + n - 5, n);
        if (dj == dj5) continue;  // the AND gate leaks only when exactly one input differs
        if (!prev.known(j)) continue;
        int value = word_bit(view.delta_top, j, n) ^ word_bit(view.delta_minus1, j + n - 1, n) ^
                    prev.bit(j);
        unsigned target = dj ? (j + n - 5) % n : j;
        if (!set_known_bit(out, target, value)) return std::nullopt;
    }
    return out;
}

KnownBits key_bits_from_state(const KnownBits& x_below, word_t y_top, word_t x_top, unsigned n) {
    KnownBits kb;
    kb.mask = x_below.mask;
    kb.value = (x_below.value ^ f_function(y_top, n) ^ x_top) & x_below.mask;
    return kb;
}

AttackEngine::AttackEngine(sim::FaultOracle& oracle)
    : oracle_(&oracle),
      v_(&oracle.variant()),
      correct_(oracle.correct_ciphertext()),
      injection_budget_(50ull * oracle.variant().word_size) {}

void AttackEngine::add_pair(const sim::CiphertextPair& pair) {
    Block faulty = pair.faulty;
    for (word_t k : recovered_) faulty = round_backward(faulty, k, v_->word_size);
    pool_.push_back({faulty, std::nullopt, false});
}

void AttackEngine::discard(PooledPair& pair, word_t conflict_positions) {
    pair.dead = true;
    ++discarded_pairs_;
    for (unsigned j = 0; j < v_->word_size; ++j) {
        if (!((conflict_positions >> j) & 1)) continue;
        if (++conflict_count_[j] >= 3) conflict_limit_hit_ = true;
    }
}

std::optional<KnownBits> AttackEngine::deduce_for(const DifferentialView& view,
                                                  unsigned position) const {
    auto obs = deduce_observation_bits(view, position, *v_);
    if (!obs) return std::nullopt;
    KnownBits bits = *obs;
    if (!merge_known_bits(bits, deduce_linear_bits(view, position, *v_))) return std::nullopt;
    return bits;
}

void AttackEngine::process_pair(PooledPair& pair, KnownBits& acc) {
    auto view = observe({correct_, pair.faulty}, depth_, *v_);
    word_t clash = 0;

    if (!pair.position) {
        auto loc = locate_fault(view, *v_);
        if (loc.candidates.empty()) {
            // No rotation of the pattern fits: not a clean single-bit flip.
            discard(pair, 0);
            return;
        }
        if (!loc.unique()) {
            // The true position is always among the candidates and its
            // deductions are sound, so a candidate can be eliminated when
            // its bits contradict themselves or anything already
            // established. Whatever positions the survivors agree on is
            // safe to keep. The pair stays unpinned unless one candidate
            // is left, and is revisited once peeling sharpens the pattern.
            std::optional<KnownBits> common;
            std::vector<unsigned> survivors;
            for (unsigned candidate : loc.candidates) {
                auto bits = deduce_for(view, candidate);
                if (!bits) continue;
                KnownBits probe = acc;
                if (!merge_known_bits(probe, *bits)) continue;
                survivors.push_back(candidate);
                if (!common) {
                    common = *bits;
                } else {
                    word_t agree = common->mask & bits->mask & ~(common->value ^ bits->value);
                    common->mask = agree;
                    common->value &= agree;
                }
            }
            if (survivors.empty()) {
                discard(pair, 0);
                return;
            }
            if (survivors.size() > 1) {
                if (!merge_known_bits(acc, *common, &clash)) discard(pair, clash);
                return;
            }
            pair.position = survivors.front();
        } else {
            pair.position = loc.candidates.front();
        }
    }

    auto bits = deduce_for(view, *pair.position);
    if (!bits) {
        discard(pair, 0);
        return;
    }
    if (!merge_known_bits(acc, *bits, &clash)) discard(pair, clash);
}

AttackEngine::RoundKeyRecovery AttackEngine::recover_round_key() {
    KnownBits acc;
    conflict_count_.fill(0);
    RoundKeyRecovery rec;

    for (auto& pair : pool_) {
        if (acc.complete(v_->mask)) break;
        if (pair.dead) continue;
        process_pair(pair, acc);
        if (conflict_limit_hit_) return rec;
    }
    while (!acc.complete(v_->mask)) {
        if (injections_ >= injection_budget_) return rec;
        add_pair(oracle_->inject_fault(v_->rounds - 5).observable());
        ++injections_;
        ++rec.new_faults;
        process_pair(pool_.back(), acc);
        if (conflict_limit_hit_) return rec;
    }

    rec.key = key_bits_from_state(acc, correct_.y, correct_.x, v_->word_size).value;
    rec.ok = true;
    return rec;
}

void AttackEngine::peel(word_t round_key) {
    correct_ = round_backward(correct_, round_key, v_->word_size);
    for (auto& pair : pool_) pair.faulty = round_backward(pair.faulty, round_key, v_->word_size);
    recovered_.push_back(round_key);
    ++depth_;
}

AttackResult AttackEngine::run() {
    AttackResult res;
    for (unsigned d = 0; d < 4; ++d) {
        auto rec = recover_round_key();
        res.faults_per_key[d] = rec.new_faults;
        res.total_faults += rec.new_faults;
        if (!rec.ok) {
            res.discarded_pairs = discarded_pairs_;
            res.conflict_limit_hit = conflict_limit_hit_;
            res.budget_exhausted = !conflict_limit_hit_;
            return res;
        }
        peel(rec.key);
    }
    // recovered_ = (K^{T-1}, K^{T-2}, K^{T-3}, K^{T-4}); the schedule wants
    // them in ascending order starting at T-4.
    std::array<word_t, 4> last_four{recovered_[3], recovered_[2], recovered_[1], recovered_[0]};
    res.master_key = invert_key_schedule(last_four, v_->rounds - 4, *v_);
    res.discarded_pairs = discarded_pairs_;
    res.success =
        encrypt(oracle_->plaintext(), res.master_key, *v_) == oracle_->correct_ciphertext();
    return res;
}

AttackResult full_attack(sim::FaultOracle& oracle) {
    return AttackEngine(oracle).run();
}

}  // namespace simeck::dfa
