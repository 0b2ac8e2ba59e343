#include "simeck/oracle.hpp"

#include <stdexcept>

namespace simeck::sim {

namespace {

void validate(const Variant& v, FaultSpec spec) {
    if (spec.round > v.rounds) throw std::invalid_argument("fault round out of range");
    if (spec.position >= v.word_size) throw std::invalid_argument("fault position out of range");
}

}  // namespace

std::vector<Block> encrypt_traced_with_fault(Block p, const MasterKey& key, const Variant& v,
                                             FaultSpec spec) {
    validate(v, spec);
    auto keys = expand_key(key, v);
    std::vector<Block> trace;
    trace.reserve(v.rounds + 1);
    Block s{p.x & v.mask, p.y & v.mask};
    for (unsigned r = 0; r <= v.rounds; ++r) {
        if (r == spec.round) s.x ^= word_t{1} << spec.position;
        trace.push_back(s);
        if (r < v.rounds) s = round_forward(s, keys[r], v.word_size);
    }
    return trace;
}

FaultOracle::FaultOracle(const Variant& v, const MasterKey& key, Block plaintext, std::uint64_t seed)
    : variant_(&v),
      key_(key),
      plaintext_{plaintext.x & v.mask, plaintext.y & v.mask},
      schedule_(expand_key(key, v)),
      trace_(encrypt_traced(plaintext_, key, v)),
      positions_{seed} {}

FaultedPair FaultOracle::inject_fault(unsigned round) {
    auto pos = static_cast<unsigned>(positions_.at(draw_index_++) % variant_->word_size);
    return inject_fault_at({round, pos});
}

FaultedPair FaultOracle::inject_fault_at(FaultSpec spec) const {
    validate(*variant_, spec);
    Block s = trace_[spec.round];
    s.x ^= word_t{1} << spec.position;
    for (unsigned r = spec.round; r < variant_->rounds; ++r)
        s = round_forward(s, schedule_[r], variant_->word_size);
    return {trace_.back(), s, spec.position};
}

}  // namespace simeck::sim
