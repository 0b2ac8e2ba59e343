#include "simeck/experiment.hpp"

#include <cstdio>

#include "simeck/oracle.hpp"
#include "simeck/rng.hpp"

namespace simeck::harness {

TrialRecord run_trial(const Variant& v, std::uint64_t trial_seed, std::uint64_t index) {
    SplitMix64 rng{trial_seed};
    MasterKey key;
    for (unsigned i = 0; i < 4; ++i) key.k[i] = static_cast<word_t>(rng.at(i)) & v.mask;
    Block plaintext{static_cast<word_t>(rng.at(4)) & v.mask,
                    static_cast<word_t>(rng.at(5)) & v.mask};
    sim::FaultOracle oracle(v, key, plaintext, rng.at(6));

    auto attack = dfa::full_attack(oracle);
    TrialRecord rec;
    rec.trial_index = index;
    rec.variant = v.id;
    rec.faults_last_key = attack.faults_per_key[0];
    rec.faults_total = attack.total_faults;
    rec.success = attack.success && attack.master_key == key;
    rec.seed = trial_seed;
    return rec;
}

CampaignSummary run_campaign(const Variant& v, int trials, std::uint64_t master_seed) {
    SplitMix64 seeds{master_seed};
    CampaignSummary s;
    s.variant = v.id;
    s.trials = trials;
    s.master_seed = master_seed;

    // Integer accumulation keeps the means independent of summation order.
    long long sum_last = 0, sum_total = 0;
    for (int i = 0; i < trials; ++i) {
        auto rec = run_trial(v, seeds.at(static_cast<std::uint64_t>(i)), static_cast<std::uint64_t>(i));
        if (!rec.success) {
            ++s.failure_count;
            continue;
        }
        sum_last += rec.faults_last_key;
        sum_total += rec.faults_total;
        ++s.histogram_last[rec.faults_last_key];
        ++s.histogram_total[rec.faults_total];
        if (rec.faults_total > s.max_total) s.max_total = rec.faults_total;
    }
    int ok = trials - s.failure_count;
    if (ok > 0) {
        s.mean_last_key = static_cast<double>(sum_last) / ok;
        s.mean_total = static_cast<double>(sum_total) / ok;
    }
    return s;
}

int histogram_mode(const std::map<int, int>& histogram) {
    int mode = -1, best = 0;
    for (const auto& [faults, count] : histogram) {
        if (count > best) {
            best = count;
            mode = faults;
        }
    }
    return mode;
}

std::string emit_histogram_csv(const CampaignSummary& summary) {
    std::string out = "faults,count";
    for (const auto& [faults, count] : summary.histogram_total) {
        out += '\n';
        out += std::to_string(faults);
        out += ',';
        out += std::to_string(count);
    }
    return out;
}

std::string emit_summary_json(const CampaignSummary& summary) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "{\"variant\":\"%s\",\"trials\":%d,\"mean_last_key\":%.4f,"
                  "\"mean_total\":%.4f,\"max_total\":%d,\"failure_count\":%d,\"seed\":%llu}",
                  variant_name(summary.variant), summary.trials, summary.mean_last_key,
                  summary.mean_total, summary.max_total, summary.failure_count,
                  static_cast<unsigned long long>(summary.master_seed));
    return buf;
}

}  // namespace simeck::harness
