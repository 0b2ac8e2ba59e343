#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "simeck/core.hpp"
#include "simeck/dfa.hpp"

namespace simeck::harness {

struct TrialRecord {
    std::uint64_t trial_index = 0;
    VariantId variant = VariantId::s32_64;
    int faults_last_key = 0;
    int faults_total = 0;
    bool success = false;
    std::uint64_t seed = 0;
};

struct CampaignSummary {
    VariantId variant = VariantId::s32_64;
    int trials = 0;
    std::uint64_t master_seed = 0;
    int failure_count = 0;
    double mean_last_key = 0.0;  // over successful trials
    double mean_total = 0.0;
    int max_total = 0;
    std::map<int, int> histogram_last;   // fault count -> successful trials
    std::map<int, int> histogram_total;
};

// One attack trial with a fresh random key and plaintext derived from
// trial_seed.
TrialRecord run_trial(const Variant& v, std::uint64_t trial_seed, std::uint64_t index);

// Seeded Monte-Carlo campaign. Per-trial seeds come from a counter
// generator over (master_seed, trial index), so the summary depends only on
// the arguments, not on execution order.
CampaignSummary run_campaign(const Variant& v, int trials, std::uint64_t master_seed);

// Smallest fault count with maximal frequency; -1 for an empty histogram.
int histogram_mode(const std::map<int, int>& histogram);

// "faults,count" rows of the master-key (total) histogram, ascending, LF
// separated, no trailing newline.
std::string emit_histogram_csv(const CampaignSummary& summary);

// Single JSON object with variant, trials, mean_last_key, mean_total,
// max_total, failure_count and seed; byte-stable for fixed inputs.
std::string emit_summary_json(const CampaignSummary& summary);

}  // namespace simeck::harness
