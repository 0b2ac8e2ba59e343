// Command line front end: cipher operations, single fault injections, one-shot
// key-recovery attacks, Monte-Carlo campaigns and differential trail tables.
//
// Exit codes: 0 completed (a failed attack is still a completed run),
// 1 I/O error, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "simeck/core.hpp"
#include "simeck/dfa.hpp"
#include "simeck/experiment.hpp"
#include "simeck/hex.hpp"
#include "simeck/oracle.hpp"
#include "simeck/rng.hpp"
#include "simeck/trail.hpp"

namespace {

using namespace simeck;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

VariantId parse_variant(const std::string& name) {
    if (name == "s32_64") return VariantId::s32_64;
    if (name == "s48_96") return VariantId::s48_96;
    if (name == "s64_128") return VariantId::s64_128;
    throw UsageError("--variant must be one of s32_64, s48_96, s64_128");
}

MasterKey parse_key_arg(const std::string& hex, const Variant& v) {
    try {
        return parse_hex_key(hex, v.word_size);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--key: ") + e.what());
    }
}

Block parse_block_arg(const std::string& hex, const Variant& v) {
    try {
        return parse_hex_block(hex, v.word_size);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--plaintext: ") + e.what());
    }
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << data;
    if (!out) throw IoError("write to " + path + " failed");
}

Block derive_plaintext(const Variant& v, std::uint64_t seed) {
    SplitMix64 rng{seed ^ 0x706c61696e746578ull};
    return {static_cast<word_t>(rng.at(0)) & v.mask, static_cast<word_t>(rng.at(1)) & v.mask};
}

std::string attack_json(const Variant& v, const dfa::AttackResult& res, std::uint64_t seed) {
    std::string out = "{\"variant\":\"";
    out += variant_name(v.id);
    out += "\",\"success\":";
    out += res.success ? "true" : "false";
    out += ",\"recovered_key\":\"";
    out += res.success ? key_to_hex(res.master_key, v.word_size) : "";
    out += "\",\"faults_per_key\":[";
    for (int d = 0; d < 4; ++d) {
        if (d) out += ',';
        out += std::to_string(res.faults_per_key[d]);
    }
    out += "],\"faults_total\":";
    out += std::to_string(res.total_faults);
    out += ",\"discarded_pairs\":";
    out += std::to_string(res.discarded_pairs);
    out += ",\"seed\":";
    out += std::to_string(seed);
    out += "}";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIMECK cipher simulator and bit-flip differential fault attack engine"};
    app.require_subcommand(1);

    std::string variant_name_arg = "s32_64";
    std::string key_hex, block_hex;
    std::uint64_t seed = 1;
    int trials = 0;
    std::optional<unsigned> round_arg;
    std::optional<unsigned> bit_arg;
    std::string out_csv, out_json;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--variant", variant_name_arg, "cipher variant: s32_64, s48_96 or s64_128")
            ->capture_default_str();
    };

    auto* enc = app.add_subcommand("encrypt", "encrypt one block");
    add_common(enc);
    enc->add_option("--key", key_hex, "master key, hex K3||K2||K1||K0")->required();
    enc->add_option("--plaintext", block_hex, "input block, hex X||Y")->required();

    auto* dec = app.add_subcommand("decrypt", "decrypt one block");
    add_common(dec);
    dec->add_option("--key", key_hex, "master key, hex K3||K2||K1||K0")->required();
    dec->add_option("--plaintext", block_hex, "input block, hex X||Y")->required();

    auto* inj = app.add_subcommand("inject", "inject one fault and print the ciphertext pair");
    add_common(inj);
    inj->add_option("--key", key_hex, "master key, hex")->required();
    inj->add_option("--plaintext", block_hex, "plaintext block, hex")->required();
    inj->add_option("--seed", seed, "seed for the fault position stream");
    inj->add_option("--round", round_arg, "fault round (default T-5)");
    inj->add_option("--bit", bit_arg, "fault position (default random)");

    auto* atk = app.add_subcommand("attack", "run one full key-recovery attack");
    add_common(atk);
    atk->add_option("--key", key_hex, "hidden key under attack, hex")->required();
    atk->add_option("--plaintext", block_hex, "fixed plaintext (default derived from seed)");
    atk->add_option("--seed", seed, "seed for fault positions");

    auto* exp = app.add_subcommand("experiment", "run a seeded Monte-Carlo campaign");
    add_common(exp);
    exp->add_option("--trials", trials, "number of trials")->required()->check(CLI::PositiveNumber);
    exp->add_option("--seed", seed, "campaign master seed");
    exp->add_option("--out-csv", out_csv, "write the fault-count histogram here");
    exp->add_option("--out-json", out_json, "write the summary here");

    auto* trl = app.add_subcommand("trail", "print the empirical differential trail table");
    add_common(trl);
    trl->add_option("--bit", bit_arg, "fault position (default 0)");
    trl->add_option("--round", round_arg, "fault round (default T-5)");
    trl->add_option("--trials", trials, "samples per cell (default 1000)");
    trl->add_option("--seed", seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Variant& v = variant(parse_variant(variant_name_arg));

        if (*enc) {
            MasterKey key = parse_key_arg(key_hex, v);
            Block p = parse_block_arg(block_hex, v);
            std::cout << block_to_hex(encrypt(p, key, v), v.word_size) << "\n";
        } else if (*dec) {
            MasterKey key = parse_key_arg(key_hex, v);
            Block c = parse_block_arg(block_hex, v);
            std::cout << block_to_hex(decrypt(c, key, v), v.word_size) << "\n";
        } else if (*inj) {
            MasterKey key = parse_key_arg(key_hex, v);
            Block p = parse_block_arg(block_hex, v);
            sim::FaultOracle oracle(v, key, p, seed);
            unsigned round = round_arg.value_or(v.rounds - 5);
            sim::FaultedPair pair;
            try {
                pair = bit_arg ? oracle.inject_fault_at({round, *bit_arg})
                               : oracle.inject_fault(round);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            std::cout << "{\"correct\":\"" << block_to_hex(pair.correct, v.word_size)
                      << "\",\"faulty\":\"" << block_to_hex(pair.faulty, v.word_size)
                      << "\",\"round\":" << round << ",\"position\":" << pair.true_position
                      << "}\n";
        } else if (*atk) {
            MasterKey key = parse_key_arg(key_hex, v);
            Block p = block_hex.empty() ? derive_plaintext(v, seed) : parse_block_arg(block_hex, v);
            sim::FaultOracle oracle(v, key, p, seed);
            auto res = dfa::full_attack(oracle);
            std::cout << attack_json(v, res, seed) << "\n";
        } else if (*exp) {
            auto summary = harness::run_campaign(v, trials, seed);
            if (!out_csv.empty()) write_file(out_csv, harness::emit_histogram_csv(summary));
            if (!out_json.empty()) write_file(out_json, harness::emit_summary_json(summary));
            std::cout << harness::emit_summary_json(summary) << "\n";
        } else if (*trl) {
            unsigned round = round_arg.value_or(v.rounds - 5);
            unsigned bit = bit_arg.value_or(0);
            unsigned samples = trials > 0 ? static_cast<unsigned>(trials) : 1000;
            sim::TrailTable table;
            try {
                table = sim::classify_trail(v, round, bit, samples, seed);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            for (unsigned r = 0; r < table.rows.size(); ++r)
                std::cout << "Delta^" << table.first_round + r << ": " << table.rows[r] << "\n";
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
