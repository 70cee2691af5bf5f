#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mpfss/keysize.hpp"

namespace mpfss::cli {

// Shared configuration for the CLI commands. Every command is a pure
// function of (config, seed): identical configs produce byte-identical
// outputs.
struct JobConfig {
    SchemeKind scheme = SchemeKind::dpf;
    uint64_t domain = 0;  // N
    uint64_t alpha = 0;
    uint64_t beta = 0;
    unsigned parties = 0;   // p
    unsigned corrupt = 0;   // m
    EncodingKind encoding = EncodingKind::exponent;
    uint64_t bound = 0;  // exponent bound or point padding; 0 = codec default
    bool prss = false;
    uint64_t seed = 0;
    GroupId group_id = GroupId::p256;
    std::filesystem::path out;
};

struct KeygenResult {
    std::vector<std::filesystem::path> key_paths;
    std::vector<uint64_t> per_party_bits;
    uint64_t total_bits = 0;
};

// Writes one key file per party: <out>.party<i>.key
KeygenResult cmd_keygen(const JobConfig& config);

struct EvalConfig {
    std::filesystem::path key_path;
    std::optional<uint64_t> point;             // single x
    std::optional<std::pair<uint64_t, uint64_t>> range;  // inclusive [lo, hi]
    bool full_domain = false;
    std::filesystem::path out;
};

// Writes the serialized shares of the requested points.
void cmd_eval(const EvalConfig& config);

struct DecodeConfig {
    std::vector<std::filesystem::path> share_paths;  // p files
};

struct DecodedPoint {
    uint64_t x = 0;
    uint64_t value = 0;
};

std::vector<DecodedPoint> cmd_decode(const DecodeConfig& config);

enum class SweepKind { domain, parties, moduli, primorial, all };

struct BenchConfig {
    SweepKind sweep = SweepKind::all;
    uint64_t seed = 0;
    std::filesystem::path out;  // CSV path; empty renders to the returned string only
};

// Runs the configured sweeps (measured schemes run Gen, analytic schemes
// evaluate estimators) and renders the CSV.
std::string cmd_bench(const BenchConfig& config);
std::vector<BenchmarkRow> bench_rows(SweepKind sweep, uint64_t seed);

struct HistogramConfig {
    unsigned clients = 100;
    uint64_t bins = 32;
    unsigned parties = 3;
    unsigned corrupt = 1;
    uint64_t bound = 0;  // 0 = codec default
    uint64_t seed = 0;
    GroupId group_id = GroupId::p256;
    // Client values; generated uniformly from the seed when empty.
    std::vector<uint64_t> values;
};

// Local private-histogram demo: every client shares a point function with
// value 1 at its bin via the exponent encoding; the servers aggregate the
// group-element shares multiplicatively per bin and decode each bin once.
std::vector<uint64_t> cmd_demo_histogram(const HistogramConfig& config);

}  // namespace mpfss::cli
