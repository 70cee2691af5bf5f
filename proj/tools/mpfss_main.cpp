#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "mpfss/cli.hpp"

namespace {

using namespace mpfss;
using namespace mpfss::cli;

GroupId parse_group(const std::string& name) {
    if (name == "p256") return GroupId::p256;
    if (name == "tiny-ec") return GroupId::tiny_ec;
    if (name == "schnorr11") return GroupId::schnorr11;
    throw CLI::ValidationError("--group", "unknown group: " + name);
}

// Inclusive "lo..hi" range.
std::pair<uint64_t, uint64_t> parse_range(const std::string& text) {
    auto sep = text.find("..");
    if (sep == std::string::npos)
        throw CLI::ValidationError("--range", "expected lo..hi, got " + text);
    return {std::stoull(text.substr(0, sep)), std::stoull(text.substr(sep + 2))};
}

int run(int argc, char** argv) {
    CLI::App app{"Multi-party FSS toolkit: DDH-based DPF/DCF with O(cbrt N) keys"};
    app.require_subcommand(1);

    // keygen
    JobConfig job;
    std::string scheme = "dpf";
    std::string encoding = "exponent";
    std::string group = "p256";
    std::string out;
    auto* keygen = app.add_subcommand("keygen", "Generate the p key files of a shared function");
    keygen->add_option("--scheme", scheme, "dpf | dcf")->check(CLI::IsMember({"dpf", "dcf"}));
    keygen->add_option("--N", job.domain, "function domain size")->required();
    keygen->add_option("--alpha", job.alpha, "special point / comparison threshold")->required();
    keygen->add_option("--beta", job.beta, "secret value")->required();
    keygen->add_option("--parties", job.parties, "party count p")->required();
    keygen->add_option("--corrupt", job.corrupt, "corruption bound m")->required();
    keygen->add_option("--encoding", encoding, "exponent | point")
        ->check(CLI::IsMember({"exponent", "point"}));
    keygen->add_option("--bound", job.bound,
                       "exponent decode bound / point padding (0 = codec default)");
    keygen->add_flag("--prss", job.prss, "compress CNF components with PRSS seeds");
    keygen->add_option("--seed", job.seed, "deterministic randomness seed");
    keygen->add_option("--group", group, "p256 | tiny-ec | schnorr11");
    keygen->add_option("--out", out, "output path prefix")->required();

    // eval
    EvalConfig eval;
    std::string key_path, range_text, share_out;
    uint64_t point = 0;
    bool have_point = false, full = false;
    auto* evalc = app.add_subcommand("eval", "Evaluate one party's key on points");
    evalc->add_option("--key", key_path, "key file")->required();
    auto* opt_x = evalc->add_option("--x", point, "single evaluation point");
    evalc->add_option("--range", range_text, "inclusive range lo..hi");
    evalc->add_flag("--all", full, "evaluate the full domain");
    evalc->add_option("--out", share_out, "share file to write")->required();

    // decode
    std::vector<std::string> share_paths;
    auto* decode = app.add_subcommand("decode", "Combine p share files and print f(x)");
    decode->add_option("--shares", share_paths, "p share files")->required()->expected(-1);

    // bench
    BenchConfig bench;
    std::string sweep = "all";
    std::string csv_out;
    auto* benchc = app.add_subcommand("bench", "Key-size benchmark sweeps (CSV)");
    benchc->add_option("--sweep", sweep, "domain | parties | moduli | primorial | all")
        ->check(CLI::IsMember({"domain", "parties", "moduli", "primorial", "all"}));
    benchc->add_option("--seed", bench.seed, "deterministic randomness seed");
    benchc->add_option("--out", csv_out, "CSV output path (stdout when omitted)");

    // demo-histogram
    HistogramConfig hist;
    std::string hist_group = "p256";
    auto* histc = app.add_subcommand("demo-histogram", "Local private-histogram demo");
    histc->add_option("--clients", hist.clients, "number of simulated clients");
    histc->add_option("--bins", hist.bins, "histogram bins (the DPF domain)");
    histc->add_option("--parties", hist.parties, "party count p");
    histc->add_option("--corrupt", hist.corrupt, "corruption bound m");
    histc->add_option("--bound", hist.bound, "exponent decode bound");
    histc->add_option("--seed", hist.seed, "deterministic randomness seed");
    histc->add_option("--group", hist_group, "p256 | tiny-ec");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (keygen->parsed()) {
        job.scheme = scheme == "dcf" ? SchemeKind::dcf : SchemeKind::dpf;
        job.encoding = encoding == "point" ? EncodingKind::point : EncodingKind::exponent;
        job.group_id = parse_group(group);
        job.out = out;
        KeygenResult result = cmd_keygen(job);
        for (size_t i = 0; i < result.key_paths.size(); ++i)
            std::printf("party %zu: %s (%llu bits)\n", i, result.key_paths[i].c_str(),
                        static_cast<unsigned long long>(result.per_party_bits[i]));
        std::printf("total: %llu bits\n", static_cast<unsigned long long>(result.total_bits));
    } else if (evalc->parsed()) {
        eval.key_path = key_path;
        eval.full_domain = full;
        have_point = opt_x->count() > 0;
        if (have_point) eval.point = point;
        if (!range_text.empty()) eval.range = parse_range(range_text);
        eval.out = share_out;
        cmd_eval(eval);
        std::printf("shares written to %s\n", eval.out.c_str());
    } else if (decode->parsed()) {
        DecodeConfig cfg;
        for (const auto& path : share_paths) cfg.share_paths.emplace_back(path);
        for (const auto& point_value : cmd_decode(cfg))
            std::printf("%llu %llu\n", static_cast<unsigned long long>(point_value.x),
                        static_cast<unsigned long long>(point_value.value));
    } else if (benchc->parsed()) {
        if (sweep == "domain") bench.sweep = SweepKind::domain;
        else if (sweep == "parties") bench.sweep = SweepKind::parties;
        else if (sweep == "moduli") bench.sweep = SweepKind::moduli;
        else if (sweep == "primorial") bench.sweep = SweepKind::primorial;
        else bench.sweep = SweepKind::all;
        bench.out = csv_out;
        std::string csv = cmd_bench(bench);
        if (csv_out.empty()) std::fputs(csv.c_str(), stdout);
        else std::printf("wrote %s\n", csv_out.c_str());
    } else if (histc->parsed()) {
        hist.group_id = parse_group(hist_group);
        auto histogram = cmd_demo_histogram(hist);
        for (size_t bin = 0; bin < histogram.size(); ++bin)
            std::printf("bin %zu: %llu\n", bin, static_cast<unsigned long long>(histogram[bin]));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const mpfss::MajorityViolation& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const mpfss::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const mpfss::RangeError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const mpfss::ParameterMismatch& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
