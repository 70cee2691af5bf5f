#include "mpfss/cli.hpp"

#include <fstream>

#include "mpfss/encoding.hpp"

namespace mpfss::cli {

namespace {

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("short write to " + path.string());
}

uint64_t default_exponent_bound(const Group& group) {
    uint64_t bound = uint64_t(1) << 20;
    Bn top = group.scalar_field().modulus().sub(Bn(1));
    if (top.fits_u64() && top.to_u64() < bound) bound = top.to_u64();
    return bound;
}

uint64_t codec_param_for(const JobConfig& config, const Group& group) {
    if (config.bound != 0) return config.bound;
    return config.encoding == EncodingKind::point ? 256 : default_exponent_bound(group);
}

GroupElement encode_beta(EncodingKind kind, uint64_t param,
                         const std::shared_ptr<const Group>& group, uint64_t beta) {
    switch (kind) {
        case EncodingKind::exponent: return ExponentCodec(group, param).encode(beta);
        case EncodingKind::point: return PointCodec(group, param).encode(beta);
        case EncodingKind::none: break;
    }
    throw ParameterMismatch("key has no secret encoding configured");
}

uint64_t decode_element(EncodingKind kind, uint64_t param, const std::shared_ptr<const Group>& group,
                        const GroupElement& e) {
    switch (kind) {
        case EncodingKind::exponent: return ExponentCodec(group, param).decode(e);
        case EncodingKind::point: return PointCodec(group, param).decode(e);
        case EncodingKind::none: break;
    }
    throw ParameterMismatch("shares carry no secret encoding");
}

std::vector<uint64_t> requested_points(const EvalConfig& config, uint64_t domain) {
    std::vector<uint64_t> points;
    if (config.full_domain) {
        points.reserve(domain);
        for (uint64_t x = 0; x < domain; ++x) points.push_back(x);
    } else if (config.range) {
        auto [lo, hi] = *config.range;
        if (lo > hi) throw DomainError("empty evaluation range");
        if (hi >= domain) throw DomainError("evaluation range exceeds the domain");
        points.reserve(hi - lo + 1);
        for (uint64_t x = lo; x <= hi; ++x) points.push_back(x);
    } else if (config.point) {
        if (*config.point >= domain) throw DomainError("evaluation point exceeds the domain");
        points.push_back(*config.point);
    } else {
        throw DomainError("no evaluation points requested");
    }
    return points;
}

constexpr unsigned kDefaultLambda = 256;
constexpr unsigned kDefaultQBits = 256;

void push_measured(std::vector<BenchmarkRow>& rows, SweepKind, uint64_t domain, unsigned p,
                   unsigned m, const std::shared_ptr<const Group>& group, RandomnessSource& rng) {
    rows.push_back(bench_ours_dpf(domain, p, m, group, /*prss=*/true, rng));
    rows.push_back(bench_ours_dcf(domain, p, m, group, /*prss=*/true, rng));
    rows.push_back(bench_bunn_it(domain, p, m, group, /*prss=*/true, rng));
}

BenchmarkRow analytic_row(SchemeTag tag, uint64_t domain, unsigned p, unsigned m, unsigned q_bits,
                          bool prss) {
    BenchmarkRow row;
    row.scheme = scheme_name(tag);
    row.kind = "analytic";
    row.domain = domain;
    row.p = p;
    row.m = m;
    row.q_bits = q_bits;
    row.lambda = kDefaultLambda;
    row.prss = prss;
    row.total_bits = estimate_bits(tag, domain, p, m, q_bits, kDefaultLambda, prss);
    row.per_party_bits = row.total_bits.div(Bn(p));
    return row;
}

BenchmarkRow crt_row(SchemeTag tag, uint64_t domain, unsigned p, unsigned m, uint64_t modulus) {
    unsigned q_bits = modulus <= 2 ? 1 : static_cast<unsigned>(Bn(modulus - 1).bits());
    BenchmarkRow row;
    row.scheme = scheme_name(tag);
    row.kind = "analytic-crt";
    row.domain = domain;
    row.p = p;
    row.m = m;
    row.q_bits = q_bits;
    row.lambda = kDefaultLambda;
    row.prss = false;
    row.total_bits = crt_adjusted_estimate(tag, domain, p, m, modulus, kDefaultLambda, false);
    row.per_party_bits = row.total_bits.div(Bn(p));
    return row;
}

void domain_sweep(std::vector<BenchmarkRow>& rows, RandomnessSource& rng) {
    auto group = make_group(GroupId::p256);
    const unsigned p = 5, m = 2;
    for (uint64_t domain = 100; domain <= 1'000'000'000; domain *= 10)
        push_measured(rows, SweepKind::domain, domain, p, m, group, rng);
    for (uint64_t domain = 100; domain <= 10'000'000'000; domain *= 10) {
        rows.push_back(analytic_row(SchemeTag::trivial, domain, p, m, kDefaultQBits, true));
        rows.push_back(analytic_row(SchemeTag::riposte_ddh, domain, p, m, kDefaultQBits, false));
    }
}

void parties_sweep(std::vector<BenchmarkRow>& rows, RandomnessSource& rng) {
    auto group = make_group(GroupId::p256);
    const uint64_t domain = 1'000'000;
    for (unsigned p = 3; p <= 10; ++p) {
        unsigned m = (p - 1) / 2;
        push_measured(rows, SweepKind::parties, domain, p, m, group, rng);
        rows.push_back(analytic_row(SchemeTag::trivial, domain, p, m, kDefaultQBits, true));
        rows.push_back(analytic_row(SchemeTag::riposte_ddh, domain, p, m, kDefaultQBits, false));
    }
}

void moduli_sweep(std::vector<BenchmarkRow>& rows, RandomnessSource& rng) {
    auto group = make_group(GroupId::p256);
    const uint64_t domain = 1'000'000;
    const unsigned p = 5, m = 2;
    const unsigned q_bits_list[] = {2, 4, 8, 12, 16, 24, 32, 64, 128, 256};
    for (unsigned q_bits : q_bits_list) {
        rows.push_back(analytic_row(SchemeTag::boyle2015_dpf, domain, p, m, q_bits, false));
        rows.push_back(analytic_row(SchemeTag::bunn_prg, domain, p, m, q_bits, false));
        rows.push_back(analytic_row(SchemeTag::goel2025, domain, p, m, q_bits, false));
        rows.push_back(analytic_row(SchemeTag::trivial, domain, p, m, q_bits, true));
        rows.push_back(analytic_row(SchemeTag::riposte_ddh, domain, p, m, q_bits, false));
        // The DDH schemes ride a fixed 256-bit curve, so their measured size
        // repeats across output moduli.
        BenchmarkRow ours = bench_ours_dpf(domain, p, m, group, true, rng);
        ours.q_bits = q_bits;
        rows.push_back(std::move(ours));
    }
}

void primorial_sweep(std::vector<BenchmarkRow>& rows, RandomnessSource& rng) {
    auto group = make_group(GroupId::p256);
    const uint64_t domain = 1'000'000;
    const unsigned p = 5, m = 2;
    const uint64_t primorials[] = {6, 30, 210, 2310, 30030, 510510, 9699690};
    for (uint64_t modulus : primorials) {
        unsigned q_bits = static_cast<unsigned>(Bn(modulus - 1).bits());
        rows.push_back(crt_row(SchemeTag::boyle2015_dpf, domain, p, m, modulus));
        rows.push_back(crt_row(SchemeTag::bunn_prg, domain, p, m, modulus));
        rows.push_back(analytic_row(SchemeTag::trivial, domain, p, m, q_bits, true));
        rows.push_back(analytic_row(SchemeTag::riposte_ddh, domain, p, m, q_bits, false));
        BenchmarkRow ours = bench_ours_dpf(domain, p, m, group, true, rng);
        ours.q_bits = q_bits;
        rows.push_back(std::move(ours));
    }
}

}  // namespace

KeygenResult cmd_keygen(const JobConfig& config) {
    auto group = make_group(config.group_id);
    uint64_t param = codec_param_for(config, *group);
    GroupElement g_beta = encode_beta(config.encoding, param, group, config.beta);
    ChaChaRng rng(config.seed);

    std::vector<std::vector<uint8_t>> files;
    if (config.scheme == SchemeKind::dpf) {
        auto keys = dpf_gen(config.domain, config.alpha, g_beta, config.parties, config.corrupt,
                            group, rng, config.prss);
        for (const auto& key : keys) files.push_back(serialize_key(key, config.encoding, param));
    } else if (config.scheme == SchemeKind::dcf) {
        auto keys = dcf_gen(config.domain, config.alpha, g_beta, config.parties, config.corrupt,
                            group, rng, config.prss);
        for (const auto& key : keys) files.push_back(serialize_key(key, config.encoding, param));
    } else {
        throw ParameterMismatch("keygen supports the dpf and dcf schemes");
    }

    KeygenResult result;
    for (unsigned i = 0; i < files.size(); ++i) {
        std::filesystem::path path = config.out;
        path += ".party" + std::to_string(i) + ".key";
        write_file(path, files[i]);
        result.key_paths.push_back(path);
        uint64_t bits = uint64_t(files[i].size()) * 8;
        result.per_party_bits.push_back(bits);
        result.total_bits += bits;
    }
    return result;
}

void cmd_eval(const EvalConfig& config) {
    KeyFile file = parse_key(read_file(config.key_path));
    ShareFile shares;
    shares.header = file.header;

    if (auto* dpf = std::get_if<DpfKey>(&file.key)) {
        shares.invocation = invocation_digest(*dpf);
        shares.points = requested_points(config, dpf->domain);
        shares.shares.reserve(shares.points.size());
        for (uint64_t x : shares.points) shares.shares.push_back(dpf_eval(*dpf, x));
        write_file(config.out, serialize_shares(shares, *dpf->group));
    } else if (auto* dcf = std::get_if<DcfKey>(&file.key)) {
        shares.invocation = invocation_digest(*dcf);
        shares.points = requested_points(config, dcf->domain);
        shares.shares.reserve(shares.points.size());
        for (uint64_t x : shares.points) shares.shares.push_back(dcf_eval(*dcf, x));
        write_file(config.out, serialize_shares(shares, *dcf->group));
    } else {
        throw ParameterMismatch("eval requires a DPF or DCF key file");
    }
}

std::vector<DecodedPoint> cmd_decode(const DecodeConfig& config) {
    if (config.share_paths.empty()) throw ParameterMismatch("no share files supplied");
    std::vector<ShareFile> files;
    files.reserve(config.share_paths.size());
    for (const auto& path : config.share_paths) files.push_back(parse_shares(read_file(path)));

    const ShareFile& first = files.front();
    if (files.size() != first.header.p)
        throw ParameterMismatch("need exactly one share file per party");
    for (const ShareFile& f : files) {
        bool same = f.header.group_id == first.header.group_id &&
                    f.header.scheme == first.header.scheme && f.header.p == first.header.p &&
                    f.header.m == first.header.m && f.header.domain == first.header.domain &&
                    f.header.encoding == first.header.encoding &&
                    f.header.codec_param == first.header.codec_param &&
                    f.invocation == first.invocation && f.points == first.points;
        if (!same) throw ParameterMismatch("share files stem from different invocations");
    }

    auto group = make_group(first.header.group_id);
    std::vector<DecodedPoint> out;
    out.reserve(first.points.size());
    for (size_t i = 0; i < first.points.size(); ++i) {
        GroupElement acc = group->identity();
        for (const ShareFile& f : files) acc = group->mul(acc, f.shares[i]);
        uint64_t value;
        try {
            value = decode_element(first.header.encoding, first.header.codec_param, group, acc);
        } catch (const OutOfRangeError& e) {
            throw OutOfRangeError("point " + std::to_string(first.points[i]) + ": " + e.what());
        }
        out.push_back(DecodedPoint{first.points[i], value});
    }
    return out;
}

std::vector<BenchmarkRow> bench_rows(SweepKind sweep, uint64_t seed) {
    ChaChaRng rng(seed);
    std::vector<BenchmarkRow> rows;
    if (sweep == SweepKind::domain || sweep == SweepKind::all) domain_sweep(rows, rng);
    if (sweep == SweepKind::parties || sweep == SweepKind::all) parties_sweep(rows, rng);
    if (sweep == SweepKind::moduli || sweep == SweepKind::all) moduli_sweep(rows, rng);
    if (sweep == SweepKind::primorial || sweep == SweepKind::all) primorial_sweep(rows, rng);
    sort_rows(rows);
    return rows;
}

std::string cmd_bench(const BenchConfig& config) {
    std::string csv = csv_render(bench_rows(config.sweep, config.seed));
    if (!config.out.empty()) {
        write_file(config.out,
                   std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(csv.data()), csv.size()));
    }
    return csv;
}

std::vector<uint64_t> cmd_demo_histogram(const HistogramConfig& config) {
    if (config.bins == 0) throw DomainError("histogram needs at least one bin");
    auto group = make_group(config.group_id);
    ExponentCodec codec(group, config.bound != 0 ? config.bound : default_exponent_bound(*group));
    ChaChaRng rng(config.seed);

    std::vector<uint64_t> values = config.values;
    if (values.empty()) {
        values.reserve(config.clients);
        for (unsigned i = 0; i < config.clients; ++i) {
            uint8_t buf[8];
            rng.fill_bytes(buf);
            uint64_t v = 0;
            for (int b = 0; b < 8; b++) v |= uint64_t(buf[b]) << (8 * b);
            values.push_back(v % config.bins);
        }
    }
    for (uint64_t v : values)
        if (v >= config.bins) throw DomainError("client value outside the bin range");

    // Server-side aggregation: multiply the group-element shares across
    // clients per bin, so BSGS runs once per bin rather than per client.
    std::vector<std::vector<GroupElement>> aggregate(
        config.parties, std::vector<GroupElement>(config.bins, group->identity()));
    GroupElement one = codec.encode(1);
    for (uint64_t value : values) {
        auto keys = dpf_gen(config.bins, value, one, config.parties, config.corrupt, group, rng);
        for (unsigned i = 0; i < config.parties; ++i)
            for (uint64_t bin = 0; bin < config.bins; ++bin)
                aggregate[i][bin] = group->mul(aggregate[i][bin], dpf_eval(keys[i], bin));
    }

    std::vector<uint64_t> histogram(config.bins, 0);
    for (uint64_t bin = 0; bin < config.bins; ++bin) {
        GroupElement acc = group->identity();
        for (unsigned i = 0; i < config.parties; ++i) acc = group->mul(acc, aggregate[i][bin]);
        histogram[bin] = codec.decode(acc);
    }
    return histogram;
}

}  // namespace mpfss::cli
