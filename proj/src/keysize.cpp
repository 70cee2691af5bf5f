#include "mpfss/keysize.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>

#include "mpfss/encoding.hpp"

namespace mpfss {

namespace {

Bn binom(unsigned n, unsigned k) {
    if (k > n) return Bn(0);
    Bn acc(1);
    for (unsigned i = 0; i < k; ++i) acc = acc.mul(Bn(n - i)).div(Bn(i + 1));
    return acc;
}

void check_majority(unsigned p, unsigned m) {
    if (2 * m >= p) throw MajorityViolation("honest majority requires 2m < p");
}

unsigned bits_of(uint64_t v) {
    // ceil(log2(v)) for v >= 2
    unsigned b = 0;
    uint64_t x = v - 1;
    while (x) {
        ++b;
        x >>= 1;
    }
    return b;
}

// Shared formula core; q is the modulus value, q_bits its ceil(log2).
Bn estimate_with_modulus(SchemeTag tag, uint64_t domain, unsigned p, unsigned m, const Bn& q,
                         unsigned q_bits, unsigned lambda, bool prss) {
    Bn n(domain);
    Bn pp(p);
    switch (tag) {
        case SchemeTag::trivial:
            if (prss) return n.mul(Bn(q_bits)).add(Bn(p - 1).mul(Bn(lambda)));
            return pp.mul(n).mul(Bn(q_bits));
        case SchemeTag::boyle2015_dpf:
        case SchemeTag::boyle2015_dcf:
            // p * sqrt(N) * q^((p-1)/2) * (q_bits + lambda)
            return pp.mul(n.ceil_root(2))
                .mul(q.pow(p - 1).ceil_root(2))
                .mul(Bn(q_bits + lambda));
        case SchemeTag::riposte_ddh:
            // fixed 256-bit group elements regardless of the output modulus
            return pp.mul(n.ceil_root(2)).mul(Bn(lambda + 256));
        case SchemeTag::bunn_prg: {
            check_majority(p, m);
            // p * N^(1/4) * sqrt(q^(p^m)) * C(p-1, m) * (lambda + q_bits)
            uint64_t pm = 1;
            for (unsigned i = 0; i < m; ++i) pm *= p;
            return pp.mul(n.ceil_root(4))
                .mul(q.pow(pm).ceil_root(2))
                .mul(binom(p - 1, m))
                .mul(Bn(lambda + q_bits));
        }
        case SchemeTag::goel2025: {
            // p * sqrt(N) * p^3 * lambda^3 * (q_bits + lambda)
            Bn l(lambda);
            return pp.mul(n.ceil_root(2))
                .mul(pp.pow(3))
                .mul(l.pow(3))
                .mul(Bn(q_bits + lambda));
        }
        case SchemeTag::kumar_dcf: {
            // p * sqrt(N) * (lambda / 2^((p-1)/2) + 2^((p-1)/2) * q_bits)
            unsigned half = (p - 1) / 2;
            Bn inner = Bn(lambda >> std::min(half, 31u)).add(Bn(uint64_t(1) << half).mul(Bn(q_bits)));
            return pp.mul(n.ceil_root(2)).mul(inner);
        }
        case SchemeTag::bunn_it:
        case SchemeTag::ours_dpf:
        case SchemeTag::ours_dcf:
            throw ParameterMismatch("scheme is measured, not estimated");
    }
    throw ParameterMismatch("unknown scheme tag");
}

BenchmarkRow measured_row(SchemeTag tag, uint64_t domain, unsigned p, unsigned m, unsigned q_bits,
                          unsigned lambda, bool prss, const KeyMeasure& measure) {
    BenchmarkRow row;
    row.scheme = scheme_name(tag);
    row.kind = "measured";
    row.domain = domain;
    row.p = p;
    row.m = m;
    row.q_bits = q_bits;
    row.lambda = lambda;
    row.prss = prss;
    row.per_party_bits = Bn(measure.max_party_bits);
    row.total_bits = Bn(measure.total_bits);
    return row;
}

}  // namespace

std::string scheme_name(SchemeTag tag) {
    switch (tag) {
        case SchemeTag::trivial: return "trivial";
        case SchemeTag::boyle2015_dpf: return "boyle2015-dpf";
        case SchemeTag::riposte_ddh: return "riposte-ddh";
        case SchemeTag::bunn_prg: return "bunn-prg";
        case SchemeTag::bunn_it: return "bunn-it";
        case SchemeTag::goel2025: return "goel2025";
        case SchemeTag::ours_dpf: return "ours-dpf";
        case SchemeTag::ours_dcf: return "ours-dcf";
        case SchemeTag::boyle2015_dcf: return "boyle2015-dcf";
        case SchemeTag::kumar_dcf: return "kumar-dcf";
    }
    throw ParameterMismatch("unknown scheme tag");
}

KeyMeasure measure_key_bits(const std::vector<std::vector<uint8_t>>& serialized_keys) {
    if (serialized_keys.empty()) throw ParameterMismatch("no keys supplied");
    KeyMeasure out;

    std::optional<KeyFileHeader> first;
    std::optional<std::array<uint8_t, 32>> digest;
    for (const auto& bytes : serialized_keys) {
        KeyFile file = parse_key(bytes);
        const KeyFileHeader& h = file.header;
        if (first) {
            bool same = h.group_id == first->group_id && h.scheme == first->scheme &&
                        h.p == first->p && h.m == first->m && h.prss == first->prss &&
                        h.domain == first->domain && h.nu == first->nu &&
                        h.encoding == first->encoding;
            if (!same) throw ParameterMismatch("keys stem from different invocations");
        } else {
            first = h;
        }
        // DDH keys additionally share randomized correction points; compare
        // their digest so keys of equal shape but separate Gen runs are
        // rejected.
        std::optional<std::array<uint8_t, 32>> d;
        if (auto* dpf = std::get_if<DpfKey>(&file.key)) d = invocation_digest(*dpf);
        if (auto* dcf = std::get_if<DcfKey>(&file.key)) d = invocation_digest(*dcf);
        if (d) {
            if (digest && *digest != *d)
                throw ParameterMismatch("keys stem from different invocations");
            digest = d;
        }
        uint64_t bits = uint64_t(bytes.size()) * 8;
        out.per_party_bits.push_back(bits);
        out.total_bits += bits;
        out.max_party_bits = std::max(out.max_party_bits, bits);
    }
    if (first->p != serialized_keys.size())
        throw ParameterMismatch("key count does not match the party count");
    return out;
}

Bn estimate_bits(SchemeTag tag, uint64_t domain, unsigned p, unsigned m, unsigned q_bits,
                 unsigned lambda, bool prss) {
    Bn q = Bn(2).pow(q_bits);
    return estimate_with_modulus(tag, domain, p, m, q, q_bits, lambda, prss);
}

std::vector<uint64_t> crt_decompose(uint64_t modulus) {
    if (modulus < 2) throw DomainError("modulus must be >= 2");
    std::vector<uint64_t> factors;
    uint64_t rest = modulus;
    for (uint64_t d = 2; d * d <= rest; ++d) {
        if (rest % d) continue;
        uint64_t power = 1;
        while (rest % d == 0) {
            power *= d;
            rest /= d;
        }
        factors.push_back(power);
    }
    if (rest > 1) factors.push_back(rest);
    return factors;
}

Bn crt_adjusted_estimate(SchemeTag tag, uint64_t domain, unsigned p, unsigned m, uint64_t modulus,
                         unsigned lambda, bool prss) {
    Bn total(0);
    for (uint64_t factor : crt_decompose(modulus)) {
        total = total.add(
            estimate_with_modulus(tag, domain, p, m, Bn(factor), bits_of(factor), lambda, prss));
    }
    return total;
}

void sort_rows(std::vector<BenchmarkRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const BenchmarkRow& a, const BenchmarkRow& b) {
        if (a.scheme != b.scheme) return a.scheme < b.scheme;
        if (a.domain != b.domain) return a.domain < b.domain;
        if (a.p != b.p) return a.p < b.p;
        return a.q_bits < b.q_bits;
    });
}

std::string csv_render(const std::vector<BenchmarkRow>& rows) {
    std::ostringstream out;
    out << "scheme,kind,N,p,m,q_bits,lambda,prss,per_party_bits,total_bits\n";
    for (const auto& row : rows) {
        out << row.scheme << ',' << row.kind << ',' << row.domain << ',' << row.p << ',' << row.m
            << ',' << row.q_bits << ',' << row.lambda << ',' << (row.prss ? 1 : 0) << ','
            << row.per_party_bits.to_dec() << ',' << row.total_bits.to_dec() << '\n';
    }
    return out.str();
}

BenchmarkRow bench_ours_dpf(uint64_t domain, unsigned p, unsigned m,
                            const std::shared_ptr<const Group>& group, bool prss,
                            RandomnessSource& rng) {
    ExponentCodec codec(group);
    auto keys = dpf_gen(domain, domain / 2, codec.encode(1), p, m, group, rng, prss);
    std::vector<std::vector<uint8_t>> files;
    files.reserve(p);
    for (const auto& key : keys)
        files.push_back(serialize_key(key, EncodingKind::exponent, codec.bound()));
    return measured_row(SchemeTag::ours_dpf, domain, p, m, group->scalar_field().bits(),
                        group->security_lambda(), prss, measure_key_bits(files));
}

BenchmarkRow bench_ours_dcf(uint64_t domain, unsigned p, unsigned m,
                            const std::shared_ptr<const Group>& group, bool prss,
                            RandomnessSource& rng) {
    ExponentCodec codec(group);
    auto keys = dcf_gen(domain, domain / 2, codec.encode(1), p, m, group, rng, prss);
    std::vector<std::vector<uint8_t>> files;
    files.reserve(p);
    for (const auto& key : keys)
        files.push_back(serialize_key(key, EncodingKind::exponent, codec.bound()));
    return measured_row(SchemeTag::ours_dcf, domain, p, m, group->scalar_field().bits(),
                        group->security_lambda(), prss, measure_key_bits(files));
}

BenchmarkRow bench_bunn_it(uint64_t domain, unsigned p, unsigned m,
                           const std::shared_ptr<const Group>& group, bool prss,
                           RandomnessSource& rng) {
    const ScalarField& field = group->scalar_field();
    auto keys = subdpf_gen(domain, domain / 2, field.one(), p, m, field, rng, prss);
    std::vector<std::vector<uint8_t>> files;
    files.reserve(p);
    for (const auto& key : keys)
        files.push_back(serialize_subdpf_key(key, p, m, group->id(), prss));
    return measured_row(SchemeTag::bunn_it, domain, p, m, field.bits(), group->security_lambda(),
                        prss, measure_key_bits(files));
}

KeyMeasure measure_trivial_bits(uint64_t domain, unsigned p, const ScalarField& field, bool prss,
                                RandomnessSource& rng) {
    // Additive sharing of the full truth table, measured as raw payload
    // bytes (no file framing). Shares a unit vector; the contents do not
    // affect the size.
    if (domain > (uint64_t(1) << 24)) throw DomainError("trivial-scheme measurement capped at 2^24");
    ScalarVec table(domain, field.zero());
    table[0] = field.one();

    std::vector<std::vector<uint8_t>> payloads;
    if (prss) {
        // p - 1 seed holders plus one explicit share vector.
        ScalarVec correction = table;
        for (unsigned i = 0; i + 1 < p; ++i) {
            std::array<uint8_t, kPrssSeedBytes> seed;
            rng.fill_bytes(seed);
            ScalarVec expanded = prg_expand(seed, domain, field);
            for (uint64_t j = 0; j < domain; ++j)
                correction[j] = field.sub(correction[j], expanded[j]);
            payloads.emplace_back(seed.begin(), seed.end());
        }
        std::vector<uint8_t> vec;
        vec.reserve(domain * field.byte_width());
        for (const Scalar& s : correction) {
            auto bytes = field.to_bytes(s);
            vec.insert(vec.end(), bytes.begin(), bytes.end());
        }
        payloads.push_back(std::move(vec));
    } else {
        ScalarVec last = table;
        for (unsigned i = 0; i + 1 < p; ++i) {
            std::vector<uint8_t> vec;
            vec.reserve(domain * field.byte_width());
            for (uint64_t j = 0; j < domain; ++j) {
                Scalar share = rng.random_scalar(field);
                last[j] = field.sub(last[j], share);
                auto bytes = field.to_bytes(share);
                vec.insert(vec.end(), bytes.begin(), bytes.end());
            }
            payloads.push_back(std::move(vec));
        }
        std::vector<uint8_t> vec;
        vec.reserve(domain * field.byte_width());
        for (const Scalar& s : last) {
            auto bytes = field.to_bytes(s);
            vec.insert(vec.end(), bytes.begin(), bytes.end());
        }
        payloads.push_back(std::move(vec));
    }

    KeyMeasure out;
    for (const auto& payload : payloads) {
        uint64_t bits = uint64_t(payload.size()) * 8;
        out.per_party_bits.push_back(bits);
        out.total_bits += bits;
        out.max_party_bits = std::max(out.max_party_bits, bits);
    }
    return out;
}

}  // namespace mpfss
