#include "mpfss/sharing.hpp"

#include <openssl/evp.h>

#include <bit>
#include <map>

#include "mpfss/errors.hpp"

namespace mpfss {

namespace {

void check_majority(unsigned p, unsigned m) {
    if (p == 0 || p > 32) throw MajorityViolation("party count must be in [1, 32]");
    if (2 * m >= p) throw MajorityViolation("honest majority requires 2m < p");
}

ScalarVec sum_components(const std::vector<ScalarVecPtr>& components, size_t length,
                         const ScalarField& field) {
    ScalarVec acc(length, field.zero());
    for (const auto& comp : components)
        for (size_t j = 0; j < length; ++j) acc[j] = field.add(acc[j], (*comp)[j]);
    return acc;
}

void check_same_party(const CnfPartyView& a, const CnfPartyView& b) {
    if (a.p != b.p || a.m != b.m) throw ParameterMismatch("views have different (p, m)");
    if (a.party != b.party) throw ParameterMismatch("views belong to different parties");
}

}  // namespace

std::vector<uint32_t> subsets_lex(unsigned p, unsigned m) {
    if (m > p) throw ParameterMismatch("subset size exceeds party count");
    std::vector<uint32_t> out;
    std::vector<unsigned> idx(m);
    for (unsigned i = 0; i < m; ++i) idx[i] = i;
    for (;;) {
        uint32_t mask = 0;
        for (unsigned i : idx) mask |= 1u << i;
        out.push_back(mask);
        if (m == 0) break;
        // advance to the next sorted tuple
        int k = static_cast<int>(m) - 1;
        while (k >= 0 && idx[k] == p - m + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (unsigned i = k + 1; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

std::vector<uint32_t> subsets_excluding(unsigned p, unsigned m, unsigned party) {
    std::vector<uint32_t> out;
    for (uint32_t mask : subsets_lex(p, m))
        if (!(mask & (1u << party))) out.push_back(mask);
    return out;
}

CnfSharing cnf_share_components(const ScalarVec& secret, unsigned p, unsigned m,
                                const ScalarField& field, RandomnessSource& rng) {
    check_majority(p, m);
    if (secret.empty()) throw DomainError("secret vector must be non-empty");

    CnfSharing out;
    out.p = static_cast<uint8_t>(p);
    out.m = static_cast<uint8_t>(m);
    out.length = secret.size();
    out.subset_masks = subsets_lex(p, m);

    ScalarVec running(secret.size(), field.zero());
    for (size_t t = 0; t + 1 < out.subset_masks.size(); ++t) {
        auto comp = std::make_shared<ScalarVec>();
        comp->reserve(secret.size());
        for (size_t j = 0; j < secret.size(); ++j) {
            Scalar v = rng.random_scalar(field);
            running[j] = field.add(running[j], v);
            comp->push_back(std::move(v));
        }
        out.components.push_back(std::move(comp));
    }
    // last component fixed so the column sums match the secret
    auto last = std::make_shared<ScalarVec>();
    last->reserve(secret.size());
    for (size_t j = 0; j < secret.size(); ++j) last->push_back(field.sub(secret[j], running[j]));
    out.components.push_back(std::move(last));
    return out;
}

CnfPartyView extract_view(const CnfSharing& sharing, unsigned party) {
    if (party >= sharing.p) throw ParameterMismatch("party index out of range");
    CnfPartyView view;
    view.p = sharing.p;
    view.m = sharing.m;
    view.party = static_cast<uint8_t>(party);
    view.length = sharing.length;
    for (size_t t = 0; t < sharing.subset_masks.size(); ++t) {
        if (sharing.subset_masks[t] & (1u << party)) continue;
        view.subset_masks.push_back(sharing.subset_masks[t]);
        view.components.push_back(sharing.components[t]);
    }
    return view;
}

std::vector<CnfPartyView> cnf_share(const ScalarVec& secret, unsigned p, unsigned m,
                                    const ScalarField& field, RandomnessSource& rng) {
    CnfSharing sharing = cnf_share_components(secret, p, m, field, rng);
    std::vector<CnfPartyView> views;
    views.reserve(p);
    for (unsigned i = 0; i < p; ++i) views.push_back(extract_view(sharing, i));
    return views;
}

ScalarVec cnf_open(const std::vector<CnfPartyView>& views, const ScalarField& field) {
    if (views.empty()) throw IncompleteShares("no views supplied");
    unsigned p = views.front().p;
    unsigned m = views.front().m;
    size_t length = views.front().length;
    std::map<uint32_t, ScalarVecPtr> seen;
    for (const auto& view : views) {
        if (view.p != p || view.m != m || view.length != length)
            throw ParameterMismatch("views have inconsistent parameters");
        for (size_t t = 0; t < view.subset_masks.size(); ++t) {
            auto [it, inserted] = seen.emplace(view.subset_masks[t], view.components[t]);
            if (!inserted && *it->second != *view.components[t])
                throw InconsistentShares("replicated components disagree");
        }
    }
    auto all = subsets_lex(p, m);
    std::vector<ScalarVecPtr> components;
    for (uint32_t mask : all) {
        auto it = seen.find(mask);
        if (it == seen.end()) throw IncompleteShares("missing subset component");
        components.push_back(it->second);
    }
    return sum_components(components, length, field);
}

Scalar cnf_mul_local(const CnfPartyView& view_a, size_t idx_a, const CnfPartyView& view_b,
                     size_t idx_b, const ScalarField& field) {
    check_same_party(view_a, view_b);
    if (idx_a >= view_a.length || idx_b >= view_b.length)
        throw DomainError("component index out of range");
    if (uint64_t q = field.small_modulus()) {
        // word-sized accumulation: q < 2^31 keeps acc + a*b below 2^63
        uint64_t acc = 0;
        for (size_t s = 0; s < view_a.subset_masks.size(); ++s) {
            uint64_t a = (*view_a.components[s])[idx_a].word();
            for (size_t t = 0; t < view_b.subset_masks.size(); ++t) {
                if (assigned_party(view_a.subset_masks[s] | view_b.subset_masks[t]) != view_a.party)
                    continue;
                acc = (acc + a * (*view_b.components[t])[idx_b].word()) % q;
            }
        }
        return field.from_u64(acc);
    }
    Scalar acc = field.zero();
    for (size_t s = 0; s < view_a.subset_masks.size(); ++s) {
        const Scalar& a = (*view_a.components[s])[idx_a];
        for (size_t t = 0; t < view_b.subset_masks.size(); ++t) {
            if (assigned_party(view_a.subset_masks[s] | view_b.subset_masks[t]) != view_a.party)
                continue;
            acc = field.add(acc, field.mul(a, (*view_b.components[t])[idx_b]));
        }
    }
    return acc;
}

Scalar cnf_collapse_local(const CnfPartyView& view, size_t idx, const ScalarField& field) {
    if (idx >= view.length) throw DomainError("component index out of range");
    if (uint64_t q = field.small_modulus()) {
        uint64_t acc = 0;
        for (size_t t = 0; t < view.subset_masks.size(); ++t) {
            if (assigned_party(view.subset_masks[t]) != view.party) continue;
            acc = (acc + (*view.components[t])[idx].word()) % q;
        }
        return field.from_u64(acc);
    }
    Scalar acc = field.zero();
    for (size_t t = 0; t < view.subset_masks.size(); ++t) {
        if (assigned_party(view.subset_masks[t]) != view.party) continue;
        acc = field.add(acc, (*view.components[t])[idx]);
    }
    return acc;
}

Scalar prg_element(std::span<const uint8_t, kPrssSeedBytes> seed, uint64_t index,
                   const ScalarField& field) {
    uint8_t input[kPrssSeedBytes + 8];
    std::copy(seed.begin(), seed.end(), input);
    for (int i = 0; i < 8; i++) input[kPrssSeedBytes + i] = static_cast<uint8_t>(index >> (8 * i));

    uint8_t out[64];
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw Error("EVP_MD_CTX_new failed");
    bool ok = EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr) == 1 &&
              EVP_DigestUpdate(ctx, input, sizeof(input)) == 1 &&
              EVP_DigestFinalXOF(ctx, out, sizeof(out)) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw Error("SHAKE256 expansion failed");
    return field.reduce(Bn::from_bytes_be(out));
}

ScalarVec prg_expand(std::span<const uint8_t, kPrssSeedBytes> seed, size_t length,
                     const ScalarField& field) {
    ScalarVec out;
    out.reserve(length);
    for (size_t j = 0; j < length; ++j) out.push_back(prg_element(seed, j, field));
    return out;
}

std::vector<PrssCompressedView> prss_compress(const CnfSharing& sharing, const ScalarField& field,
                                              RandomnessSource& rng) {
    if (sharing.components.empty()) throw ParameterMismatch("empty sharing");
    // Recover the secret, then re-share it with seed-derived components;
    // seeds cannot be retrofitted onto the already-fixed input components.
    ScalarVec secret = sum_components(sharing.components, sharing.length, field);

    size_t n_subsets = sharing.subset_masks.size();
    std::vector<PrssPayload> payloads(n_subsets);
    ScalarVec running(sharing.length, field.zero());
    for (size_t t = 0; t + 1 < n_subsets; ++t) {
        rng.fill_bytes(payloads[t].seed);
        ScalarVec expanded = prg_expand(payloads[t].seed, sharing.length, field);
        for (size_t j = 0; j < sharing.length; ++j) running[j] = field.add(running[j], expanded[j]);
    }
    auto correction = std::make_shared<ScalarVec>();
    correction->reserve(sharing.length);
    for (size_t j = 0; j < sharing.length; ++j)
        correction->push_back(field.sub(secret[j], running[j]));
    payloads[n_subsets - 1].explicit_vec = std::move(correction);

    std::vector<PrssCompressedView> views;
    views.reserve(sharing.p);
    for (unsigned i = 0; i < sharing.p; ++i) {
        PrssCompressedView view;
        view.p = sharing.p;
        view.m = sharing.m;
        view.party = static_cast<uint8_t>(i);
        view.length = sharing.length;
        for (size_t t = 0; t < n_subsets; ++t) {
            if (sharing.subset_masks[t] & (1u << i)) continue;
            view.subset_masks.push_back(sharing.subset_masks[t]);
            view.payloads.push_back(payloads[t]);
        }
        views.push_back(std::move(view));
    }
    return views;
}

CnfPartyView prss_expand(const PrssCompressedView& view, const ScalarField& field) {
    if (view.prg_version != kPrgVersion) throw DecodeError("unknown PRG version tag");
    CnfPartyView out;
    out.p = view.p;
    out.m = view.m;
    out.party = view.party;
    out.length = view.length;
    out.subset_masks = view.subset_masks;
    out.components.reserve(view.payloads.size());
    for (const auto& payload : view.payloads) {
        if (payload.is_explicit()) {
            out.components.push_back(payload.explicit_vec);
        } else {
            out.components.push_back(
                std::make_shared<ScalarVec>(prg_expand(payload.seed, view.length, field)));
        }
    }
    return out;
}

}  // namespace mpfss
