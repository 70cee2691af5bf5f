#include "mpfss/ddhfss.hpp"

#include <set>

#include "mpfss/bn_util.hpp"
#include "mpfss/errors.hpp"

namespace mpfss {

namespace {

// Column points with all g's distinct. Duplicates are astronomically rare
// on the default group but routine on the small test groups, so resampling
// keeps the distinctness invariant unconditional.
std::vector<GroupElement> sample_distinct_generators(const Group& group, uint32_t count,
                                                     RandomnessSource& rng) {
    std::vector<GroupElement> out;
    out.reserve(count);
    std::set<std::vector<uint8_t>> seen;
    while (out.size() < count) {
        GroupElement g = group.random_generator(rng);
        if (seen.insert(group.serialize(g)).second) out.push_back(g);
    }
    return out;
}

void self_check_pair(const Group& group, const CorrectionPair& pair, const Scalar& r,
                     const GroupElement& expected) {
    // h^r * g must reproduce the decode-time cancellation.
    GroupElement probe = group.mul(group.exp(pair.h, r), pair.g);
    if (!group.equal(probe, expected)) throw Error("correction-point self-check failed");
}

}  // namespace

uint32_t cube_grid_width(uint64_t domain) {
    if (domain == 0) throw DomainError("domain size must be positive");
    return static_cast<uint32_t>(ceil_cbrt_u64(domain));
}

GridPos grid_pos(uint64_t x, uint32_t nu) {
    if (nu == 0 || x >= static_cast<uint64_t>(nu) * nu * nu)
        throw DomainError("grid position outside nu^3");
    return GridPos{x / nu, static_cast<uint32_t>(x % nu)};
}

std::vector<DpfKey> dpf_gen(uint64_t domain, uint64_t alpha, const GroupElement& g_beta, unsigned p,
                            unsigned m, const std::shared_ptr<const Group>& group,
                            RandomnessSource& rng, bool prss) {
    if (alpha >= domain) throw DomainError("point position outside the domain");
    const ScalarField& field = group->scalar_field();
    uint32_t nu = cube_grid_width(domain);
    GridPos star = grid_pos(alpha, nu);

    Scalar r = rng.random_nonzero(field);
    Scalar r_inv = field.inverse(r);
    Scalar neg_r_inv = field.neg(r_inv);

    uint64_t sub_domain = static_cast<uint64_t>(nu) * nu;
    auto keys_a = subdpf_gen(sub_domain, star.row, r, p, m, field, rng, prss);
    auto keys_b = subdpf_gen(sub_domain, star.row, field.one(), p, m, field, rng, prss);

    std::vector<GroupElement> gs = sample_distinct_generators(*group, nu, rng);
    std::vector<CorrectionPair> corrections(nu);
    GroupElement identity = group->identity();
    GroupElement beta_corr = group->exp(g_beta, r_inv);
    for (uint32_t d = 0; d < nu; ++d) {
        corrections[d].g = gs[d];
        corrections[d].h = group->exp(gs[d], neg_r_inv);
        if (d == star.col) corrections[d].h = group->mul(corrections[d].h, beta_corr);
        self_check_pair(*group, corrections[d], r, d == star.col ? g_beta : identity);
    }

    std::vector<DpfKey> keys(p);
    for (unsigned i = 0; i < p; ++i) {
        keys[i].group = group;
        keys[i].domain = domain;
        keys[i].nu = nu;
        keys[i].p = static_cast<uint8_t>(p);
        keys[i].m = static_cast<uint8_t>(m);
        keys[i].party = static_cast<uint8_t>(i);
        keys[i].prss = prss;
        keys[i].key_a = std::move(keys_a[i]);
        keys[i].key_b = std::move(keys_b[i]);
        keys[i].corrections = corrections;
    }
    return keys;
}

GroupElement dpf_eval(const DpfKey& key, uint64_t x) {
    if (x >= key.domain) throw DomainError("evaluation point outside the domain");
    const ScalarField& field = key.group->scalar_field();
    GridPos pos = grid_pos(x, key.nu);
    Scalar share_a = subdpf_eval(key.key_a, pos.row, field);
    Scalar share_b = subdpf_eval(key.key_b, pos.row, field);
    const CorrectionPair& corr = key.corrections[pos.col];
    return key.group->mul_exp2(corr.h, share_a, corr.g, share_b);
}

std::vector<DcfKey> dcf_gen(uint64_t domain, uint64_t alpha, const GroupElement& g_beta, unsigned p,
                            unsigned m, const std::shared_ptr<const Group>& group,
                            RandomnessSource& rng, bool prss) {
    if (alpha >= domain) throw DomainError("comparison threshold outside the domain");
    const ScalarField& field = group->scalar_field();
    uint32_t nu = cube_grid_width(domain);
    GridPos star = grid_pos(alpha, nu);

    Scalar r = rng.random_nonzero(field);
    Scalar r_inv = field.inverse(r);
    Scalar neg_r_inv = field.neg(r_inv);
    Scalar s = rng.random_nonzero(field);
    Scalar s_inv = field.inverse(s);

    uint64_t sub_domain = static_cast<uint64_t>(nu) * nu;
    auto keys_a = subdpf_gen(sub_domain, star.row, r, p, m, field, rng, prss);
    auto keys_b = subdpf_gen(sub_domain, star.row, field.one(), p, m, field, rng, prss);
    // Threshold gamma* - 1: the rows strictly below the target row; the
    // sentinel -1 when gamma* = 0 shares the all-zero function.
    auto keys_c = subdcf_gen(sub_domain, static_cast<int64_t>(star.row) - 1, s, p, m, field, rng, prss);

    std::vector<GroupElement> gs = sample_distinct_generators(*group, nu, rng);
    std::vector<CorrectionPair> corrections(nu);
    GroupElement identity = group->identity();
    GroupElement beta_corr = group->exp(g_beta, r_inv);
    for (uint32_t d = 0; d < nu; ++d) {
        corrections[d].g = gs[d];
        corrections[d].h = group->exp(gs[d], neg_r_inv);
        if (d <= star.col) corrections[d].h = group->mul(corrections[d].h, beta_corr);
        self_check_pair(*group, corrections[d], r, d <= star.col ? g_beta : identity);
    }
    GroupElement u = group->exp(g_beta, s_inv);
    if (!group->equal(group->exp(u, s), g_beta)) throw Error("u self-check failed");

    std::vector<DcfKey> keys(p);
    for (unsigned i = 0; i < p; ++i) {
        keys[i].group = group;
        keys[i].domain = domain;
        keys[i].nu = nu;
        keys[i].p = static_cast<uint8_t>(p);
        keys[i].m = static_cast<uint8_t>(m);
        keys[i].party = static_cast<uint8_t>(i);
        keys[i].prss = prss;
        keys[i].key_a = std::move(keys_a[i]);
        keys[i].key_b = std::move(keys_b[i]);
        keys[i].key_c = std::move(keys_c[i]);
        keys[i].corrections = corrections;
        keys[i].u = u;
    }
    return keys;
}

GroupElement dcf_eval(const DcfKey& key, uint64_t x) {
    if (x >= key.domain) throw DomainError("evaluation point outside the domain");
    const ScalarField& field = key.group->scalar_field();
    GridPos pos = grid_pos(x, key.nu);
    Scalar share_a = subdpf_eval(key.key_a, pos.row, field);
    Scalar share_b = subdpf_eval(key.key_b, pos.row, field);
    Scalar share_c = subdcf_eval(key.key_c, pos.row, field);
    const CorrectionPair& corr = key.corrections[pos.col];
    return key.group->mul_exp3(corr.h, share_a, corr.g, share_b, key.u, share_c);
}

GroupElement ddh_decode(std::span<const GroupElement> shares, const Group& group) {
    GroupElement acc = group.identity();
    for (const GroupElement& s : shares) acc = group.mul(acc, s);
    return acc;
}

}  // namespace mpfss
