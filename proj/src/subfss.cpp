#include "mpfss/subfss.hpp"

#include "mpfss/bn_util.hpp"
#include "mpfss/errors.hpp"

namespace mpfss {

namespace {

// Shares one truth table, optionally PRSS-compressed, and hands each party
// its view (plus the compressed payloads when applicable).
struct SharedTable {
    std::vector<CnfPartyView> views;
    std::vector<PrssCompressedView> compressed;  // empty unless prss
};

SharedTable share_table(const ScalarVec& table, unsigned p, unsigned m, const ScalarField& field,
                        RandomnessSource& rng, bool prss) {
    SharedTable out;
    CnfSharing sharing = cnf_share_components(table, p, m, field, rng);
    if (prss) {
        out.compressed = prss_compress(sharing, field, rng);
        out.views.reserve(p);
        for (unsigned i = 0; i < p; ++i) out.views.push_back(prss_expand(out.compressed[i], field));
    } else {
        out.views.reserve(p);
        for (unsigned i = 0; i < p; ++i) out.views.push_back(extract_view(sharing, i));
    }
    return out;
}

}  // namespace

SubGrid SubGrid::for_domain(uint64_t m) {
    if (m == 0) throw DomainError("domain size must be positive");
    SubGrid g;
    g.domain = m;
    g.width = static_cast<uint32_t>(ceil_sqrt_u64(m));
    return g;
}

std::vector<SubDpfKey> subdpf_gen(uint64_t domain, uint64_t alpha, const Scalar& beta, unsigned p,
                                  unsigned m, const ScalarField& field, RandomnessSource& rng,
                                  bool prss) {
    SubGrid grid = SubGrid::for_domain(domain);
    if (alpha >= domain) throw DomainError("point position outside the domain");

    uint64_t row_star = grid.row(alpha);
    uint32_t col_star = grid.col(alpha);
    ScalarVec table_a(grid.width, field.zero());
    ScalarVec table_b(grid.width, field.zero());
    table_a[row_star] = beta;
    table_b[col_star] = field.one();

    SharedTable a = share_table(table_a, p, m, field, rng, prss);
    SharedTable b = share_table(table_b, p, m, field, rng, prss);

    std::vector<SubDpfKey> keys(p);
    for (unsigned i = 0; i < p; ++i) {
        keys[i].party = static_cast<uint8_t>(i);
        keys[i].grid = grid;
        keys[i].view_a = std::move(a.views[i]);
        keys[i].view_b = std::move(b.views[i]);
        if (prss) {
            keys[i].prss_a = std::move(a.compressed[i]);
            keys[i].prss_b = std::move(b.compressed[i]);
        }
    }
    return keys;
}

Scalar subdpf_eval(const SubDpfKey& key, uint64_t x, const ScalarField& field) {
    if (x >= key.grid.domain) throw DomainError("evaluation point outside the domain");
    return cnf_mul_local(key.view_a, key.grid.row(x), key.view_b, key.grid.col(x), field);
}

std::vector<SubDcfKey> subdcf_gen(uint64_t domain, int64_t alpha, const Scalar& beta, unsigned p,
                                  unsigned m, const ScalarField& field, RandomnessSource& rng,
                                  bool prss) {
    SubGrid grid = SubGrid::for_domain(domain);
    if (alpha < -1 || alpha >= static_cast<int64_t>(domain))
        throw DomainError("comparison threshold outside the domain");

    ScalarVec table_a(grid.width, field.zero());
    ScalarVec table_b(grid.width, field.zero());
    ScalarVec table_c(grid.width, field.zero());
    if (alpha >= 0) {
        uint64_t row_star = grid.row(static_cast<uint64_t>(alpha));
        uint32_t col_star = grid.col(static_cast<uint64_t>(alpha));
        table_a[row_star] = beta;
        for (uint32_t d = 0; d <= col_star; ++d) table_b[d] = field.one();
        for (uint64_t r = 0; r < row_star; ++r) table_c[r] = beta;
    }
    // alpha == -1 leaves every table zero: the all-zero function.

    SharedTable a = share_table(table_a, p, m, field, rng, prss);
    SharedTable b = share_table(table_b, p, m, field, rng, prss);
    SharedTable c = share_table(table_c, p, m, field, rng, prss);

    std::vector<SubDcfKey> keys(p);
    for (unsigned i = 0; i < p; ++i) {
        keys[i].party = static_cast<uint8_t>(i);
        keys[i].grid = grid;
        keys[i].view_a = std::move(a.views[i]);
        keys[i].view_b = std::move(b.views[i]);
        keys[i].view_c = std::move(c.views[i]);
        if (prss) {
            keys[i].prss_a = std::move(a.compressed[i]);
            keys[i].prss_b = std::move(b.compressed[i]);
            keys[i].prss_c = std::move(c.compressed[i]);
        }
    }
    return keys;
}

Scalar subdcf_eval(const SubDcfKey& key, uint64_t x, const ScalarField& field) {
    if (x >= key.grid.domain) throw DomainError("evaluation point outside the domain");
    uint64_t row = key.grid.row(x);
    Scalar product = cnf_mul_local(key.view_a, row, key.view_b, key.grid.col(x), field);
    return field.add(product, cnf_collapse_local(key.view_c, row, field));
}

Scalar additive_decode(std::span<const Scalar> shares, const ScalarField& field) {
    Scalar acc = field.zero();
    for (const Scalar& s : shares) acc = field.add(acc, s);
    return acc;
}

}  // namespace mpfss
