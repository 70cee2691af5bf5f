#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "mpfss/sharing.hpp"

namespace mpfss {

// Square-ish grid over a domain of size M: w = ceil(sqrt(M)) columns,
// row-major order with the column least significant. Trailing cells of the
// last row may be unused; evaluation outside [0, M) is an error.
struct SubGrid {
    uint64_t domain = 0;
    uint32_t width = 0;

    static SubGrid for_domain(uint64_t m);

    uint64_t row(uint64_t x) const { return x / width; }
    uint32_t col(uint64_t x) const { return static_cast<uint32_t>(x % width); }
    uint64_t rows_used() const { return (domain + width - 1) / width; }
};

// One party's key for the honest-majority information-theoretic sub-DPF:
// replicated sharings of the two truth tables whose product is the point
// function. f_a carries beta on row gamma*, f_b carries 1 on column delta*.
struct SubDpfKey {
    uint8_t party = 0;
    SubGrid grid;
    CnfPartyView view_a;
    CnfPartyView view_b;
    // Present when the key was generated with PRSS compression; the views
    // above are always the expanded form used for evaluation.
    std::optional<PrssCompressedView> prss_a;
    std::optional<PrssCompressedView> prss_b;
};

// Sub-DCF key: the point table f_a (beta at row gamma*), the column
// comparison f_b (1 for delta <= delta*), and the row comparison f_c
// (beta for gamma < gamma*), so that f(x) = f_a(row) * f_b(col) + f_c(row).
struct SubDcfKey {
    uint8_t party = 0;
    SubGrid grid;
    CnfPartyView view_a;
    CnfPartyView view_b;
    CnfPartyView view_c;
    std::optional<PrssCompressedView> prss_a;
    std::optional<PrssCompressedView> prss_b;
    std::optional<PrssCompressedView> prss_c;
};

std::vector<SubDpfKey> subdpf_gen(uint64_t domain, uint64_t alpha, const Scalar& beta, unsigned p,
                                  unsigned m, const ScalarField& field, RandomnessSource& rng,
                                  bool prss = false);

// Additive share of f(x) for this party.
Scalar subdpf_eval(const SubDpfKey& key, uint64_t x, const ScalarField& field);

// alpha = -1 is the empty-comparison sentinel producing the all-zero
// function (needed by callers thresholding at gamma* - 1 when gamma* = 0).
std::vector<SubDcfKey> subdcf_gen(uint64_t domain, int64_t alpha, const Scalar& beta, unsigned p,
                                  unsigned m, const ScalarField& field, RandomnessSource& rng,
                                  bool prss = false);

Scalar subdcf_eval(const SubDcfKey& key, uint64_t x, const ScalarField& field);

// Decode_+ : sum of the p additive shares.
Scalar additive_decode(std::span<const Scalar> shares, const ScalarField& field);

}  // namespace mpfss
