#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpfss/group.hpp"
#include "mpfss/keyfile.hpp"

namespace mpfss {

// Key-size accounting. Measured entries are exact bit counts of the
// serialized key files of one Gen invocation (PRSS-compressed when the keys
// were generated that way). Analytic entries evaluate the documented
// closed forms with unit constants; the real constants of the baseline
// schemes are unpublished, so those rows are estimates and only ratios and
// trends are meaningful.
//
// Counting conventions: totals sum the per-party serialized bytes * 8,
// correction points counted once per party (every party receives them);
// analytic root factors use ceilings (grid covering); q_bits drives the
// logarithmic factors while the exponential factors use the modulus value.

enum class SchemeTag {
    trivial,
    boyle2015_dpf,
    riposte_ddh,
    bunn_prg,
    bunn_it,
    goel2025,
    ours_dpf,
    ours_dcf,
    boyle2015_dcf,
    kumar_dcf,
};

std::string scheme_name(SchemeTag tag);

struct KeyMeasure {
    std::vector<uint64_t> per_party_bits;
    uint64_t total_bits = 0;
    uint64_t max_party_bits = 0;
};

// Exact bit counts of serialized keys; all files must stem from a single
// Gen invocation (same parameters and, for the DDH schemes, the same
// correction points), otherwise ParameterMismatch.
KeyMeasure measure_key_bits(const std::vector<std::vector<uint8_t>>& serialized_keys);

// Closed-form estimators with q = 2^q_bits. Big-integer output: the
// exponential factors overflow any machine word for realistic inputs.
Bn estimate_bits(SchemeTag tag, uint64_t domain, unsigned p, unsigned m, unsigned q_bits,
                 unsigned lambda, bool prss);

// Prime-power factor values of the modulus (trial division).
std::vector<uint64_t> crt_decompose(uint64_t modulus);

// PRG-scheme estimate with the exponential factor split over the CRT
// factors of a composite modulus.
Bn crt_adjusted_estimate(SchemeTag tag, uint64_t domain, unsigned p, unsigned m, uint64_t modulus,
                         unsigned lambda, bool prss);

struct BenchmarkRow {
    std::string scheme;
    std::string kind;  // measured | analytic | analytic-crt
    uint64_t domain = 0;
    unsigned p = 0;
    unsigned m = 0;
    unsigned q_bits = 0;
    unsigned lambda = 0;
    bool prss = false;
    Bn per_party_bits;
    Bn total_bits;
};

// Stable sort by (scheme, N, p, q_bits); ties keep insertion order.
void sort_rows(std::vector<BenchmarkRow>& rows);
std::string csv_render(const std::vector<BenchmarkRow>& rows);

// Measured rows: these actually run Gen and serialize the keys.
BenchmarkRow bench_ours_dpf(uint64_t domain, unsigned p, unsigned m,
                            const std::shared_ptr<const Group>& group, bool prss,
                            RandomnessSource& rng);
BenchmarkRow bench_ours_dcf(uint64_t domain, unsigned p, unsigned m,
                            const std::shared_ptr<const Group>& group, bool prss,
                            RandomnessSource& rng);
BenchmarkRow bench_bunn_it(uint64_t domain, unsigned p, unsigned m,
                           const std::shared_ptr<const Group>& group, bool prss,
                           RandomnessSource& rng);

// The trivial scheme (additive sharing of the truth table) measured as raw
// payload bits, which the unit tests cross-check against the closed form.
KeyMeasure measure_trivial_bits(uint64_t domain, unsigned p, const ScalarField& field, bool prss,
                                RandomnessSource& rng);

}  // namespace mpfss
