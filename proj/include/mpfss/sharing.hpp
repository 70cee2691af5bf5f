#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mpfss/rng.hpp"
#include "mpfss/scalar_field.hpp"

namespace mpfss {

using ScalarVec = std::vector<Scalar>;
using ScalarVecPtr = std::shared_ptr<const ScalarVec>;

// Subsets T of {0..p-1} with |T| = m are represented as bitmasks and
// enumerated in lexicographic order of their sorted index tuples. The
// enumeration order is part of the wire format.
std::vector<uint32_t> subsets_lex(unsigned p, unsigned m);

// All subsets of the party's view: the T with party not in T, in canonical
// order.
std::vector<uint32_t> subsets_excluding(unsigned p, unsigned m, unsigned party);

// The party that computes a value indexed by a subset union: the smallest
// party index outside the mask.
inline unsigned assigned_party(uint32_t mask) {
    return static_cast<unsigned>(std::countr_one(mask));
}

// Replicated (CNF) sharing of a scalar vector: one component v_T per subset,
// summing to the secret; party i holds every v_T with i not in T.
struct CnfSharing {
    uint8_t p = 0;
    uint8_t m = 0;
    size_t length = 0;
    std::vector<uint32_t> subset_masks;   // canonical order
    std::vector<ScalarVecPtr> components; // aligned with subset_masks
};

struct CnfPartyView {
    uint8_t p = 0;
    uint8_t m = 0;
    uint8_t party = 0;
    size_t length = 0;
    std::vector<uint32_t> subset_masks;   // the C(p-1, m) subsets excluding party
    std::vector<ScalarVecPtr> components; // aligned with subset_masks
};

// Uniform components except the lexicographically last subset, which
// absorbs the correction so the components sum to the secret.
CnfSharing cnf_share_components(const ScalarVec& secret, unsigned p, unsigned m,
                                const ScalarField& field, RandomnessSource& rng);

CnfPartyView extract_view(const CnfSharing& sharing, unsigned party);

std::vector<CnfPartyView> cnf_share(const ScalarVec& secret, unsigned p, unsigned m,
                                    const ScalarField& field, RandomnessSource& rng);

// Reconstruction from any collection of views that jointly covers every
// subset. Overlapping replicas must agree.
ScalarVec cnf_open(const std::vector<CnfPartyView>& views, const ScalarField& field);

// One local multiplication under honest majority: each cross-term pair
// (T1, T2) is charged to the smallest party outside T1 | T2, which exists
// because |T1 | T2| <= 2m < p. Summed over parties the outputs form an
// additive sharing of a[idx_a] * b[idx_b].
Scalar cnf_mul_local(const CnfPartyView& view_a, size_t idx_a, const CnfPartyView& view_b,
                     size_t idx_b, const ScalarField& field);

// Collapse of a replicated sharing to an additive one: each subset charged
// to its smallest excluded party.
Scalar cnf_collapse_local(const CnfPartyView& view, size_t idx, const ScalarField& field);

// --- PRSS compression -----------------------------------------------------
//
// Every component except a designated subset T0 (the lexicographically last
// one) is replaced by a 32-byte seed; T0 carries the explicit correction
// vector. Expansion of element j is the wide reduction mod q0 of a 512-bit
// XOF output over (seed || j), so the bias is negligible for any field here.

constexpr uint8_t kPrgVersion = 1;
constexpr size_t kPrssSeedBytes = 32;

struct PrssPayload {
    std::array<uint8_t, kPrssSeedBytes> seed{};
    ScalarVecPtr explicit_vec;  // non-null exactly for T0

    bool is_explicit() const { return explicit_vec != nullptr; }
};

struct PrssCompressedView {
    uint8_t p = 0;
    uint8_t m = 0;
    uint8_t party = 0;
    uint8_t prg_version = kPrgVersion;
    size_t length = 0;
    std::vector<uint32_t> subset_masks;
    std::vector<PrssPayload> payloads;
};

Scalar prg_element(std::span<const uint8_t, kPrssSeedBytes> seed, uint64_t index,
                   const ScalarField& field);
ScalarVec prg_expand(std::span<const uint8_t, kPrssSeedBytes> seed, size_t length,
                     const ScalarField& field);

// Re-shares the secret of `sharing` with seed-derived components and returns
// the per-party compressed views.
std::vector<PrssCompressedView> prss_compress(const CnfSharing& sharing, const ScalarField& field,
                                              RandomnessSource& rng);

// Deterministic expansion; rejects unknown PRG versions with DecodeError.
CnfPartyView prss_expand(const PrssCompressedView& view, const ScalarField& field);

}  // namespace mpfss
