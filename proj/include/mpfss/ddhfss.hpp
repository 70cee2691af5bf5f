#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "mpfss/group.hpp"
#include "mpfss/subfss.hpp"

namespace mpfss {

// Position of x in the (nu^2 x nu) evaluation grid, nu = ceil(cbrt(N)),
// column least significant: x = row * nu + col. Row-major order makes
// { x <= alpha } exactly (full rows below row*) u (row*, cols <= col*).
struct GridPos {
    uint64_t row = 0;
    uint32_t col = 0;
};

uint32_t cube_grid_width(uint64_t domain);  // nu
GridPos grid_pos(uint64_t x, uint32_t nu);  // requires x < nu^3

// Per-column pair: g random, h the correction point cancelling g off the
// target column and releasing the encoded secret on it.
struct CorrectionPair {
    GroupElement g;
    GroupElement h;
};

// One party's DDH-scheme DPF key. The correction-point list is identical
// across parties; only the sub-keys differ.
struct DpfKey {
    std::shared_ptr<const Group> group;
    uint64_t domain = 0;  // N
    uint32_t nu = 0;
    uint8_t p = 0;
    uint8_t m = 0;
    uint8_t party = 0;
    bool prss = false;
    SubDpfKey key_a;  // shares of r at row gamma*
    SubDpfKey key_b;  // shares of 1 at row gamma*
    std::vector<CorrectionPair> corrections;  // length nu
};

// DCF key: DPF fields plus the sub-DCF at threshold gamma* - 1 (value s)
// and u = g_beta^(1/s).
struct DcfKey {
    std::shared_ptr<const Group> group;
    uint64_t domain = 0;
    uint32_t nu = 0;
    uint8_t p = 0;
    uint8_t m = 0;
    uint8_t party = 0;
    bool prss = false;
    SubDpfKey key_a;
    SubDpfKey key_b;
    SubDcfKey key_c;
    std::vector<CorrectionPair> corrections;
    GroupElement u;
};

// g_beta is the encoded secret (identity encodes 0). Gen self-checks the
// correction points: distinct g's, and h^r * g equal to the identity off
// the target column (g_beta on it).
std::vector<DpfKey> dpf_gen(uint64_t domain, uint64_t alpha, const GroupElement& g_beta, unsigned p,
                            unsigned m, const std::shared_ptr<const Group>& group,
                            RandomnessSource& rng, bool prss = false);

GroupElement dpf_eval(const DpfKey& key, uint64_t x);

std::vector<DcfKey> dcf_gen(uint64_t domain, uint64_t alpha, const GroupElement& g_beta, unsigned p,
                            unsigned m, const std::shared_ptr<const Group>& group,
                            RandomnessSource& rng, bool prss = false);

GroupElement dcf_eval(const DcfKey& key, uint64_t x);

// Product of the p multiplicative shares; the caller maps the result back
// through the secret encoding.
GroupElement ddh_decode(std::span<const GroupElement> shares, const Group& group);

}  // namespace mpfss
