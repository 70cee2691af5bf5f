#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "mpfss/sharing.hpp"
#include "testutil.hpp"

using namespace mpfss;
using mpfss::testing::DigitRng;
using mpfss::testing::index_digits;

namespace {

const ScalarField f5{Bn(5)};

ScalarVec vec(const ScalarField& f, std::initializer_list<uint64_t> vals) {
    ScalarVec out;
    for (uint64_t v : vals) out.push_back(f.from_u64(v));
    return out;
}

}  // namespace

TEST_CASE("subset enumeration is lexicographic over sorted tuples") {
    // p=4, m=2: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
    auto masks = subsets_lex(4, 2);
    std::vector<uint32_t> expected = {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
    CHECK(masks == expected);
    CHECK(subsets_lex(3, 1) == std::vector<uint32_t>{0b001, 0b010, 0b100});
    CHECK(subsets_lex(3, 0) == std::vector<uint32_t>{0});
    CHECK(subsets_excluding(3, 1, 0) == std::vector<uint32_t>{0b010, 0b100});
}

TEST_CASE("basic sharing structure (p=3, m=1 over F_5)") {
    ChaChaRng rng(1);
    auto views = cnf_share(vec(f5, {2}), 3, 1, f5, rng);
    REQUIRE(views.size() == 3);
    // party 0 holds v_{1} and v_{2}
    CHECK(views[0].subset_masks == std::vector<uint32_t>{0b010, 0b100});
    CHECK(views[0].components.size() == 2);

    // components sum to the secret
    Scalar sum = f5.zero();
    CnfSharing sharing = cnf_share_components(vec(f5, {2}), 3, 1, f5, rng);
    for (const auto& comp : sharing.components) sum = f5.add(sum, (*comp)[0]);
    CHECK(sum == f5.from_u64(2));
}

TEST_CASE("m = 0 degenerates to plain replication") {
    ChaChaRng rng(2);
    auto views = cnf_share(vec(f5, {3, 1}), 3, 0, f5, rng);
    for (const auto& view : views) {
        REQUIRE(view.components.size() == 1);
        CHECK((*view.components[0])[0] == f5.from_u64(3));
        CHECK((*view.components[0])[1] == f5.from_u64(1));
    }
}

TEST_CASE("view component count is binom(p-1, m)") {
    ChaChaRng rng(3);
    auto views = cnf_share(vec(f5, {1}), 5, 2, f5, rng);
    for (const auto& view : views) CHECK(view.components.size() == 6);  // C(4,2)
}

TEST_CASE("honest majority is enforced") {
    ChaChaRng rng(4);
    CHECK_THROWS_AS(cnf_share(vec(f5, {1}), 4, 2, f5, rng), MajorityViolation);
    CHECK_THROWS_AS(cnf_share(vec(f5, {1}), 2, 1, f5, rng), MajorityViolation);
}

TEST_CASE("open round trips and accepts any p-m views") {
    ChaChaRng rng(5);
    ScalarVec secret = vec(f5, {4, 0, 3});
    for (auto [p, m] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {5, 2}, {4, 1}}) {
        auto views = cnf_share(secret, p, m, f5, rng);
        CHECK(cnf_open(views, f5) == secret);

        // every subset of p-m views covers all components
        unsigned take = p - m;
        std::vector<unsigned> pick(take);
        for (unsigned i = 0; i < take; ++i) pick[i] = i;
        for (;;) {
            std::vector<CnfPartyView> some;
            for (unsigned i : pick) some.push_back(views[i]);
            CHECK(cnf_open(some, f5) == secret);
            int k = static_cast<int>(take) - 1;
            while (k >= 0 && pick[k] == p - take + k) --k;
            if (k < 0) break;
            ++pick[k];
            for (unsigned i = k + 1; i < take; ++i) pick[i] = pick[i - 1] + 1;
        }
    }
}

TEST_CASE("open detects missing and inconsistent shares") {
    ChaChaRng rng(6);
    auto views = cnf_share(vec(f5, {2}), 3, 1, f5, rng);
    // a single view misses the components containing its own index
    CHECK_THROWS_AS(cnf_open({views[0]}, f5), IncompleteShares);

    // tamper with a replica of v_{2} held by party 0 (party 1 holds it too)
    auto tampered = std::make_shared<ScalarVec>(*views[0].components[1]);
    (*tampered)[0] = f5.add((*tampered)[0], f5.one());
    views[0].components[1] = tampered;
    CHECK_THROWS_AS(cnf_open(views, f5), InconsistentShares);
}

TEST_CASE("pair assignment follows the smallest excluded party") {
    // p=3, m=1: pair ({0},{1}) -> party 2; pair ({1},{2}) -> party 0
    CHECK(assigned_party(0b001 | 0b010) == 2);
    CHECK(assigned_party(0b010 | 0b100) == 0);
    // collapse: subset {0} -> party 1
    CHECK(assigned_party(0b001) == 1);
}

TEST_CASE("every pair has an assignee for all honest-majority (p, m) up to 6") {
    for (unsigned p = 1; p <= 6; ++p) {
        for (unsigned m = 0; 2 * m < p; ++m) {
            auto masks = subsets_lex(p, m);
            for (uint32_t a : masks)
                for (uint32_t b : masks) {
                    unsigned assignee = assigned_party(a | b);
                    CHECK(assignee < p);
                    CHECK((((a | b) >> assignee) & 1) == 0);
                }
        }
    }
}

TEST_CASE("local multiplication sums to the product (frozen example)") {
    // F_5, a=2, b=3 with p=3, m=1: shares of the product sum to 6 = 1 (mod 5)
    ChaChaRng rng(7);
    auto views_a = cnf_share(vec(f5, {2}), 3, 1, f5, rng);
    auto views_b = cnf_share(vec(f5, {3}), 3, 1, f5, rng);
    Scalar sum = f5.zero();
    for (unsigned i = 0; i < 3; ++i)
        sum = f5.add(sum, cnf_mul_local(views_a[i], 0, views_b[i], 0, f5));
    CHECK(sum == f5.from_u64(1));
}

TEST_CASE("multiplication and collapse invariants over random instances") {
    ChaChaRng rng(8);
    for (auto [p, m] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {5, 2}, {6, 2}}) {
        for (int iter = 0; iter < 50; ++iter) {
            Scalar a = rng.random_scalar(f5);
            Scalar b = rng.random_scalar(f5);
            auto views_a = cnf_share({a}, p, m, f5, rng);
            auto views_b = cnf_share({b}, p, m, f5, rng);
            Scalar mul_sum = f5.zero();
            Scalar collapse_sum = f5.zero();
            for (unsigned i = 0; i < p; ++i) {
                mul_sum = f5.add(mul_sum, cnf_mul_local(views_a[i], 0, views_b[i], 0, f5));
                collapse_sum = f5.add(collapse_sum, cnf_collapse_local(views_a[i], 0, f5));
            }
            CHECK(mul_sum == f5.mul(a, b));
            CHECK(collapse_sum == a);
        }
    }
}

TEST_CASE("multiplication by a constant all-ones sharing") {
    ChaChaRng rng(9);
    auto views_a = cnf_share(vec(f5, {4}), 3, 0, f5, rng);
    auto views_b = cnf_share(vec(f5, {1}), 3, 0, f5, rng);
    Scalar sum = f5.zero();
    for (unsigned i = 0; i < 3; ++i)
        sum = f5.add(sum, cnf_mul_local(views_a[i], 0, views_b[i], 0, f5));
    CHECK(sum == f5.from_u64(4));
    // with m=0 only party 0 contributes
    CHECK(cnf_mul_local(views_a[1], 0, views_b[1], 0, f5) == f5.zero());
}

TEST_CASE("collapse with m = 0 designates party 0") {
    ChaChaRng rng(10);
    auto views = cnf_share(vec(f5, {3}), 3, 0, f5, rng);
    CHECK(cnf_collapse_local(views[0], 0, f5) == f5.from_u64(3));
    CHECK(cnf_collapse_local(views[1], 0, f5) == f5.zero());
    CHECK(cnf_collapse_local(views[2], 0, f5) == f5.zero());
}

TEST_CASE("parameter mismatches are rejected") {
    ChaChaRng rng(11);
    auto views_31 = cnf_share(vec(f5, {1}), 3, 1, f5, rng);
    auto views_51 = cnf_share(vec(f5, {1}), 5, 1, f5, rng);
    CHECK_THROWS_AS(cnf_mul_local(views_31[0], 0, views_51[0], 0, f5), ParameterMismatch);
    CHECK_THROWS_AS(cnf_mul_local(views_31[0], 0, views_31[1], 0, f5), ParameterMismatch);
    CHECK_THROWS_AS(cnf_mul_local(views_31[0], 1, views_31[0], 0, f5), DomainError);
}

TEST_CASE("sharing-layer privacy: single views are secret independent (exhaustive)") {
    // p=3, m=1 over F_5, length-1 secrets: enumerate all free components
    // (two of them) and compare the exact per-party view distributions for
    // two different secrets.
    auto tally = [](uint64_t secret) {
        std::array<std::map<std::vector<uint64_t>, unsigned>, 3> dist;
        for (uint64_t idx = 0; idx < 25; ++idx) {
            DigitRng rng(index_digits(idx, 5, 2));
            auto views = cnf_share({f5.from_u64(secret)}, 3, 1, f5, rng);
            for (unsigned i = 0; i < 3; ++i) {
                std::vector<uint64_t> key;
                for (const auto& comp : views[i].components)
                    key.push_back((*comp)[0].value().to_u64());
                dist[i][key]++;
            }
        }
        return dist;
    };
    auto d1 = tally(1);
    auto d3 = tally(3);
    for (unsigned i = 0; i < 3; ++i) CHECK(d1[i] == d3[i]);
}

TEST_CASE("prss expansion reproduces the shared secret") {
    ChaChaRng rng(12);
    ScalarVec secret = vec(f5, {1, 4, 2, 0});
    for (auto [p, m] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {5, 2}, {3, 0}}) {
        CnfSharing sharing = cnf_share_components(secret, p, m, f5, rng);
        auto compressed = prss_compress(sharing, f5, rng);
        std::vector<CnfPartyView> expanded;
        for (const auto& view : compressed) expanded.push_back(prss_expand(view, f5));
        CHECK(cnf_open(expanded, f5) == secret);
    }
}

TEST_CASE("prss payload accounting for p=5, m=2") {
    // C(5,2) = 10 subsets: 9 seeds plus one explicit length-n vector.
    ChaChaRng rng(13);
    const size_t n = 7;
    ScalarVec secret(n, f5.from_u64(2));
    CnfSharing sharing = cnf_share_components(secret, 5, 2, f5, rng);
    auto compressed = prss_compress(sharing, f5, rng);

    std::map<uint32_t, const PrssPayload*> payloads;
    for (const auto& view : compressed)
        for (size_t t = 0; t < view.subset_masks.size(); ++t)
            payloads[view.subset_masks[t]] = &view.payloads[t];
    REQUIRE(payloads.size() == 10);

    size_t seeds = 0, explicits = 0;
    for (const auto& [mask, payload] : payloads) {
        if (payload->is_explicit()) {
            ++explicits;
            CHECK(payload->explicit_vec->size() == n);
            CHECK(mask == subsets_lex(5, 2).back());  // T0 is the last subset
        } else {
            ++seeds;
        }
    }
    CHECK(seeds == 9);
    CHECK(explicits == 1);
}

TEST_CASE("prss on a length-1 vector still opens correctly") {
    ChaChaRng rng(14);
    CnfSharing sharing = cnf_share_components(vec(f5, {3}), 3, 1, f5, rng);
    auto compressed = prss_compress(sharing, f5, rng);
    std::vector<CnfPartyView> expanded;
    for (const auto& view : compressed) expanded.push_back(prss_expand(view, f5));
    CHECK(cnf_open(expanded, f5) == vec(f5, {3}));
}

TEST_CASE("unknown prg version is rejected") {
    ChaChaRng rng(15);
    CnfSharing sharing = cnf_share_components(vec(f5, {3}), 3, 1, f5, rng);
    auto compressed = prss_compress(sharing, f5, rng);
    compressed[0].prg_version = 9;
    CHECK_THROWS_AS(prss_expand(compressed[0], f5), DecodeError);
}

TEST_CASE("prss expansions agree across parties on shared subsets") {
    ChaChaRng rng(16);
    ScalarVec secret = vec(f5, {0, 1, 2});
    CnfSharing sharing = cnf_share_components(secret, 5, 2, f5, rng);
    auto compressed = prss_compress(sharing, f5, rng);
    std::map<uint32_t, ScalarVec> seen;
    for (const auto& view : compressed) {
        CnfPartyView expanded = prss_expand(view, f5);
        for (size_t t = 0; t < expanded.subset_masks.size(); ++t) {
            auto [it, inserted] = seen.emplace(expanded.subset_masks[t], *expanded.components[t]);
            if (!inserted) CHECK(it->second == *expanded.components[t]);
        }
    }
    CHECK(seen.size() == 10);
}
