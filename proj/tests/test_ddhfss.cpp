#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mpfss/encoding.hpp"
#include "mpfss/keyfile.hpp"

using namespace mpfss;

namespace {

template <typename Key>
GroupElement decode_at(const std::vector<Key>& keys, uint64_t x) {
    const Group& group = *keys.front().group;
    std::vector<GroupElement> shares;
    for (const auto& key : keys) {
        if constexpr (std::is_same_v<Key, DpfKey>) {
            shares.push_back(dpf_eval(key, x));
        } else {
            shares.push_back(dcf_eval(key, x));
        }
    }
    return ddh_decode(shares, group);
}

}  // namespace

TEST_CASE("grid positions") {
    CHECK(grid_pos(5, 2).row == 2);
    CHECK(grid_pos(5, 2).col == 1);
    CHECK(grid_pos(0, 2).row == 0);
    CHECK(grid_pos(0, 2).col == 0);
    CHECK_THROWS_AS(grid_pos(8, 2), DomainError);

    CHECK(cube_grid_width(8) == 2);
    CHECK(cube_grid_width(9) == 3);
    CHECK(cube_grid_width(1000) == 10);
    CHECK(cube_grid_width(1001) == 11);
    CHECK(cube_grid_width(1) == 1);

    // order preservation, exhaustively for nu=3 (N=27)
    for (uint64_t x = 0; x < 27; ++x)
        for (uint64_t y = 0; y < 27; ++y) {
            GridPos a = grid_pos(x, 3), b = grid_pos(y, 3);
            bool grid_le = a.row < b.row || (a.row == b.row && a.col <= b.col);
            CHECK(grid_le == (x <= y));
        }
}

TEST_CASE("DPF key structure (N=8, alpha=5)") {
    auto group = make_group(GroupId::tiny_ec);
    ChaChaRng rng(1);
    ExponentCodec codec(group, 1 << 10);
    auto keys = dpf_gen(8, 5, codec.encode(7), 3, 1, group, rng);
    REQUIRE(keys.size() == 3);
    for (const auto& key : keys) {
        CHECK(key.nu == 2);
        CHECK(key.corrections.size() == 2);           // one pair per column
        CHECK(key.key_a.grid.domain == 4);            // nu^2 rows domain
        CHECK(key.key_a.view_a.length == 2);          // sub-grid width nu
    }
    // sub-keys target row gamma* = 2 of the nu^2 = 4 sub-domain; inside the
    // sub-scheme's own 2x2 grid that is sub-row 1, so k_b's point table
    // opens to [0, 1].
    const ScalarField& f = group->scalar_field();
    std::vector<CnfPartyView> views_b;
    for (const auto& key : keys) views_b.push_back(key.key_b.view_a);
    CHECK(cnf_open(views_b, f) == ScalarVec{f.zero(), f.one()});
}

TEST_CASE("DPF correctness on the small curve, all alpha (N=27 and N=30)") {
    auto group = make_group(GroupId::tiny_ec);
    ExponentCodec codec(group, 1 << 10);
    ChaChaRng rng(2);
    for (uint64_t domain : {27ull, 30ull}) {
        for (uint64_t alpha = 0; alpha < domain; ++alpha) {
            uint64_t beta = 1 + alpha % 900;
            auto keys = dpf_gen(domain, alpha, codec.encode(beta), 3, 1, group, rng);
            for (uint64_t x = 0; x < domain; ++x) {
                GroupElement out = decode_at(keys, x);
                CHECK(codec.decode(out) == (x == alpha ? beta : 0));
            }
        }
    }
}

TEST_CASE("DPF decode case structure") {
    auto group = make_group(GroupId::tiny_ec);
    const ScalarField& f = group->scalar_field();
    ChaChaRng rng(3);
    ExponentCodec codec(group, 1 << 10);
    uint64_t domain = 27, alpha = 14;  // nu=3: (row 4, col 2)
    GroupElement g_beta = codec.encode(9);
    auto keys = dpf_gen(domain, alpha, g_beta, 5, 2, group, rng);

    // gamma' != gamma*: product is the identity
    CHECK(group->is_identity(decode_at(keys, 2)));
    // gamma' = gamma*, delta' != delta*: identity via the h^r * g kernel
    CHECK(group->is_identity(decode_at(keys, 12)));
    CHECK(group->is_identity(decode_at(keys, 13)));
    // x = alpha: g_beta
    CHECK(group->equal(decode_at(keys, 14), g_beta));

    // share sums: sub-keys share r and 1 on the target row
    std::vector<Scalar> sa, sb;
    for (const auto& key : keys) {
        sa.push_back(subdpf_eval(key.key_a, 4, f));
        sb.push_back(subdpf_eval(key.key_b, 4, f));
    }
    CHECK(additive_decode(sb, f) == f.one());
    CHECK(!additive_decode(sa, f).is_zero());
}

TEST_CASE("DPF with identity g_beta decodes to zero everywhere") {
    auto group = make_group(GroupId::tiny_ec);
    ChaChaRng rng(4);
    auto keys = dpf_gen(16, 7, group->identity(), 3, 1, group, rng);
    for (uint64_t x = 0; x < 16; ++x) CHECK(group->is_identity(decode_at(keys, x)));
}

TEST_CASE("correction points are distinct, consistent, and shared across parties") {
    auto group = make_group(GroupId::tiny_ec);
    const ScalarField& f = group->scalar_field();
    ChaChaRng rng(5);
    ExponentCodec codec(group, 1 << 10);
    auto keys = dpf_gen(64, 33, codec.encode(5), 3, 1, group, rng);

    std::set<std::vector<uint8_t>> gs;
    for (const auto& pair : keys[0].corrections) {
        CHECK(!group->is_identity(pair.g));
        gs.insert(group->serialize(pair.g));
    }
    CHECK(gs.size() == keys[0].nu);

    for (unsigned i = 1; i < keys.size(); ++i) {
        REQUIRE(keys[i].corrections.size() == keys[0].corrections.size());
        for (size_t d = 0; d < keys[0].corrections.size(); ++d) {
            CHECK(group->serialize(keys[i].corrections[d].g) ==
                  group->serialize(keys[0].corrections[d].g));
            CHECK(group->serialize(keys[i].corrections[d].h) ==
                  group->serialize(keys[0].corrections[d].h));
        }
    }
    (void)f;
}

TEST_CASE("DPF domain validation") {
    auto group = make_group(GroupId::tiny_ec);
    ChaChaRng rng(6);
    ExponentCodec codec(group, 1 << 10);
    CHECK_THROWS_AS(dpf_gen(16, 16, codec.encode(1), 3, 1, group, rng), DomainError);
    CHECK_THROWS_AS(dpf_gen(16, 1, codec.encode(1), 4, 2, group, rng), MajorityViolation);
    auto keys = dpf_gen(16, 1, codec.encode(1), 3, 1, group, rng);
    CHECK_THROWS_AS(dpf_eval(keys[0], 16), DomainError);
}

TEST_CASE("DCF correctness on the small curve, all alpha (N=27)") {
    auto group = make_group(GroupId::tiny_ec);
    ExponentCodec codec(group, 1 << 10);
    ChaChaRng rng(7);
    const uint64_t domain = 27;
    for (uint64_t alpha = 0; alpha < domain; ++alpha) {
        uint64_t beta = 1 + alpha;
        auto keys = dcf_gen(domain, alpha, codec.encode(beta), 3, 1, group, rng);
        for (uint64_t x = 0; x < domain; ++x) {
            CHECK(codec.decode(decode_at(keys, x)) == (x <= alpha ? beta : 0));
        }
    }
}

TEST_CASE("DCF case structure") {
    auto group = make_group(GroupId::tiny_ec);
    const ScalarField& f = group->scalar_field();
    ChaChaRng rng(8);
    ExponentCodec codec(group, 1 << 10);
    uint64_t domain = 27, alpha = 13;  // nu=3: (row 4, col 1)
    GroupElement g_beta = codec.encode(3);
    auto keys = dcf_gen(domain, alpha, g_beta, 5, 2, group, rng);

    // gamma' < gamma*: the u^s term supplies g_beta
    CHECK(group->equal(decode_at(keys, 5), g_beta));
    std::vector<Scalar> sc;
    for (const auto& key : keys) sc.push_back(subdcf_eval(key.key_c, 1, f));
    Scalar s_sum = additive_decode(sc, f);
    GroupElement u_pow = group->exp(keys[0].u, s_sum);
    CHECK(group->equal(u_pow, g_beta));

    // gamma' = gamma*, delta' <= delta*: the h-term supplies g_beta, u-term idle
    std::vector<Scalar> sc_star;
    for (const auto& key : keys) sc_star.push_back(subdcf_eval(key.key_c, 4, f));
    CHECK(additive_decode(sc_star, f) == f.zero());
    CHECK(group->equal(decode_at(keys, 12), g_beta));
    CHECK(group->equal(decode_at(keys, 13), g_beta));

    // gamma' > gamma* or col beyond delta*: identity
    CHECK(group->is_identity(decode_at(keys, 14)));
    CHECK(group->is_identity(decode_at(keys, 20)));
}

TEST_CASE("DCF edge thresholds") {
    auto group = make_group(GroupId::tiny_ec);
    ChaChaRng rng(9);
    ExponentCodec codec(group, 1 << 10);

    // alpha = N-1: constant beta over the domain
    auto full = dcf_gen(27, 26, codec.encode(4), 3, 1, group, rng);
    for (uint64_t x = 0; x < 27; ++x) CHECK(codec.decode(decode_at(full, x)) == 4);

    // alpha = 0 hits the gamma* = 0 sentinel path of the sub-DCF
    auto lone = dcf_gen(27, 0, codec.encode(2), 3, 1, group, rng);
    CHECK(codec.decode(decode_at(lone, 0)) == 2);
    for (uint64_t x = 1; x < 27; ++x) CHECK(codec.decode(decode_at(lone, x)) == 0);
}

TEST_CASE("PRSS round trip preserves evaluation shares") {
    auto group = make_group(GroupId::tiny_ec);
    ChaChaRng rng(10);
    ExponentCodec codec(group, 1 << 10);
    auto keys = dpf_gen(64, 21, codec.encode(6), 5, 2, group, rng, /*prss=*/true);
    for (const auto& key : keys) {
        auto bytes = serialize_key(key, EncodingKind::exponent, 1 << 10);
        KeyFile parsed = parse_key(bytes);
        const auto& restored = std::get<DpfKey>(parsed.key);
        for (uint64_t x = 0; x < 64; x += 7)
            CHECK(group->equal(dpf_eval(restored, x), dpf_eval(key, x)));
        // byte-identical re-serialization
        CHECK(serialize_key(restored, EncodingKind::exponent, 1 << 10) == bytes);
    }
}

TEST_CASE("key files round trip for both schemes, both modes") {
    for (GroupId gid : {GroupId::tiny_ec, GroupId::p256}) {
        auto group = make_group(gid);
        ChaChaRng rng(11);
        ExponentCodec codec(group, 1 << 10);
        for (bool prss : {false, true}) {
            CAPTURE(static_cast<int>(gid));
            CAPTURE(prss);
            auto dpf_keys = dpf_gen(16, 9, codec.encode(3), 3, 1, group, rng, prss);
            auto bytes = serialize_key(dpf_keys[1], EncodingKind::exponent, 1 << 10);
            KeyFile parsed = parse_key(bytes);
            CHECK(parsed.header.scheme == SchemeKind::dpf);
            CHECK(parsed.header.party == 1);
            CHECK(parsed.header.prss == prss);
            CHECK(parsed.header.domain == 16);
            const auto& restored_dpf = std::get<DpfKey>(parsed.key);
            for (uint64_t x = 0; x < 16; ++x)
                CHECK(group->equal(dpf_eval(restored_dpf, x), dpf_eval(dpf_keys[1], x)));

            auto dcf_keys = dcf_gen(16, 9, codec.encode(3), 3, 1, group, rng, prss);
            auto dcf_bytes = serialize_key(dcf_keys[2], EncodingKind::exponent, 1 << 10);
            KeyFile dcf_parsed = parse_key(dcf_bytes);
            CHECK(dcf_parsed.header.scheme == SchemeKind::dcf);
            const auto& restored_dcf = std::get<DcfKey>(dcf_parsed.key);
            CHECK(group->equal(restored_dcf.u, dcf_keys[2].u));
            for (uint64_t x = 0; x < 16; ++x)
                CHECK(group->equal(dcf_eval(restored_dcf, x), dcf_eval(dcf_keys[2], x)));
            CHECK(serialize_key(restored_dcf, EncodingKind::exponent, 1 << 10) == dcf_bytes);
        }
    }
}

TEST_CASE("standalone sub-scheme key files round trip") {
    auto group = make_group(GroupId::p256);
    const ScalarField& f = group->scalar_field();
    ChaChaRng rng(12);
    for (bool prss : {false, true}) {
        auto keys = subdpf_gen(100, 42, f.from_u64(1), 5, 2, f, rng, prss);
        auto bytes = serialize_subdpf_key(keys[3], 5, 2, group->id(), prss);
        KeyFile parsed = parse_key(bytes);
        CHECK(parsed.header.scheme == SchemeKind::subdpf);
        const auto& restored = std::get<SubDpfKey>(parsed.key);
        for (uint64_t x = 0; x < 100; x += 9)
            CHECK(subdpf_eval(restored, x, f) == subdpf_eval(keys[3], x, f));
        CHECK(serialize_subdpf_key(restored, 5, 2, group->id(), prss) == bytes);

        auto dcf_keys = subdcf_gen(100, 42, f.from_u64(1), 5, 2, f, rng, prss);
        auto dcf_bytes = serialize_subdcf_key(dcf_keys[0], 5, 2, group->id(), prss);
        KeyFile dcf_parsed = parse_key(dcf_bytes);
        const auto& dcf_restored = std::get<SubDcfKey>(dcf_parsed.key);
        for (uint64_t x = 0; x < 100; x += 9)
            CHECK(subdcf_eval(dcf_restored, x, f) == subdcf_eval(dcf_keys[0], x, f));
    }
}

TEST_CASE("malformed key files are rejected") {
    auto group = make_group(GroupId::tiny_ec);
    ChaChaRng rng(13);
    ExponentCodec codec(group, 1 << 10);
    auto keys = dpf_gen(8, 3, codec.encode(1), 3, 1, group, rng);
    auto bytes = serialize_key(keys[0], EncodingKind::exponent, 1 << 10);

    auto truncated = bytes;
    truncated.resize(truncated.size() - 5);
    CHECK_THROWS_AS(parse_key(truncated), DecodeError);

    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(parse_key(bad_magic), DecodeError);

    auto bad_version = bytes;
    bad_version[5] = 99;
    CHECK_THROWS_AS(parse_key(bad_version), DecodeError);

    auto trailing = bytes;
    trailing.push_back(0);
    CHECK_THROWS_AS(parse_key(trailing), DecodeError);
}

TEST_CASE("u is byte-identical across parties") {
    auto group = make_group(GroupId::tiny_ec);
    ChaChaRng rng(20);
    ExponentCodec codec(group, 1 << 10);
    auto keys = dcf_gen(27, 11, codec.encode(5), 5, 2, group, rng);
    auto u0 = group->serialize(keys[0].u);
    for (const auto& key : keys) CHECK(group->serialize(key.u) == u0);
}

TEST_CASE("invocation digests match across parties and differ across runs") {
    auto group = make_group(GroupId::tiny_ec);
    ChaChaRng rng(14);
    ExponentCodec codec(group, 1 << 10);
    auto keys = dpf_gen(27, 3, codec.encode(1), 3, 1, group, rng);
    auto keys2 = dpf_gen(27, 3, codec.encode(1), 3, 1, group, rng);
    CHECK(invocation_digest(keys[0]) == invocation_digest(keys[1]));
    CHECK(invocation_digest(keys[0]) != invocation_digest(keys2[0]));
}

TEST_CASE("ddh_decode basics") {
    auto group = make_group(GroupId::tiny_ec);
    std::vector<GroupElement> ids = {group->identity(), group->identity()};
    CHECK(group->is_identity(ddh_decode(ids, *group)));
}

TEST_CASE("DPF spot check on P-256") {
    auto group = make_group(GroupId::p256);
    ExponentCodec codec(group);
    ChaChaRng rng(15);
    auto keys = dpf_gen(1000, 123, codec.encode(7), 5, 2, group, rng);
    CHECK(codec.decode(decode_at(keys, 123)) == 7);
    CHECK(codec.decode(decode_at(keys, 0)) == 0);
    CHECK(codec.decode(decode_at(keys, 999)) == 0);
    auto dcf_keys = dcf_gen(1000, 123, codec.encode(7), 5, 2, group, rng);
    CHECK(codec.decode(decode_at(dcf_keys, 0)) == 7);
    CHECK(codec.decode(decode_at(dcf_keys, 123)) == 7);
    CHECK(codec.decode(decode_at(dcf_keys, 124)) == 0);
}
