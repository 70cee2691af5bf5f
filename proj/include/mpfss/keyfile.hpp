#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mpfss/ddhfss.hpp"

namespace mpfss {

// Versioned binary key format. Layout (integers little-endian):
//
//   magic "MPFSS" | version u8 | group_id u8 | scheme u8 | p u8 | m u8 |
//   party u8 | prss u8 | encoding u8 | N u64 | codec_param u64 | nu u32
//
// followed by length-prefixed sections. DPF: sub-key a, sub-key b,
// correction points. DCF: sub-key a, b, c, correction points, u.
// Standalone sub-scheme keys (the information-theoretic scheme measured in
// the benchmark) carry a single sub-key section. Sub-key sections list CNF
// components in canonical subset order with fixed-width scalars; PRSS
// sections store per-subset seeds and the one explicit correction vector.

enum class SchemeKind : uint8_t {
    dpf = 1,
    dcf = 2,
    subdpf = 3,
    subdcf = 4,
};

enum class EncodingKind : uint8_t {
    none = 0,
    exponent = 1,
    point = 2,
};

struct KeyFileHeader {
    uint8_t version = 1;
    GroupId group_id = GroupId::p256;
    SchemeKind scheme = SchemeKind::dpf;
    uint8_t p = 0;
    uint8_t m = 0;
    uint8_t party = 0;
    bool prss = false;
    EncodingKind encoding = EncodingKind::none;
    uint64_t domain = 0;
    uint64_t codec_param = 0;
    uint32_t nu = 0;
};

struct KeyFile {
    KeyFileHeader header;
    std::variant<DpfKey, DcfKey, SubDpfKey, SubDcfKey> key;
};

std::vector<uint8_t> serialize_key(const DpfKey& key, EncodingKind encoding, uint64_t codec_param);
std::vector<uint8_t> serialize_key(const DcfKey& key, EncodingKind encoding, uint64_t codec_param);
std::vector<uint8_t> serialize_subdpf_key(const SubDpfKey& key, unsigned p, unsigned m,
                                          GroupId group_id, bool prss);
std::vector<uint8_t> serialize_subdcf_key(const SubDcfKey& key, unsigned p, unsigned m,
                                          GroupId group_id, bool prss);

KeyFile parse_key(std::span<const uint8_t> bytes);

// 32-byte digest binding shares to one Gen invocation: SHA-256 over the
// correction points (and u), which are random per invocation and identical
// across parties.
std::array<uint8_t, 32> invocation_digest(const DpfKey& key);
std::array<uint8_t, 32> invocation_digest(const DcfKey& key);

// Share files: magic "MPFSH", the key header fields, the invocation digest,
// then (x, element) entries.
struct ShareFile {
    KeyFileHeader header;
    std::array<uint8_t, 32> invocation{};
    std::vector<uint64_t> points;
    std::vector<GroupElement> shares;
};

std::vector<uint8_t> serialize_shares(const ShareFile& shares, const Group& group);
ShareFile parse_shares(std::span<const uint8_t> bytes);

}  // namespace mpfss
