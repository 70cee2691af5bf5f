#include "mpfss/keyfile.hpp"

#include <openssl/evp.h>

#include <cstring>

namespace mpfss {

namespace {

constexpr char kKeyMagic[5] = {'M', 'P', 'F', 'S', 'S'};
constexpr char kShareMagic[5] = {'M', 'P', 'F', 'S', 'H'};
constexpr uint8_t kFormatVersion = 1;
constexpr uint8_t kViewPlain = 0;
constexpr uint8_t kViewPrss = 1;
constexpr uint8_t kPayloadSeed = 0;
constexpr uint8_t kPayloadExplicit = 1;

struct Writer {
    std::vector<uint8_t> buf;

    void bytes(std::span<const uint8_t> b) { buf.insert(buf.end(), b.begin(), b.end()); }
    void u8(uint8_t v) { buf.push_back(v); }
    void u32(uint32_t v) {
        for (int i = 0; i < 4; i++) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; i++) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
};

struct Reader {
    std::span<const uint8_t> data;
    size_t pos = 0;

    std::span<const uint8_t> bytes(size_t n) {
        if (pos + n > data.size()) throw DecodeError("truncated key material");
        auto out = data.subspan(pos, n);
        pos += n;
        return out;
    }
    uint8_t u8() { return bytes(1)[0]; }
    uint32_t u32() {
        auto b = bytes(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; i++) v |= uint32_t(b[i]) << (8 * i);
        return v;
    }
    uint64_t u64() {
        auto b = bytes(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= uint64_t(b[i]) << (8 * i);
        return v;
    }
    bool done() const { return pos == data.size(); }
};

void write_header(Writer& w, const KeyFileHeader& h) {
    w.bytes(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(kKeyMagic), 5));
    w.u8(h.version);
    w.u8(static_cast<uint8_t>(h.group_id));
    w.u8(static_cast<uint8_t>(h.scheme));
    w.u8(h.p);
    w.u8(h.m);
    w.u8(h.party);
    w.u8(h.prss ? 1 : 0);
    w.u8(static_cast<uint8_t>(h.encoding));
    w.u64(h.domain);
    w.u64(h.codec_param);
    w.u32(h.nu);
}

KeyFileHeader read_header(Reader& r, const char magic[5]) {
    auto m = r.bytes(5);
    if (std::memcmp(m.data(), magic, 5) != 0) throw DecodeError("bad file magic");
    KeyFileHeader h;
    h.version = r.u8();
    if (h.version != kFormatVersion) throw DecodeError("unsupported format version");
    h.group_id = static_cast<GroupId>(r.u8());
    h.scheme = static_cast<SchemeKind>(r.u8());
    h.p = r.u8();
    h.m = r.u8();
    h.party = r.u8();
    h.prss = r.u8() != 0;
    h.encoding = static_cast<EncodingKind>(r.u8());
    h.domain = r.u64();
    h.codec_param = r.u64();
    h.nu = r.u32();
    return h;
}

void write_view_plain(Writer& w, const CnfPartyView& view, const ScalarField& field) {
    w.u8(kViewPlain);
    w.u32(static_cast<uint32_t>(view.components.size()));
    w.u32(static_cast<uint32_t>(view.length));
    for (const auto& comp : view.components)
        for (const Scalar& s : *comp) w.bytes(field.to_bytes(s));
}

void write_view_prss(Writer& w, const PrssCompressedView& view, const ScalarField& field) {
    w.u8(kViewPrss);
    w.u8(view.prg_version);
    w.u32(static_cast<uint32_t>(view.payloads.size()));
    w.u32(static_cast<uint32_t>(view.length));
    for (const auto& payload : view.payloads) {
        if (payload.is_explicit()) {
            w.u8(kPayloadExplicit);
            for (const Scalar& s : *payload.explicit_vec) w.bytes(field.to_bytes(s));
        } else {
            w.u8(kPayloadSeed);
            w.bytes(payload.seed);
        }
    }
}

// Reads one view; fills exactly one of plain / prss.
void read_view(Reader& r, unsigned p, unsigned m, unsigned party, const ScalarField& field,
               CnfPartyView& out, std::optional<PrssCompressedView>& out_prss) {
    uint8_t tag = r.u8();
    auto masks = subsets_excluding(p, m, party);
    if (tag == kViewPlain) {
        uint32_t count = r.u32();
        uint32_t length = r.u32();
        if (count != masks.size()) throw DecodeError("component count mismatch");
        out.p = static_cast<uint8_t>(p);
        out.m = static_cast<uint8_t>(m);
        out.party = static_cast<uint8_t>(party);
        out.length = length;
        out.subset_masks = masks;
        for (uint32_t t = 0; t < count; ++t) {
            auto comp = std::make_shared<ScalarVec>();
            comp->reserve(length);
            for (uint32_t j = 0; j < length; ++j)
                comp->push_back(field.from_bytes(r.bytes(field.byte_width())));
            out.components.push_back(std::move(comp));
        }
        out_prss.reset();
    } else if (tag == kViewPrss) {
        PrssCompressedView view;
        view.prg_version = r.u8();
        if (view.prg_version != kPrgVersion) throw DecodeError("unknown PRG version tag");
        uint32_t count = r.u32();
        uint32_t length = r.u32();
        if (count != masks.size()) throw DecodeError("component count mismatch");
        view.p = static_cast<uint8_t>(p);
        view.m = static_cast<uint8_t>(m);
        view.party = static_cast<uint8_t>(party);
        view.length = length;
        view.subset_masks = masks;
        for (uint32_t t = 0; t < count; ++t) {
            PrssPayload payload;
            uint8_t ptag = r.u8();
            if (ptag == kPayloadSeed) {
                auto seed = r.bytes(kPrssSeedBytes);
                std::copy(seed.begin(), seed.end(), payload.seed.begin());
            } else if (ptag == kPayloadExplicit) {
                auto vec = std::make_shared<ScalarVec>();
                vec->reserve(length);
                for (uint32_t j = 0; j < length; ++j)
                    vec->push_back(field.from_bytes(r.bytes(field.byte_width())));
                payload.explicit_vec = std::move(vec);
            } else {
                throw DecodeError("unknown PRSS payload tag");
            }
            view.payloads.push_back(std::move(payload));
        }
        out = prss_expand(view, field);
        out_prss = std::move(view);
    } else {
        throw DecodeError("unknown view tag");
    }
}

void write_subdpf_body(Writer& w, const SubDpfKey& key, const ScalarField& field, bool prss) {
    w.u64(key.grid.domain);
    w.u32(key.grid.width);
    if (prss) {
        if (!key.prss_a || !key.prss_b) throw ParameterMismatch("key lacks PRSS payloads");
        write_view_prss(w, *key.prss_a, field);
        write_view_prss(w, *key.prss_b, field);
    } else {
        write_view_plain(w, key.view_a, field);
        write_view_plain(w, key.view_b, field);
    }
}

void write_subdcf_body(Writer& w, const SubDcfKey& key, const ScalarField& field, bool prss) {
    w.u64(key.grid.domain);
    w.u32(key.grid.width);
    if (prss) {
        if (!key.prss_a || !key.prss_b || !key.prss_c)
            throw ParameterMismatch("key lacks PRSS payloads");
        write_view_prss(w, *key.prss_a, field);
        write_view_prss(w, *key.prss_b, field);
        write_view_prss(w, *key.prss_c, field);
    } else {
        write_view_plain(w, key.view_a, field);
        write_view_plain(w, key.view_b, field);
        write_view_plain(w, key.view_c, field);
    }
}

SubDpfKey read_subdpf_body(Reader& r, unsigned p, unsigned m, unsigned party,
                           const ScalarField& field) {
    SubDpfKey key;
    key.party = static_cast<uint8_t>(party);
    key.grid.domain = r.u64();
    key.grid.width = r.u32();
    if (key.grid.width == 0 || SubGrid::for_domain(key.grid.domain).width != key.grid.width)
        throw DecodeError("inconsistent sub-grid dimensions");
    read_view(r, p, m, party, field, key.view_a, key.prss_a);
    read_view(r, p, m, party, field, key.view_b, key.prss_b);
    if (!r.done()) throw DecodeError("trailing bytes in sub-key section");
    return key;
}

SubDcfKey read_subdcf_body(Reader& r, unsigned p, unsigned m, unsigned party,
                           const ScalarField& field) {
    SubDcfKey key;
    key.party = static_cast<uint8_t>(party);
    key.grid.domain = r.u64();
    key.grid.width = r.u32();
    if (key.grid.width == 0 || SubGrid::for_domain(key.grid.domain).width != key.grid.width)
        throw DecodeError("inconsistent sub-grid dimensions");
    read_view(r, p, m, party, field, key.view_a, key.prss_a);
    read_view(r, p, m, party, field, key.view_b, key.prss_b);
    read_view(r, p, m, party, field, key.view_c, key.prss_c);
    if (!r.done()) throw DecodeError("trailing bytes in sub-key section");
    return key;
}

void write_section(Writer& w, const std::vector<uint8_t>& body) {
    w.u64(body.size());
    w.bytes(body);
}

Reader read_section(Reader& r) {
    uint64_t len = r.u64();
    return Reader{r.bytes(len)};
}

std::vector<uint8_t> corrections_bytes(const Group& group,
                                       const std::vector<CorrectionPair>& corrections) {
    Writer w;
    w.u32(static_cast<uint32_t>(corrections.size()));
    for (const auto& pair : corrections) {
        w.bytes(group.serialize(pair.g));
        w.bytes(group.serialize(pair.h));
    }
    return std::move(w.buf);
}

std::vector<CorrectionPair> read_corrections(Reader& r, const Group& group) {
    uint32_t count = r.u32();
    std::vector<CorrectionPair> out;
    out.reserve(count);
    for (uint32_t i = 0; i < count; ++i) {
        CorrectionPair pair;
        pair.g = group.deserialize(r.bytes(group.element_bytes()));
        pair.h = group.deserialize(r.bytes(group.element_bytes()));
        out.push_back(std::move(pair));
    }
    if (!r.done()) throw DecodeError("trailing bytes in corrections section");
    return out;
}

std::array<uint8_t, 32> sha256(std::span<const uint8_t> data) {
    std::array<uint8_t, 32> out;
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != 32)
        throw Error("SHA-256 failed");
    return out;
}

}  // namespace

std::vector<uint8_t> serialize_key(const DpfKey& key, EncodingKind encoding, uint64_t codec_param) {
    const ScalarField& field = key.group->scalar_field();
    Writer w;
    KeyFileHeader h;
    h.group_id = key.group->id();
    h.scheme = SchemeKind::dpf;
    h.p = key.p;
    h.m = key.m;
    h.party = key.party;
    h.prss = key.prss;
    h.encoding = encoding;
    h.domain = key.domain;
    h.codec_param = codec_param;
    h.nu = key.nu;
    write_header(w, h);

    Writer body_a, body_b;
    write_subdpf_body(body_a, key.key_a, field, key.prss);
    write_subdpf_body(body_b, key.key_b, field, key.prss);
    write_section(w, body_a.buf);
    write_section(w, body_b.buf);
    write_section(w, corrections_bytes(*key.group, key.corrections));
    return std::move(w.buf);
}

std::vector<uint8_t> serialize_key(const DcfKey& key, EncodingKind encoding, uint64_t codec_param) {
    const ScalarField& field = key.group->scalar_field();
    Writer w;
    KeyFileHeader h;
    h.group_id = key.group->id();
    h.scheme = SchemeKind::dcf;
    h.p = key.p;
    h.m = key.m;
    h.party = key.party;
    h.prss = key.prss;
    h.encoding = encoding;
    h.domain = key.domain;
    h.codec_param = codec_param;
    h.nu = key.nu;
    write_header(w, h);

    Writer body_a, body_b, body_c;
    write_subdpf_body(body_a, key.key_a, field, key.prss);
    write_subdpf_body(body_b, key.key_b, field, key.prss);
    write_subdcf_body(body_c, key.key_c, field, key.prss);
    write_section(w, body_a.buf);
    write_section(w, body_b.buf);
    write_section(w, body_c.buf);
    write_section(w, corrections_bytes(*key.group, key.corrections));
    write_section(w, key.group->serialize(key.u));
    return std::move(w.buf);
}

std::vector<uint8_t> serialize_subdpf_key(const SubDpfKey& key, unsigned p, unsigned m,
                                          GroupId group_id, bool prss) {
    const ScalarField& field = make_group(group_id)->scalar_field();
    Writer w;
    KeyFileHeader h;
    h.group_id = group_id;
    h.scheme = SchemeKind::subdpf;
    h.p = static_cast<uint8_t>(p);
    h.m = static_cast<uint8_t>(m);
    h.party = key.party;
    h.prss = prss;
    h.domain = key.grid.domain;
    write_header(w, h);
    Writer body;
    write_subdpf_body(body, key, field, prss);
    write_section(w, body.buf);
    return std::move(w.buf);
}

std::vector<uint8_t> serialize_subdcf_key(const SubDcfKey& key, unsigned p, unsigned m,
                                          GroupId group_id, bool prss) {
    const ScalarField& field = make_group(group_id)->scalar_field();
    Writer w;
    KeyFileHeader h;
    h.group_id = group_id;
    h.scheme = SchemeKind::subdcf;
    h.p = static_cast<uint8_t>(p);
    h.m = static_cast<uint8_t>(m);
    h.party = key.party;
    h.prss = prss;
    h.domain = key.grid.domain;
    write_header(w, h);
    Writer body;
    write_subdcf_body(body, key, field, prss);
    write_section(w, body.buf);
    return std::move(w.buf);
}

KeyFile parse_key(std::span<const uint8_t> bytes) {
    Reader r{bytes};
    KeyFileHeader h = read_header(r, kKeyMagic);
    auto group = make_group(h.group_id);
    const ScalarField& field = group->scalar_field();

    KeyFile out;
    out.header = h;
    switch (h.scheme) {
        case SchemeKind::dpf: {
            DpfKey key;
            key.group = group;
            key.domain = h.domain;
            key.nu = h.nu;
            key.p = h.p;
            key.m = h.m;
            key.party = h.party;
            key.prss = h.prss;
            Reader a = read_section(r);
            key.key_a = read_subdpf_body(a, h.p, h.m, h.party, field);
            Reader b = read_section(r);
            key.key_b = read_subdpf_body(b, h.p, h.m, h.party, field);
            Reader c = read_section(r);
            key.corrections = read_corrections(c, *group);
            if (key.corrections.size() != h.nu) throw DecodeError("correction count mismatch");
            out.key = std::move(key);
            break;
        }
        case SchemeKind::dcf: {
            DcfKey key;
            key.group = group;
            key.domain = h.domain;
            key.nu = h.nu;
            key.p = h.p;
            key.m = h.m;
            key.party = h.party;
            key.prss = h.prss;
            Reader a = read_section(r);
            key.key_a = read_subdpf_body(a, h.p, h.m, h.party, field);
            Reader b = read_section(r);
            key.key_b = read_subdpf_body(b, h.p, h.m, h.party, field);
            Reader c = read_section(r);
            key.key_c = read_subdcf_body(c, h.p, h.m, h.party, field);
            Reader corr = read_section(r);
            key.corrections = read_corrections(corr, *group);
            if (key.corrections.size() != h.nu) throw DecodeError("correction count mismatch");
            Reader us = read_section(r);
            key.u = group->deserialize(us.bytes(group->element_bytes()));
            out.key = std::move(key);
            break;
        }
        case SchemeKind::subdpf: {
            Reader s = read_section(r);
            out.key = read_subdpf_body(s, h.p, h.m, h.party, field);
            break;
        }
        case SchemeKind::subdcf: {
            Reader s = read_section(r);
            out.key = read_subdcf_body(s, h.p, h.m, h.party, field);
            break;
        }
        default:
            throw DecodeError("unknown scheme tag");
    }
    if (!r.done()) throw DecodeError("trailing bytes after key material");
    return out;
}

std::array<uint8_t, 32> invocation_digest(const DpfKey& key) {
    return sha256(corrections_bytes(*key.group, key.corrections));
}

std::array<uint8_t, 32> invocation_digest(const DcfKey& key) {
    auto bytes = corrections_bytes(*key.group, key.corrections);
    auto u = key.group->serialize(key.u);
    bytes.insert(bytes.end(), u.begin(), u.end());
    return sha256(bytes);
}

std::vector<uint8_t> serialize_shares(const ShareFile& shares, const Group& group) {
    if (shares.points.size() != shares.shares.size())
        throw ParameterMismatch("point/share count mismatch");
    Writer w;
    w.bytes(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(kShareMagic), 5));
    w.u8(shares.header.version);
    w.u8(static_cast<uint8_t>(shares.header.group_id));
    w.u8(static_cast<uint8_t>(shares.header.scheme));
    w.u8(shares.header.p);
    w.u8(shares.header.m);
    w.u8(shares.header.party);
    w.u8(shares.header.prss ? 1 : 0);
    w.u8(static_cast<uint8_t>(shares.header.encoding));
    w.u64(shares.header.domain);
    w.u64(shares.header.codec_param);
    w.u32(shares.header.nu);
    w.bytes(shares.invocation);
    w.u64(shares.points.size());
    for (size_t i = 0; i < shares.points.size(); ++i) {
        w.u64(shares.points[i]);
        w.bytes(group.serialize(shares.shares[i]));
    }
    return std::move(w.buf);
}

ShareFile parse_shares(std::span<const uint8_t> bytes) {
    Reader r{bytes};
    ShareFile out;
    out.header = read_header(r, kShareMagic);
    auto group = make_group(out.header.group_id);
    auto digest = r.bytes(32);
    std::copy(digest.begin(), digest.end(), out.invocation.begin());
    uint64_t count = r.u64();
    out.points.reserve(count);
    out.shares.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        out.points.push_back(r.u64());
        out.shares.push_back(group->deserialize(r.bytes(group->element_bytes())));
    }
    if (!r.done()) throw DecodeError("trailing bytes after shares");
    return out;
}

}  // namespace mpfss
