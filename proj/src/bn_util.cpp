#include "mpfss/bn_util.hpp"

#include <openssl/crypto.h>

#include <cmath>
#include <cstring>
#include <memory>

namespace mpfss {

namespace {

[[noreturn]] void bn_fail(const char* what) {
    throw Error(std::string("bignum operation failed: ") + what);
}

struct CtxHolder {
    BN_CTX* ctx = BN_CTX_new();
    ~CtxHolder() { BN_CTX_free(ctx); }
};

}  // namespace

BN_CTX* bn_scratch_ctx() {
    thread_local CtxHolder holder;
    return holder.ctx;
}

Bn::Bn() : bn_(BN_new()) {
    if (!bn_) bn_fail("BN_new");
}

Bn::Bn(uint64_t w) : Bn() {
    if (!BN_set_word(bn_, w)) bn_fail("BN_set_word");
}

Bn::Bn(const Bn& other) : bn_(BN_dup(other.bn_)) {
    if (!bn_) bn_fail("BN_dup");
}

Bn::Bn(Bn&& other) noexcept : bn_(other.bn_) {
    other.bn_ = nullptr;
}

Bn& Bn::operator=(const Bn& other) {
    if (this != &other) {
        if (!BN_copy(bn_, other.bn_)) bn_fail("BN_copy");
    }
    return *this;
}

Bn& Bn::operator=(Bn&& other) noexcept {
    if (this != &other) {
        BN_free(bn_);
        bn_ = other.bn_;
        other.bn_ = nullptr;
    }
    return *this;
}

Bn::~Bn() {
    BN_free(bn_);
}

Bn Bn::from_bytes_be(std::span<const uint8_t> bytes) {
    Bn out;
    if (!BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), out.bn_)) bn_fail("BN_bin2bn");
    return out;
}

Bn Bn::from_dec(const std::string& s) {
    Bn out;
    BIGNUM* p = out.bn_;
    if (!BN_dec2bn(&p, s.c_str())) bn_fail("BN_dec2bn");
    return out;
}

std::vector<uint8_t> Bn::to_bytes_be(size_t width) const {
    std::vector<uint8_t> out(width);
    if (BN_bn2binpad(bn_, out.data(), static_cast<int>(width)) < 0)
        throw RangeError("value does not fit the requested byte width");
    return out;
}

std::string Bn::to_dec() const {
    char* s = BN_bn2dec(bn_);
    if (!s) bn_fail("BN_bn2dec");
    std::string out(s);
    OPENSSL_free(s);
    return out;
}

uint64_t Bn::to_u64() const {
    if (!fits_u64()) throw RangeError("value exceeds 64 bits");
    if (BN_num_bits(bn_) <= 32) return BN_get_word(bn_);
    // BN_get_word is word-sized; on LP64 it already covers 64 bits.
    static_assert(sizeof(BN_ULONG) == 8, "64-bit OpenSSL words expected");
    return static_cast<uint64_t>(BN_get_word(bn_));
}

Bn Bn::add(const Bn& other) const {
    Bn out;
    if (!BN_add(out.bn_, bn_, other.bn_)) bn_fail("BN_add");
    return out;
}

Bn Bn::sub(const Bn& other) const {
    Bn out;
    if (!BN_sub(out.bn_, bn_, other.bn_)) bn_fail("BN_sub");
    if (BN_is_negative(out.bn_)) throw RangeError("negative subtraction result");
    return out;
}

Bn Bn::mul(const Bn& other) const {
    Bn out;
    if (!BN_mul(out.bn_, bn_, other.bn_, bn_scratch_ctx())) bn_fail("BN_mul");
    return out;
}

Bn Bn::div(const Bn& other) const {
    Bn out;
    if (!BN_div(out.bn_, nullptr, bn_, other.bn_, bn_scratch_ctx())) bn_fail("BN_div");
    return out;
}

Bn Bn::mod(const Bn& other) const {
    Bn out;
    if (!BN_nnmod(out.bn_, bn_, other.bn_, bn_scratch_ctx())) bn_fail("BN_nnmod");
    return out;
}

Bn Bn::pow(uint64_t e) const {
    Bn exp(e);
    Bn out;
    if (!BN_exp(out.bn_, bn_, exp.bn_, bn_scratch_ctx())) bn_fail("BN_exp");
    return out;
}

Bn Bn::isqrt() const {
    if (is_zero()) return Bn(0);
    // Newton iteration on integers; initial guess from the bit length.
    Bn x = Bn(1);
    if (!BN_lshift(x.bn_, x.bn_, (bits() + 1) / 2)) bn_fail("BN_lshift");
    while (true) {
        // y = (x + this/x) / 2
        Bn y = x.add(this->div(x));
        if (!BN_rshift1(y.bn_, y.bn_)) bn_fail("BN_rshift1");
        if (y.cmp(x) >= 0) break;
        x = y;
    }
    return x;
}

Bn Bn::ceil_root(unsigned k) const {
    if (k == 0) throw RangeError("root order must be >= 1");
    if (is_zero()) return Bn(0);
    if (k == 1) return *this;
    // Binary search over the root value.
    Bn lo(1);
    Bn hi = Bn(1);
    if (!BN_lshift(hi.bn_, hi.bn_, bits() / static_cast<int>(k) + 2)) bn_fail("BN_lshift");
    while (lo < hi) {
        Bn mid = lo.add(hi);
        if (!BN_rshift1(mid.bn_, mid.bn_)) bn_fail("BN_rshift1");
        if (mid.pow(k).cmp(*this) >= 0) {
            hi = mid;
        } else {
            lo = mid.add(Bn(1));
        }
    }
    return lo;
}

uint64_t ceil_sqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (r - 1) * (r - 1) >= n) --r;
    while (r * r < n) ++r;
    return r;
}

uint64_t ceil_cbrt_u64(uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<uint64_t>(std::cbrt(static_cast<double>(n)));
    while (r > 1 && (r - 1) * (r - 1) * (r - 1) >= n) --r;
    while (r * r * r < n) ++r;
    return r;
}

}  // namespace mpfss
