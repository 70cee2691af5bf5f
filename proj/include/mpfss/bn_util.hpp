#pragma once

#include <openssl/bn.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpfss/errors.hpp"

namespace mpfss {

// Value-semantic RAII wrapper around an OpenSSL BIGNUM.
class Bn {
  public:
    Bn();
    explicit Bn(uint64_t w);
    Bn(const Bn& other);
    Bn(Bn&& other) noexcept;
    Bn& operator=(const Bn& other);
    Bn& operator=(Bn&& other) noexcept;
    ~Bn();

    BIGNUM* raw() { return bn_; }
    const BIGNUM* raw() const { return bn_; }

    static Bn from_bytes_be(std::span<const uint8_t> bytes);
    static Bn from_dec(const std::string& s);

    // Fixed-width big-endian encoding; throws if the value does not fit.
    std::vector<uint8_t> to_bytes_be(size_t width) const;
    std::string to_dec() const;

    bool is_zero() const { return BN_is_zero(bn_); }
    bool is_one() const { return BN_is_one(bn_); }
    int bits() const { return BN_num_bits(bn_); }
    uint64_t to_u64() const;  // throws RangeError if > 64 bits
    bool fits_u64() const { return BN_num_bits(bn_) <= 64; }

    int cmp(const Bn& other) const { return BN_cmp(bn_, other.bn_); }
    bool operator==(const Bn& other) const { return cmp(other) == 0; }
    bool operator<(const Bn& other) const { return cmp(other) < 0; }
    bool operator<=(const Bn& other) const { return cmp(other) <= 0; }

    Bn add(const Bn& other) const;
    Bn sub(const Bn& other) const;  // must not go negative
    Bn mul(const Bn& other) const;
    Bn div(const Bn& other) const;
    Bn mod(const Bn& other) const;
    Bn pow(uint64_t e) const;

    // Largest r with r^2 <= *this.
    Bn isqrt() const;
    // Smallest r with r^k >= *this (k >= 1).
    Bn ceil_root(unsigned k) const;

  private:
    BIGNUM* bn_;
};

// Thread-local scratch context for OpenSSL BN operations.
BN_CTX* bn_scratch_ctx();

// Integer helpers on u64 used for grid dimensioning.
uint64_t ceil_sqrt_u64(uint64_t n);
uint64_t ceil_cbrt_u64(uint64_t n);

}  // namespace mpfss
