#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpfss/bn_util.hpp"

namespace mpfss {

class ScalarField;

// Element of F_q0, always reduced modulo the field order.
class Scalar {
  public:
    Scalar() : v_(0) {}

    const Bn& value() const { return v_; }
    bool is_zero() const { return v_.is_zero(); }
    bool operator==(const Scalar& other) const { return v_ == other.v_; }

    // Raw word value; meaningful only for fields whose modulus fits a word.
    uint64_t word() const { return BN_get_word(v_.raw()); }

  private:
    friend class ScalarField;
    explicit Scalar(Bn v) : v_(std::move(v)) {}
    Bn v_;
};

// Prime field F_q0: the scalar field of a prime-order group, also usable on
// its own for the information-theoretic sharing layers (q0 down to 5 in
// tests).
class ScalarField {
  public:
    explicit ScalarField(Bn prime_modulus);

    const Bn& modulus() const { return q_; }
    uint32_t bits() const { return bits_; }
    size_t byte_width() const { return width_; }
    bool operator==(const ScalarField& other) const { return q_ == other.q_; }

    // Nonzero when the modulus fits 31 bits: arithmetic then runs on plain
    // words (the sharing layers lean on this in the exhaustive tests).
    uint64_t small_modulus() const { return small_q_; }

    Scalar zero() const { return Scalar(Bn(0)); }
    Scalar one() const { return Scalar(Bn(1)); }
    Scalar from_u64(uint64_t w) const {
        if (small_q_ && w < small_q_) return Scalar(Bn(w));
        return reduce(Bn(w));
    }
    Scalar reduce(const Bn& v) const { return Scalar(v.mod(q_)); }

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    // Multiplicative inverse; zero input raises InvalidScalar.
    Scalar inverse(const Scalar& a) const;

    // Fixed-width big-endian bytes (width = byte_width()).
    std::vector<uint8_t> to_bytes(const Scalar& a) const;
    // Rejects values >= modulus (non-canonical) with DecodeError.
    Scalar from_bytes(std::span<const uint8_t> bytes) const;

  private:
    Bn q_;
    uint32_t bits_;
    size_t width_;
    uint64_t small_q_ = 0;
};

}  // namespace mpfss
