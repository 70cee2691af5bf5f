#include "mpfss/scalar_field.hpp"

namespace mpfss {

ScalarField::ScalarField(Bn prime_modulus) : q_(std::move(prime_modulus)) {
    if (q_.cmp(Bn(2)) < 0) throw InvalidScalar("field modulus must be >= 2");
    bits_ = static_cast<uint32_t>(q_.bits());
    width_ = (bits_ + 7) / 8;
    if (bits_ <= 31) small_q_ = q_.to_u64();
}

Scalar ScalarField::add(const Scalar& a, const Scalar& b) const {
    if (small_q_) {
        uint64_t s = a.word() + b.word();
        return Scalar(Bn(s >= small_q_ ? s - small_q_ : s));
    }
    Bn out;
    if (!BN_mod_add(out.raw(), a.value().raw(), b.value().raw(), q_.raw(), bn_scratch_ctx()))
        throw Error("BN_mod_add failed");
    return Scalar(std::move(out));
}

Scalar ScalarField::sub(const Scalar& a, const Scalar& b) const {
    if (small_q_) {
        uint64_t av = a.word(), bv = b.word();
        return Scalar(Bn(av >= bv ? av - bv : av + small_q_ - bv));
    }
    Bn out;
    if (!BN_mod_sub(out.raw(), a.value().raw(), b.value().raw(), q_.raw(), bn_scratch_ctx()))
        throw Error("BN_mod_sub failed");
    return Scalar(std::move(out));
}

Scalar ScalarField::mul(const Scalar& a, const Scalar& b) const {
    if (small_q_) return Scalar(Bn(a.word() * b.word() % small_q_));
    Bn out;
    if (!BN_mod_mul(out.raw(), a.value().raw(), b.value().raw(), q_.raw(), bn_scratch_ctx()))
        throw Error("BN_mod_mul failed");
    return Scalar(std::move(out));
}

Scalar ScalarField::neg(const Scalar& a) const {
    return sub(zero(), a);
}

Scalar ScalarField::inverse(const Scalar& a) const {
    if (a.is_zero()) throw InvalidScalar("zero has no multiplicative inverse");
    Bn out;
    if (!BN_mod_inverse(out.raw(), a.value().raw(), q_.raw(), bn_scratch_ctx()))
        throw InvalidScalar("modular inverse does not exist");
    return Scalar(std::move(out));
}

std::vector<uint8_t> ScalarField::to_bytes(const Scalar& a) const {
    return a.value().to_bytes_be(width_);
}

Scalar ScalarField::from_bytes(std::span<const uint8_t> bytes) const {
    if (bytes.size() != width_) throw DecodeError("scalar encoding has wrong width");
    Bn v = Bn::from_bytes_be(bytes);
    if (!(v < q_)) throw DecodeError("scalar encoding is not reduced");
    return Scalar(std::move(v));
}

}  // namespace mpfss
