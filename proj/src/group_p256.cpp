// NIST P-256 backend on top of OpenSSL's EC layer.
//
// Canonical element encoding: 33 bytes. Non-identity points use the SEC1
// compressed form (0x02/0x03 tag + 32-byte x). The identity gets the
// distinguished all-zero 33-byte string, keeping the width constant so key
// sizes are exact byte counts.

#define OPENSSL_SUPPRESS_DEPRECATED  // EC_POINTs_mul for fused multi-exponentiation

#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <algorithm>
#include <array>

#include "mpfss/group.hpp"

namespace mpfss {

namespace {

constexpr size_t kElementBytes = 33;

struct PointDeleter {
    void operator()(const EC_POINT* p) const { EC_POINT_free(const_cast<EC_POINT*>(p)); }
};
using PointPtr = std::shared_ptr<const EC_POINT>;

PointPtr own(EC_POINT* p) {
    return PointPtr(p, PointDeleter{});
}

class P256Group final : public Group {
  public:
    P256Group() : Group(make_field()), grp_(EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1)) {
        if (!grp_) throw Error("P-256 group construction failed");
        EC_GROUP_precompute_mult(grp_, bn_scratch_ctx());
        identity_ = wrap(own(new_point()));
        EC_POINT_set_to_infinity(grp_, const_cast<EC_POINT*>(&unwrap<EC_POINT>(identity_)));
        generator_ = wrap(own(EC_POINT_dup(EC_GROUP_get0_generator(grp_), grp_)));
    }

    ~P256Group() override { EC_GROUP_free(grp_); }

    GroupId id() const override { return GroupId::p256; }
    size_t element_bytes() const override { return kElementBytes; }

    GroupElement identity() const override { return identity_; }
    GroupElement generator() const override { return generator_; }

    GroupElement mul(const GroupElement& a, const GroupElement& b) const override {
        EC_POINT* r = new_point();
        if (!EC_POINT_add(grp_, r, &unwrap<EC_POINT>(a), &unwrap<EC_POINT>(b), bn_scratch_ctx()))
            throw Error("EC_POINT_add failed");
        return wrap(own(r));
    }

    GroupElement exp(const GroupElement& base, const Scalar& e) const override {
        EC_POINT* r = new_point();
        if (!EC_POINT_mul(grp_, r, nullptr, &unwrap<EC_POINT>(base), e.value().raw(), bn_scratch_ctx()))
            throw Error("EC_POINT_mul failed");
        return wrap(own(r));
    }

    GroupElement mul_exp2(const GroupElement& a, const Scalar& ea, const GroupElement& b,
                          const Scalar& eb) const override {
        const EC_POINT* pts[2] = {&unwrap<EC_POINT>(a), &unwrap<EC_POINT>(b)};
        const BIGNUM* es[2] = {ea.value().raw(), eb.value().raw()};
        EC_POINT* r = new_point();
        if (!EC_POINTs_mul(grp_, r, nullptr, 2, pts, es, bn_scratch_ctx()))
            throw Error("EC_POINTs_mul failed");
        return wrap(own(r));
    }

    GroupElement mul_exp3(const GroupElement& a, const Scalar& ea, const GroupElement& b,
                          const Scalar& eb, const GroupElement& c, const Scalar& ec) const override {
        const EC_POINT* pts[3] = {&unwrap<EC_POINT>(a), &unwrap<EC_POINT>(b), &unwrap<EC_POINT>(c)};
        const BIGNUM* es[3] = {ea.value().raw(), eb.value().raw(), ec.value().raw()};
        EC_POINT* r = new_point();
        if (!EC_POINTs_mul(grp_, r, nullptr, 3, pts, es, bn_scratch_ctx()))
            throw Error("EC_POINTs_mul failed");
        return wrap(own(r));
    }

    bool equal(const GroupElement& a, const GroupElement& b) const override {
        int c = EC_POINT_cmp(grp_, &unwrap<EC_POINT>(a), &unwrap<EC_POINT>(b), bn_scratch_ctx());
        if (c < 0) throw Error("EC_POINT_cmp failed");
        return c == 0;
    }

    std::vector<uint8_t> serialize(const GroupElement& a) const override {
        const EC_POINT& p = unwrap<EC_POINT>(a);
        std::vector<uint8_t> out(kElementBytes, 0);
        if (EC_POINT_is_at_infinity(grp_, &p)) return out;
        size_t n = EC_POINT_point2oct(grp_, &p, POINT_CONVERSION_COMPRESSED, out.data(), out.size(),
                                      bn_scratch_ctx());
        if (n != kElementBytes) throw Error("unexpected point encoding length");
        return out;
    }

    GroupElement deserialize(std::span<const uint8_t> bytes) const override {
        if (bytes.size() != kElementBytes) throw DecodeError("group element has wrong width");
        if (bytes[0] == 0) {
            if (!std::all_of(bytes.begin(), bytes.end(), [](uint8_t b) { return b == 0; }))
                throw DecodeError("non-canonical identity encoding");
            return identity_;
        }
        EC_POINT* r = new_point();
        if (!EC_POINT_oct2point(grp_, r, bytes.data(), bytes.size(), bn_scratch_ctx())) {
            EC_POINT_free(r);
            throw DecodeError("invalid P-256 point encoding");
        }
        return wrap(own(r));
    }

    bool has_coordinates() const override { return true; }

    Bn coordinate_modulus() const override {
        Bn p;
        if (!EC_GROUP_get_curve(grp_, p.raw(), nullptr, nullptr, bn_scratch_ctx()))
            throw Error("EC_GROUP_get_curve failed");
        return p;
    }

    Bn x_coordinate(const GroupElement& a) const override {
        const EC_POINT& p = unwrap<EC_POINT>(a);
        if (EC_POINT_is_at_infinity(grp_, &p)) throw RangeError("identity has no coordinates");
        Bn x;
        if (!EC_POINT_get_affine_coordinates(grp_, &p, x.raw(), nullptr, bn_scratch_ctx()))
            throw Error("EC_POINT_get_affine_coordinates failed");
        return x;
    }

    std::optional<GroupElement> from_x_coordinate(const Bn& x) const override {
        EC_POINT* r = new_point();
        // y_bit = 0 selects the even y, whose compressed encoding (0x02 tag)
        // is the lexicographically smaller of the two.
        if (!EC_POINT_set_compressed_coordinates(grp_, r, x.raw(), 0, bn_scratch_ctx())) {
            EC_POINT_free(r);
            return std::nullopt;
        }
        return wrap(own(r));
    }

  private:
    static ScalarField make_field() {
        EC_GROUP* g = EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1);
        if (!g) throw Error("P-256 group construction failed");
        Bn order;
        BN_copy(order.raw(), EC_GROUP_get0_order(g));
        EC_GROUP_free(g);
        return ScalarField(std::move(order));
    }

    EC_POINT* new_point() const {
        EC_POINT* p = EC_POINT_new(grp_);
        if (!p) throw Error("EC_POINT_new failed");
        return p;
    }

    EC_GROUP* grp_;
    GroupElement identity_;
    GroupElement generator_;
};

}  // namespace

std::shared_ptr<const Group> make_p256_group() {
    return std::make_shared<P256Group>();
}

}  // namespace mpfss
