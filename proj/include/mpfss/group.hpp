#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mpfss/rng.hpp"
#include "mpfss/scalar_field.hpp"

namespace mpfss {

enum class GroupId : uint8_t {
    p256 = 1,       // NIST P-256, the default instantiation
    tiny_ec = 2,    // 21-bit short-Weierstrass test curve
    schnorr11 = 3,  // order-5 subgroup of F_11^*, test only
};

// Opaque group element handle. Elements are immutable once created and may
// be shared freely across threads; all operations go through the Group.
class GroupElement {
  public:
    GroupElement() = default;
    bool valid() const { return static_cast<bool>(h_); }

  private:
    friend class Group;
    explicit GroupElement(std::shared_ptr<const void> h) : h_(std::move(h)) {}
    std::shared_ptr<const void> h_;
};

// Cyclic group of prime order q0 in which DDH is assumed hard (for the
// default instantiation; the small test groups trade hardness for
// enumerable randomness spaces). Provides the scalar field F_q0, the group
// law, exponentiation, and a fixed-width canonical serialization.
class Group {
  public:
    virtual ~Group() = default;

    const ScalarField& scalar_field() const { return field_; }
    uint32_t security_lambda() const { return field_.bits(); }

    virtual GroupId id() const = 0;
    virtual size_t element_bytes() const = 0;

    virtual GroupElement identity() const = 0;
    virtual GroupElement generator() const = 0;

    virtual GroupElement mul(const GroupElement& a, const GroupElement& b) const = 0;
    virtual GroupElement exp(const GroupElement& base, const Scalar& e) const = 0;
    virtual bool equal(const GroupElement& a, const GroupElement& b) const = 0;

    bool is_identity(const GroupElement& a) const { return equal(a, identity()); }

    // a^ea * b^eb and a^ea * b^eb * c^ec; overridable for fused paths.
    virtual GroupElement mul_exp2(const GroupElement& a, const Scalar& ea, const GroupElement& b,
                                  const Scalar& eb) const;
    virtual GroupElement mul_exp3(const GroupElement& a, const Scalar& ea, const GroupElement& b,
                                  const Scalar& eb, const GroupElement& c, const Scalar& ec) const;

    virtual std::vector<uint8_t> serialize(const GroupElement& a) const = 0;
    virtual GroupElement deserialize(std::span<const uint8_t> bytes) const = 0;

    // k * generator for uniform nonzero k; never the identity.
    GroupElement random_generator(RandomnessSource& rng) const;

    // Coordinate access for curve groups (point-based secret encoding).
    virtual bool has_coordinates() const { return false; }
    virtual Bn coordinate_modulus() const;
    // x-coordinate of a non-identity point.
    virtual Bn x_coordinate(const GroupElement& a) const;
    // Point with the given x-coordinate and the canonical (lexicographically
    // smaller encoding) y, or nullopt when x is not on the curve.
    virtual std::optional<GroupElement> from_x_coordinate(const Bn& x) const;

  protected:
    explicit Group(ScalarField field) : field_(std::move(field)) {}

    template <typename T>
    static GroupElement wrap(std::shared_ptr<const T> h) {
        return GroupElement(std::static_pointer_cast<const void>(std::move(h)));
    }
    template <typename T>
    static const T& unwrap(const GroupElement& e) {
        if (!e.valid()) throw Error("use of an empty group element");
        return *static_cast<const T*>(e.h_.get());
    }

  private:
    ScalarField field_;
};

// Shared immutable instance per group id.
std::shared_ptr<const Group> make_group(GroupId id);

}  // namespace mpfss
