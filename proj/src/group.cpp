#include "mpfss/group.hpp"

namespace mpfss {

std::shared_ptr<const Group> make_p256_group();
std::shared_ptr<const Group> make_tiny_ec_group();
std::shared_ptr<const Group> make_schnorr11_group();

GroupElement Group::mul_exp2(const GroupElement& a, const Scalar& ea, const GroupElement& b,
                             const Scalar& eb) const {
    return mul(exp(a, ea), exp(b, eb));
}

GroupElement Group::mul_exp3(const GroupElement& a, const Scalar& ea, const GroupElement& b,
                             const Scalar& eb, const GroupElement& c, const Scalar& ec) const {
    return mul(mul_exp2(a, ea, b, eb), exp(c, ec));
}

GroupElement Group::random_generator(RandomnessSource& rng) const {
    return exp(generator(), rng.random_nonzero(scalar_field()));
}

Bn Group::coordinate_modulus() const {
    throw ParameterMismatch("group has no coordinate access");
}

Bn Group::x_coordinate(const GroupElement&) const {
    throw ParameterMismatch("group has no coordinate access");
}

std::optional<GroupElement> Group::from_x_coordinate(const Bn&) const {
    throw ParameterMismatch("group has no coordinate access");
}

std::shared_ptr<const Group> make_group(GroupId id) {
    switch (id) {
        case GroupId::p256: {
            static std::shared_ptr<const Group> g = make_p256_group();
            return g;
        }
        case GroupId::tiny_ec: {
            static std::shared_ptr<const Group> g = make_tiny_ec_group();
            return g;
        }
        case GroupId::schnorr11: {
            static std::shared_ptr<const Group> g = make_schnorr11_group();
            return g;
        }
    }
    throw DecodeError("unknown group id");
}

}  // namespace mpfss
