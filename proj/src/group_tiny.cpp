// Small short-Weierstrass test curve with native 64-bit arithmetic.
//
//   y^2 = x^3 - 3x + 16  over F_p,  p = 1048583  (21-bit prime, p % 4 == 3)
//   group order q0 = 1048387 (prime, no cofactor), generator (2, 328603)
//
// DDH is of course meaningless at this size; the backend exists so that
// exhaustive correctness grids and randomness-space enumerations run in
// microseconds instead of the ~50us per operation the generic bignum path
// costs. Element encoding: 4 bytes (tag + 3-byte big-endian x), identity
// all-zero, tag 0x02/0x03 selecting y parity as in SEC1.

#include <array>
#include <bit>
#include <cstdint>

#include "mpfss/group.hpp"

namespace mpfss {

namespace {

constexpr uint64_t kP = 1048583;
constexpr uint64_t kA = kP - 3;
constexpr uint64_t kB = 16;
constexpr uint64_t kOrder = 1048387;
constexpr uint64_t kGx = 2;
constexpr uint64_t kGy = 328603;
constexpr size_t kElementBytes = 4;

inline uint64_t mulm(uint64_t a, uint64_t b) {
    return (a * b) % kP;
}
inline uint64_t addm(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    return s >= kP ? s - kP : s;
}
inline uint64_t subm(uint64_t a, uint64_t b) {
    return a >= b ? a - b : a + kP - b;
}

uint64_t powm(uint64_t base, uint64_t e) {
    uint64_t acc = 1;
    base %= kP;
    while (e) {
        if (e & 1) acc = mulm(acc, base);
        base = mulm(base, base);
        e >>= 1;
    }
    return acc;
}

inline uint64_t invm(uint64_t a) {
    return powm(a, kP - 2);
}

// Square root mod p via the p % 4 == 3 shortcut; returns kP when the input
// is a non-residue.
uint64_t sqrtm(uint64_t a) {
    if (a == 0) return 0;
    uint64_t r = powm(a, (kP + 1) / 4);
    return mulm(r, r) == a ? r : kP;
}

struct Affine {
    uint64_t x = 0, y = 0;
    bool inf = true;
};

struct Jacobian {
    uint64_t x = 1, y = 1, z = 0;  // z == 0 encodes the identity
};

Jacobian to_jacobian(const Affine& p) {
    if (p.inf) return {};
    return {p.x, p.y, 1};
}

Affine to_affine(const Jacobian& p) {
    if (p.z == 0) return {};
    uint64_t zi = invm(p.z);
    uint64_t zi2 = mulm(zi, zi);
    return {mulm(p.x, zi2), mulm(p.y, mulm(zi2, zi)), false};
}

Jacobian dbl(const Jacobian& p) {
    if (p.z == 0 || p.y == 0) return {};
    uint64_t y2 = mulm(p.y, p.y);
    uint64_t s = mulm(4 % kP, mulm(p.x, y2));
    uint64_t z2 = mulm(p.z, p.z);
    // a = -3 allows m = 3(x - z^2)(x + z^2)
    uint64_t m = mulm(3, mulm(subm(p.x, z2), addm(p.x, z2)));
    uint64_t x3 = subm(mulm(m, m), addm(s, s));
    uint64_t y3 = subm(mulm(m, subm(s, x3)), mulm(8, mulm(y2, y2)));
    uint64_t z3 = mulm(addm(p.y, p.y), p.z);
    return {x3, y3, z3};
}

// Mixed addition with an affine second operand.
Jacobian add_mixed(const Jacobian& p, const Affine& q) {
    if (q.inf) return p;
    if (p.z == 0) return to_jacobian(q);
    uint64_t z1z1 = mulm(p.z, p.z);
    uint64_t u2 = mulm(q.x, z1z1);
    uint64_t s2 = mulm(q.y, mulm(p.z, z1z1));
    if (u2 == p.x) {
        if (s2 != p.y) return {};
        return dbl(p);
    }
    uint64_t h = subm(u2, p.x);
    uint64_t r = subm(s2, p.y);
    uint64_t hh = mulm(h, h);
    uint64_t hhh = mulm(h, hh);
    uint64_t v = mulm(p.x, hh);
    uint64_t x3 = subm(subm(mulm(r, r), hhh), addm(v, v));
    uint64_t y3 = subm(mulm(r, subm(v, x3)), mulm(p.y, hhh));
    uint64_t z3 = mulm(p.z, h);
    return {x3, y3, z3};
}

Affine add_affine(const Affine& p, const Affine& q) {
    return to_affine(add_mixed(to_jacobian(p), q));
}

Affine scalar_mul(const Affine& p, uint64_t k) {
    Jacobian acc;
    for (int i = 63 - std::countl_zero(k | 1); i >= 0; --i) {
        acc = dbl(acc);
        if ((k >> i) & 1) acc = add_mixed(acc, p);
    }
    return to_affine(acc);
}

// Interleaved multi-exponentiation over up to three bases: one shared
// doubling chain, one table add per bit. The combination table is built in
// Jacobian form and normalized with a single shared inversion.
template <size_t n>
Affine multi_mul(const std::array<Affine, n>& bases, const std::array<uint64_t, n>& ks) {
    constexpr size_t size = 1u << n;
    std::array<Affine, size> table;  // table[mask] = sum of bases in mask
    std::array<Jacobian, size> jac;
    for (size_t mask = 1; mask < size; ++mask) {
        size_t low = mask & (mask - 1);
        size_t bit = std::countr_zero(mask);
        if (low == 0) {
            table[mask] = bases[bit];
            jac[mask] = to_jacobian(bases[bit]);
        } else {
            jac[mask] = add_mixed(jac[low], bases[bit]);
        }
    }
    if constexpr (n > 1) {
        // Montgomery batch inversion over the composite entries
        std::array<size_t, size> need{};
        size_t count = 0;
        uint64_t running = 1;
        std::array<uint64_t, size> prefix{};
        for (size_t mask = 3; mask < size; ++mask) {
            if ((mask & (mask - 1)) == 0) continue;  // single-base entries are affine already
            if (jac[mask].z == 0) {
                table[mask] = Affine{};
                continue;
            }
            prefix[count] = running;
            running = mulm(running, jac[mask].z);
            need[count++] = mask;
        }
        uint64_t inv_all = count ? invm(running) : 0;
        for (size_t i = count; i-- > 0;) {
            size_t mask = need[i];
            uint64_t zi = mulm(inv_all, prefix[i]);
            inv_all = mulm(inv_all, jac[mask].z);
            uint64_t zi2 = mulm(zi, zi);
            table[mask] = Affine{mulm(jac[mask].x, zi2), mulm(jac[mask].y, mulm(zi2, zi)), false};
        }
    }
    uint64_t all = 0;
    for (uint64_t k : ks) all |= k;
    if (all == 0) return {};
    Jacobian acc;
    for (int i = 63 - std::countl_zero(all); i >= 0; --i) {
        acc = dbl(acc);
        size_t mask = 0;
        for (size_t j = 0; j < n; ++j) mask |= ((ks[j] >> i) & 1) << j;
        if (mask) acc = add_mixed(acc, table[mask]);
    }
    return to_affine(acc);
}

class TinyEcGroup final : public Group {
  public:
    TinyEcGroup() : Group(ScalarField(Bn(kOrder))) {
        identity_ = wrap(std::make_shared<const Affine>());
        generator_ = wrap(std::make_shared<const Affine>(Affine{kGx, kGy, false}));
    }

    GroupId id() const override { return GroupId::tiny_ec; }
    size_t element_bytes() const override { return kElementBytes; }

    GroupElement identity() const override { return identity_; }
    GroupElement generator() const override { return generator_; }

    GroupElement mul(const GroupElement& a, const GroupElement& b) const override {
        return make(add_affine(unwrap<Affine>(a), unwrap<Affine>(b)));
    }

    GroupElement exp(const GroupElement& base, const Scalar& e) const override {
        return make(scalar_mul(unwrap<Affine>(base), e.value().to_u64()));
    }

    GroupElement mul_exp2(const GroupElement& a, const Scalar& ea, const GroupElement& b,
                          const Scalar& eb) const override {
        return make(multi_mul<2>({unwrap<Affine>(a), unwrap<Affine>(b)},
                                 {ea.value().to_u64(), eb.value().to_u64()}));
    }

    GroupElement mul_exp3(const GroupElement& a, const Scalar& ea, const GroupElement& b,
                          const Scalar& eb, const GroupElement& c, const Scalar& ec) const override {
        return make(multi_mul<3>({unwrap<Affine>(a), unwrap<Affine>(b), unwrap<Affine>(c)},
                                 {ea.value().to_u64(), eb.value().to_u64(), ec.value().to_u64()}));
    }

    bool equal(const GroupElement& a, const GroupElement& b) const override {
        const Affine& pa = unwrap<Affine>(a);
        const Affine& pb = unwrap<Affine>(b);
        if (pa.inf || pb.inf) return pa.inf == pb.inf;
        return pa.x == pb.x && pa.y == pb.y;
    }

    std::vector<uint8_t> serialize(const GroupElement& a) const override {
        const Affine& p = unwrap<Affine>(a);
        std::vector<uint8_t> out(kElementBytes, 0);
        if (p.inf) return out;
        out[0] = (p.y & 1) ? 0x03 : 0x02;
        out[1] = static_cast<uint8_t>(p.x >> 16);
        out[2] = static_cast<uint8_t>(p.x >> 8);
        out[3] = static_cast<uint8_t>(p.x);
        return out;
    }

    GroupElement deserialize(std::span<const uint8_t> bytes) const override {
        if (bytes.size() != kElementBytes) throw DecodeError("group element has wrong width");
        if (bytes[0] == 0) {
            if (bytes[1] || bytes[2] || bytes[3]) throw DecodeError("non-canonical identity encoding");
            return identity_;
        }
        if (bytes[0] != 0x02 && bytes[0] != 0x03) throw DecodeError("bad point tag");
        uint64_t x = (uint64_t(bytes[1]) << 16) | (uint64_t(bytes[2]) << 8) | bytes[3];
        if (x >= kP) throw DecodeError("x-coordinate out of range");
        uint64_t y = sqrtm(rhs(x));
        if (y == kP) throw DecodeError("x-coordinate not on curve");
        if (y == 0 && bytes[0] == 0x03) throw DecodeError("non-canonical encoding of a 2-torsion-free point");
        if ((y & 1) != (bytes[0] & 1)) y = kP - y;
        return make(Affine{x, y, false});
    }

    bool has_coordinates() const override { return true; }

    Bn coordinate_modulus() const override { return Bn(kP); }

    Bn x_coordinate(const GroupElement& a) const override {
        const Affine& p = unwrap<Affine>(a);
        if (p.inf) throw RangeError("identity has no coordinates");
        return Bn(p.x);
    }

    std::optional<GroupElement> from_x_coordinate(const Bn& xbn) const override {
        if (!xbn.fits_u64() || xbn.to_u64() >= kP) return std::nullopt;
        uint64_t x = xbn.to_u64();
        uint64_t y = sqrtm(rhs(x));
        if (y == kP) return std::nullopt;
        if (y & 1) y = kP - y;  // even y <=> 0x02 tag, the smaller encoding
        return make(Affine{x, y, false});
    }

  private:
    static uint64_t rhs(uint64_t x) {
        return addm(mulm(mulm(x, x), x), addm(mulm(kA, x), kB));
    }

    static GroupElement make(const Affine& p) {
        return wrap(std::make_shared<const Affine>(p));
    }

    GroupElement identity_;
    GroupElement generator_;
};

}  // namespace

std::shared_ptr<const Group> make_tiny_ec_group() {
    return std::make_shared<TinyEcGroup>();
}

}  // namespace mpfss
