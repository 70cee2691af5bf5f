// Order-5 Schnorr subgroup of F_11^*, generated by 3. Exists purely so the
// randomness space of the DDH layer can be enumerated exhaustively in tests
// and to keep the layer honest about not assuming curve coordinates.
// Elements serialize as their single-byte residue.

#include "mpfss/group.hpp"

namespace mpfss {

namespace {

constexpr uint64_t kP = 11;
constexpr uint64_t kOrder = 5;
constexpr uint64_t kGen = 3;

uint64_t powm(uint64_t base, uint64_t e) {
    uint64_t acc = 1;
    base %= kP;
    while (e) {
        if (e & 1) acc = acc * base % kP;
        base = base * base % kP;
        e >>= 1;
    }
    return acc;
}

class Schnorr11Group final : public Group {
  public:
    Schnorr11Group() : Group(ScalarField(Bn(kOrder))) {
        identity_ = make(1);
        generator_ = make(kGen);
    }

    GroupId id() const override { return GroupId::schnorr11; }
    size_t element_bytes() const override { return 1; }

    GroupElement identity() const override { return identity_; }
    GroupElement generator() const override { return generator_; }

    GroupElement mul(const GroupElement& a, const GroupElement& b) const override {
        return make(unwrap<uint64_t>(a) * unwrap<uint64_t>(b) % kP);
    }

    GroupElement exp(const GroupElement& base, const Scalar& e) const override {
        return make(powm(unwrap<uint64_t>(base), e.value().to_u64()));
    }

    bool equal(const GroupElement& a, const GroupElement& b) const override {
        return unwrap<uint64_t>(a) == unwrap<uint64_t>(b);
    }

    std::vector<uint8_t> serialize(const GroupElement& a) const override {
        return {static_cast<uint8_t>(unwrap<uint64_t>(a))};
    }

    GroupElement deserialize(std::span<const uint8_t> bytes) const override {
        if (bytes.size() != 1) throw DecodeError("group element has wrong width");
        uint64_t v = bytes[0];
        if (v == 0 || v >= kP || powm(v, kOrder) != 1) throw DecodeError("not a subgroup element");
        return make(v);
    }

  private:
    static GroupElement make(uint64_t v) { return wrap(std::make_shared<const uint64_t>(v)); }

    GroupElement identity_;
    GroupElement generator_;
};

}  // namespace

std::shared_ptr<const Group> make_schnorr11_group() {
    return std::make_shared<Schnorr11Group>();
}

}  // namespace mpfss
