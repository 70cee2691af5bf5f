#include "mpfss/encoding.hpp"

#include <string>

#include "mpfss/errors.hpp"

namespace mpfss {

namespace {

std::string element_key(const Group& group, const GroupElement& e) {
    auto bytes = group.serialize(e);
    return std::string(bytes.begin(), bytes.end());
}

}  // namespace

ExponentCodec::ExponentCodec(std::shared_ptr<const Group> group, uint64_t bound_B)
    : group_(std::move(group)), bound_(bound_B) {
    if (bound_ == 0) throw RangeError("decode bound must be positive");
    Bn bound_bn(bound_);
    if (!(bound_bn < group_->scalar_field().modulus()))
        throw RangeError("decode bound must be below the group order");
    table_size_ = ceil_sqrt_u64(bound_);

    // Baby steps: generator^j for j in [0, table_size).
    const ScalarField& field = group_->scalar_field();
    GroupElement gen = group_->generator();
    GroupElement cur = group_->identity();
    baby_table_.reserve(table_size_);
    for (uint64_t j = 0; j < table_size_; ++j) {
        baby_table_.emplace(element_key(*group_, cur), j);
        cur = group_->mul(cur, gen);
    }
    giant_step_ = group_->exp(gen, field.neg(field.from_u64(table_size_)));
}

GroupElement ExponentCodec::encode(uint64_t beta) const {
    if (beta >= bound_) throw RangeError("value exceeds the decodable bound");
    return group_->exp(group_->generator(), group_->scalar_field().from_u64(beta));
}

uint64_t ExponentCodec::decode(const GroupElement& e) const {
    DecodeStats stats;
    return decode_with_stats(e, stats);
}

uint64_t ExponentCodec::decode_with_stats(const GroupElement& e, DecodeStats& stats) const {
    stats.group_ops = 0;
    GroupElement cur = e;
    uint64_t giant_count = (bound_ + table_size_ - 1) / table_size_;
    for (uint64_t i = 0; i <= giant_count; ++i) {
        auto it = baby_table_.find(element_key(*group_, cur));
        if (it != baby_table_.end()) {
            uint64_t beta = i * table_size_ + it->second;
            if (beta >= bound_) break;
            return beta;
        }
        cur = group_->mul(cur, giant_step_);
        ++stats.group_ops;
    }
    throw OutOfRangeError("no discrete logarithm below the bound");
}

PointCodec::PointCodec(std::shared_ptr<const Group> group, uint64_t padding_k)
    : group_(std::move(group)), padding_(padding_k) {
    if (!group_->has_coordinates())
        throw ParameterMismatch("point encoding requires a curve group with coordinate access");
    if (padding_ < 2) throw RangeError("padding counter space must be >= 2");
    Bn max = group_->coordinate_modulus().div(Bn(padding_));
    // Values beyond 2^64 - 1 are not representable in the artifact's output
    // space even when the coordinate field would admit them.
    max_value_ = max.fits_u64() ? max.to_u64() : UINT64_MAX;
}

GroupElement PointCodec::encode(uint64_t beta) const {
    if (beta == 0) return group_->identity();
    if (beta >= max_value_) throw RangeError("value exceeds the embeddable coordinate range");
    Bn base = Bn(beta).mul(Bn(padding_));
    for (uint64_t c = 0; c < padding_; ++c) {
        auto point = group_->from_x_coordinate(base.add(Bn(c)));
        if (point) return *point;
    }
    throw EncodingFailure("no curve point in the padding window");
}

uint64_t PointCodec::decode(const GroupElement& e) const {
    if (group_->is_identity(e)) return 0;
    Bn quotient = group_->x_coordinate(e).div(Bn(padding_));
    if (!quotient.fits_u64()) return UINT64_MAX;  // saturating garbage-out
    return quotient.to_u64();
}

}  // namespace mpfss
