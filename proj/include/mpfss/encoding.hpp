#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>

#include "mpfss/group.hpp"

namespace mpfss {

// Exponent-based secret encoding: beta -> beta * P for the group generator
// P. Additively homomorphic; decoding is a bounded discrete logarithm via
// baby-step giant-step, so beta must stay below bound_B.
class ExponentCodec {
  public:
    struct DecodeStats {
        size_t group_ops = 0;  // group multiplications performed by decode
    };

    explicit ExponentCodec(std::shared_ptr<const Group> group, uint64_t bound_B = uint64_t(1) << 20);

    uint64_t bound() const { return bound_; }

    GroupElement encode(uint64_t beta) const;  // RangeError for beta >= bound_B
    uint64_t decode(const GroupElement& e) const;
    // As decode, with the instrumented operation count (<= 2*ceil(sqrt(B)) + 1).
    uint64_t decode_with_stats(const GroupElement& e, DecodeStats& stats) const;

  private:
    std::shared_ptr<const Group> group_;
    uint64_t bound_;
    uint64_t table_size_;                                  // ceil(sqrt(bound))
    std::unordered_map<std::string, uint64_t> baby_table_; // serialized point -> index
    GroupElement giant_step_;                              // generator^-table_size
};

// Point-based secret encoding: beta is embedded in the x-coordinate of a
// curve point, padded by a counter byte so that non-residue coordinates can
// be skipped (the bare coordinate fails for about half of all values).
// Zero encodes as the point at infinity. Only groups with coordinate
// access qualify.
class PointCodec {
  public:
    explicit PointCodec(std::shared_ptr<const Group> group, uint64_t padding_k = 256);

    uint64_t padding() const { return padding_; }
    uint64_t max_value() const { return max_value_; }

    GroupElement encode(uint64_t beta) const;  // RangeError / EncodingFailure
    // Identity decodes to 0; any other point decodes to floor(x / padding).
    // Garbage in, garbage out: sums of two nonzero encodings decode to
    // neither input in general. Quotients beyond 64 bits saturate.
    uint64_t decode(const GroupElement& e) const;

  private:
    std::shared_ptr<const Group> group_;
    uint64_t padding_;
    uint64_t max_value_;
};

}  // namespace mpfss
