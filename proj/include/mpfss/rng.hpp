#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>

#include "mpfss/scalar_field.hpp"

namespace mpfss {

// Injected randomness. All generation algorithms take one of these rather
// than touching ambient state, so every run is reproducible from a seed.
class RandomnessSource {
  public:
    virtual ~RandomnessSource() = default;

    virtual void fill_bytes(std::span<uint8_t> out) = 0;

    // Uniform field element. The default draws 64 bytes and wide-reduces,
    // leaving bias below 2^-256 for any modulus up to 256 bits. Test
    // sources may override to enumerate the sample space exactly.
    virtual Scalar random_scalar(const ScalarField& field);

    Scalar random_nonzero(const ScalarField& field);

    std::array<uint8_t, 32> seed32();
};

// ChaCha20-based deterministic stream keyed from a 64-bit seed.
class ChaChaRng final : public RandomnessSource {
  public:
    explicit ChaChaRng(uint64_t seed);
    explicit ChaChaRng(std::span<const uint8_t, 32> key);
    ~ChaChaRng() override;

    ChaChaRng(const ChaChaRng&) = delete;
    ChaChaRng& operator=(const ChaChaRng&) = delete;

    void fill_bytes(std::span<uint8_t> out) override;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace mpfss
