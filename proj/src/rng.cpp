#include "mpfss/rng.hpp"

#include <openssl/evp.h>

#include <cstring>

#include "mpfss/errors.hpp"

namespace mpfss {

Scalar RandomnessSource::random_scalar(const ScalarField& field) {
    uint8_t buf[64];
    fill_bytes(buf);
    return field.reduce(Bn::from_bytes_be(buf));
}

Scalar RandomnessSource::random_nonzero(const ScalarField& field) {
    for (;;) {
        Scalar s = random_scalar(field);
        if (!s.is_zero()) return s;
    }
}

std::array<uint8_t, 32> RandomnessSource::seed32() {
    std::array<uint8_t, 32> out;
    fill_bytes(out);
    return out;
}

struct ChaChaRng::Impl {
    EVP_CIPHER_CTX* ctx = nullptr;

    explicit Impl(const uint8_t key[32]) {
        ctx = EVP_CIPHER_CTX_new();
        if (!ctx) throw Error("EVP_CIPHER_CTX_new failed");
        uint8_t iv[16] = {0};
        if (EVP_EncryptInit_ex(ctx, EVP_chacha20(), nullptr, key, iv) != 1) {
            EVP_CIPHER_CTX_free(ctx);
            throw Error("ChaCha20 init failed");
        }
    }

    ~Impl() { EVP_CIPHER_CTX_free(ctx); }

    void stream(std::span<uint8_t> out) {
        std::memset(out.data(), 0, out.size());
        int len = 0;
        if (EVP_EncryptUpdate(ctx, out.data(), &len, out.data(), static_cast<int>(out.size())) != 1 ||
            len != static_cast<int>(out.size()))
            throw Error("ChaCha20 stream failed");
    }
};

ChaChaRng::ChaChaRng(uint64_t seed) {
    // Expand the 64-bit seed into a key via SHA-256 over a tagged input.
    uint8_t input[17] = {'m', 'p', 'f', 's', 's', '-', 'r', 'n', 'g', 0, 0, 0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 8; i++) input[9 + i] = static_cast<uint8_t>(seed >> (8 * i));
    uint8_t key[32];
    unsigned int key_len = 0;
    if (EVP_Digest(input, sizeof(input), key, &key_len, EVP_sha256(), nullptr) != 1 || key_len != 32)
        throw Error("seed expansion failed");
    impl_ = std::make_unique<Impl>(key);
}

ChaChaRng::ChaChaRng(std::span<const uint8_t, 32> key) {
    impl_ = std::make_unique<Impl>(key.data());
}

ChaChaRng::~ChaChaRng() = default;

void ChaChaRng::fill_bytes(std::span<uint8_t> out) {
    impl_->stream(out);
}

}  // namespace mpfss
