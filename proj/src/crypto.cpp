#include "hypersum/crypto.hpp"

#include <sodium.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

#include "hypersum/errors.hpp"

namespace hypersum {

namespace {

void ensure_sodium_ready() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        if (sodium_init() < 0) {
            throw std::runtime_error("libsodium initialization failed");
        }
    });
}

// Sealed-box layout: ephemeral pk (32) || box ciphertext (plaintext + 16 MAC).
constexpr std::size_t kEphemeralKeyBytes = crypto_box_PUBLICKEYBYTES;
constexpr std::size_t kMacBytes = crypto_box_MACBYTES;
constexpr std::size_t kSealOverhead = kEphemeralKeyBytes + kMacBytes;

// Nonce convention of the sealed-box construction: BLAKE2b(epk || rpk).
std::array<std::uint8_t, crypto_box_NONCEBYTES> seal_nonce(
    std::span<const std::uint8_t> ephemeral_pk, std::span<const std::uint8_t> recipient_pk) {
    std::array<std::uint8_t, crypto_box_NONCEBYTES> nonce;
    crypto_generichash_state state;
    crypto_generichash_init(&state, nullptr, 0, nonce.size());
    crypto_generichash_update(&state, ephemeral_pk.data(), ephemeral_pk.size());
    crypto_generichash_update(&state, recipient_pk.data(), recipient_pk.size());
    crypto_generichash_final(&state, nonce.data(), nonce.size());
    return nonce;
}

}  // namespace

bool Commitment::is_zero() const {
    for (std::uint8_t b : digest) {
        if (b != 0) return false;
    }
    return true;
}

std::string Commitment::hex() const { return bytes_to_hex(digest); }

Commitment Commitment::from_hex(std::string_view hex) {
    auto bytes = hex_to_bytes(hex);
    if (bytes.size() != 32) throw std::invalid_argument("commitment hex must be 64 digits");
    Commitment c;
    std::memcpy(c.digest.data(), bytes.data(), 32);
    return c;
}

std::array<std::uint8_t, 32> RoundPlaintext::serialize() const {
    std::array<std::uint8_t, 32> out;
    auto sum_bytes = to_be_bytes(cumulative_sum);
    auto salt_bytes = to_be_bytes(salt);
    std::memcpy(out.data(), sum_bytes.data(), 16);
    std::memcpy(out.data() + 16, salt_bytes.data(), 16);
    return out;
}

RoundPlaintext RoundPlaintext::deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != 32) {
        throw MalformedPlaintext("round plaintext must be 32 bytes, got " +
                                 std::to_string(bytes.size()));
    }
    RoundPlaintext out;
    out.cumulative_sum = from_be_bytes(bytes.subspan<0, 16>());
    out.salt = from_be_bytes(bytes.subspan<16, 16>());
    return out;
}

void Prng::fill_bytes(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t word = engine_();
        for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
            out[i] = static_cast<std::uint8_t>(word & 0xff);
            word >>= 8;
        }
    }
}

std::uint64_t Prng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw >= limit);
    return draw % bound;
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
    ensure_sodium_ready();
    std::array<std::uint8_t, 32> out;
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

Commitment commit(u128 value, u128 salt) {
    std::array<std::uint8_t, 32> preimage;
    auto value_bytes = to_be_bytes(value);
    auto salt_bytes = to_be_bytes(salt);
    std::memcpy(preimage.data(), value_bytes.data(), 16);
    std::memcpy(preimage.data() + 16, salt_bytes.data(), 16);
    return Commitment{sha256(preimage)};
}

bool verify_commitment(const Commitment& c, u128 value, u128 salt) {
    ensure_sodium_ready();
    const Commitment recomputed = commit(value, salt);
    return sodium_memcmp(recomputed.digest.data(), c.digest.data(), 32) == 0;
}

KeyPair keygen(Prng& rng) {
    ensure_sodium_ready();
    std::array<std::uint8_t, crypto_box_SEEDBYTES> seed;
    rng.fill_bytes(seed);
    KeyPair pair;
    pair.public_key.resize(crypto_box_PUBLICKEYBYTES);
    pair.secret_key.resize(crypto_box_SECRETKEYBYTES);
    crypto_box_seed_keypair(pair.public_key.data(), pair.secret_key.data(), seed.data());
    return pair;
}

CipherEnvelope encrypt(const RoundPlaintext& plaintext, std::span<const std::uint8_t> public_key,
                       Prng& rng) {
    ensure_sodium_ready();
    if (public_key.size() != crypto_box_PUBLICKEYBYTES) {
        throw std::invalid_argument("recipient public key must be 32 bytes");
    }

    std::array<std::uint8_t, crypto_box_SEEDBYTES> ephemeral_seed;
    rng.fill_bytes(ephemeral_seed);
    std::array<std::uint8_t, crypto_box_PUBLICKEYBYTES> epk;
    std::array<std::uint8_t, crypto_box_SECRETKEYBYTES> esk;
    crypto_box_seed_keypair(epk.data(), esk.data(), ephemeral_seed.data());

    const auto payload = plaintext.serialize();
    const auto nonce = seal_nonce(epk, public_key);

    CipherEnvelope envelope;
    envelope.bytes.resize(kEphemeralKeyBytes + payload.size() + kMacBytes);
    std::memcpy(envelope.bytes.data(), epk.data(), kEphemeralKeyBytes);
    if (crypto_box_easy(envelope.bytes.data() + kEphemeralKeyBytes, payload.data(),
                        payload.size(), nonce.data(), public_key.data(), esk.data()) != 0) {
        throw std::runtime_error("sealed-box encryption failed");
    }
    sodium_memzero(esk.data(), esk.size());
    return envelope;
}

RoundPlaintext decrypt(const CipherEnvelope& envelope, std::span<const std::uint8_t> secret_key) {
    ensure_sodium_ready();
    if (secret_key.size() != crypto_box_SECRETKEYBYTES) {
        throw std::invalid_argument("secret key must be 32 bytes");
    }
    if (envelope.bytes.size() < kSealOverhead) {
        throw IntegrityFailure("envelope truncated below the sealed-box minimum");
    }

    std::array<std::uint8_t, crypto_box_PUBLICKEYBYTES> own_pk;
    crypto_scalarmult_base(own_pk.data(), secret_key.data());

    const std::span<const std::uint8_t> epk{envelope.bytes.data(), kEphemeralKeyBytes};
    const auto nonce = seal_nonce(epk, own_pk);

    std::vector<std::uint8_t> payload(envelope.bytes.size() - kSealOverhead);
    if (crypto_box_open_easy(payload.data(), envelope.bytes.data() + kEphemeralKeyBytes,
                             envelope.bytes.size() - kEphemeralKeyBytes, nonce.data(), epk.data(),
                             secret_key.data()) != 0) {
        throw IntegrityFailure("envelope failed authentication");
    }
    if (payload.size() != 32) {
        throw MalformedPlaintext("decrypted payload is " + std::to_string(payload.size()) +
                                 " bytes, expected 32");
    }
    return RoundPlaintext::deserialize(payload);
}

}  // namespace hypersum
