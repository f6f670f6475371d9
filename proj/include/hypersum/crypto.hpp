#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hypersum/value128.hpp"

namespace hypersum {

/// SHA-256 digest binding a (value, salt) pair. The all-zero digest is
/// reserved as the "empty slot" sentinel and never produced by commit().
struct Commitment {
    std::array<std::uint8_t, 32> digest{};

    auto operator<=>(const Commitment&) const = default;

    bool is_zero() const;
    std::string hex() const;
    static Commitment from_hex(std::string_view hex);
};

/// X25519 keypair for sealed-box channels between paired parties.
struct KeyPair {
    std::vector<std::uint8_t> public_key;
    std::vector<std::uint8_t> secret_key;
};

/// Sealed ciphertext: ephemeral public key followed by an authenticated box.
/// Tampering or the wrong secret key fails detectably on open.
struct CipherEnvelope {
    std::vector<std::uint8_t> bytes;

    bool operator==(const CipherEnvelope&) const = default;
};

/// One stage's exchanged payload: the sender's cumulative sum and the salt
/// behind its live commitment. Serializes to exactly 32 bytes
/// (16-byte big-endian sum || 16-byte big-endian salt).
struct RoundPlaintext {
    u128 cumulative_sum = 0;
    u128 salt = 0;

    bool operator==(const RoundPlaintext&) const = default;

    std::array<std::uint8_t, 32> serialize() const;
    static RoundPlaintext deserialize(std::span<const std::uint8_t> bytes);
};

/// Deterministic seeded generator owned by exactly one caller. Draws feed
/// masks, salts and key seeds; fixed seed gives a fixed sequence.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw from [0, 2^53).
    u128 draw53() { return u128{engine_() >> 11}; }

    void fill_bytes(std::span<std::uint8_t> out);

    /// Uniform draw from [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

/// Salt/mask draw from the 2^53 space.
inline u128 prng_draw(Prng& rng) { return rng.draw53(); }

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

/// SHA-256 over the canonical 32-byte encoding of (value, salt).
Commitment commit(u128 value, u128 salt);
bool verify_commitment(const Commitment& c, u128 value, u128 salt);

KeyPair keygen(Prng& rng);

/// Seals a round plaintext to the recipient's public key. The ephemeral key
/// comes from `rng`, so repeated calls give distinct ciphertexts while a
/// fixed generator state reproduces them exactly.
CipherEnvelope encrypt(const RoundPlaintext& plaintext, std::span<const std::uint8_t> public_key,
                       Prng& rng);

/// Opens a sealed envelope with the recipient secret key.
/// Throws IntegrityFailure on tampering or a wrong key, MalformedPlaintext
/// when the authenticated payload is not exactly 32 bytes.
RoundPlaintext decrypt(const CipherEnvelope& envelope, std::span<const std::uint8_t> secret_key);

}  // namespace hypersum
