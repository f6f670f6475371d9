#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sodium.h>

#include <algorithm>
#include <set>
#include <vector>

#include "hypersum/crypto.hpp"
#include "hypersum/errors.hpp"

using namespace hypersum;

// Digests pinned from an independent SHA-256 implementation (python hashlib)
// over the canonical 32-byte (value || salt) big-endian encoding.
TEST_CASE("commit matches pinned reference digests") {
    CHECK(commit(0, 0).hex() == "66687aadf862bd776c8fc18b8e9f8e20089714856ee233b3902a591d0d5f2925");
    CHECK(commit(5, 9).hex() == "9bbea54361dd852ce75d1e7c3120d4cc2c58789eccf462bbb6d2e35f017da695");
    CHECK(commit(7, 1).hex() == "2fcebc28fa674e0dfdb680d20a68d4ccb313c569b52a704c1ffce5bc9c5c38d6");
    CHECK(commit(7, 2).hex() == "25922ffc0988d44552578a2a56c6d0b6451c00b8062409719f929f5ac7f2d0a8");
    CHECK(commit((u128{1} << 32) - 1, (u128{1} << 53) - 1).hex() ==
          "49d1a392ea414b8e4094d30f3163e6536a6c0391f4b50a0d943c36b7008536d9");
}

TEST_CASE("commit is deterministic and salt-sensitive") {
    CHECK(commit(7, 1) == commit(7, 1));
    CHECK(commit(7, 1) != commit(7, 2));
    CHECK(commit(1, 7) != commit(7, 1));
    CHECK_FALSE(commit(0, 0).is_zero());
}

TEST_CASE("verify_commitment") {
    CHECK(verify_commitment(commit(5, 9), 5, 9));
    CHECK_FALSE(verify_commitment(commit(5, 9), 5, 10));
    CHECK_FALSE(verify_commitment(commit(5, 9), 6, 9));
    CHECK_FALSE(verify_commitment(Commitment{}, 0, 0));  // zero sentinel opens nothing
}

TEST_CASE("identical values under independent salts commit differently") {
    Prng rng(11);
    for (int i = 0; i < 200; ++i) {
        const u128 value = prng_draw(rng);
        const u128 r1 = prng_draw(rng);
        const u128 r2 = prng_draw(rng);
        if (r1 == r2) continue;
        CHECK(commit(value, r1) != commit(value, r2));
    }
}

TEST_CASE("round plaintext layout and bijection") {
    const RoundPlaintext pt{1, 2};
    const auto bytes = pt.serialize();
    CHECK(bytes[15] == 1);
    CHECK(bytes[31] == 2);
    for (std::size_t i = 0; i < 15; ++i) CHECK(bytes[i] == 0);

    Prng rng(42);
    for (int i = 0; i < 500; ++i) {
        const RoundPlaintext original{prng_draw(rng), prng_draw(rng)};
        CHECK(RoundPlaintext::deserialize(original.serialize()) == original);
    }
    CHECK_THROWS_AS(RoundPlaintext::deserialize(std::vector<std::uint8_t>(31)),
                    MalformedPlaintext);
}

TEST_CASE("prng draws are reproducible and within range") {
    Prng a(123);
    Prng b(123);
    for (int i = 0; i < 1000; ++i) CHECK(a.draw53() == b.draw53());

    Prng rng(7);
    u128 total = 0;
    constexpr int kDraws = 100000;
    for (int i = 0; i < kDraws; ++i) {
        const u128 v = rng.draw53();
        REQUIRE(v < kSaltBound);
        total += v;
    }
    const double mean = static_cast<double>(static_cast<unsigned long long>(total / kDraws));
    const double expected = 4503599627370496.0;  // 2^52, midpoint of the range
    CHECK(mean > expected * 0.99);
    CHECK(mean < expected * 1.01);
}

TEST_CASE("keygen is seed-deterministic") {
    Prng a(9);
    Prng b(9);
    const KeyPair ka = keygen(a);
    const KeyPair kb = keygen(b);
    CHECK(ka.public_key == kb.public_key);
    CHECK(ka.secret_key == kb.secret_key);

    Prng c(10);
    CHECK(keygen(c).public_key != ka.public_key);
}

TEST_CASE("encrypt/decrypt round-trip with fresh ephemeral randomness") {
    Prng rng(77);
    const KeyPair recipient = keygen(rng);
    const RoundPlaintext message{123456789, 987654321};

    const CipherEnvelope first = encrypt(message, recipient.public_key, rng);
    const CipherEnvelope second = encrypt(message, recipient.public_key, rng);
    CHECK(first.bytes != second.bytes);

    CHECK(decrypt(first, recipient.secret_key) == message);
    CHECK(decrypt(second, recipient.secret_key) == message);
}

TEST_CASE("decrypt failure modes") {
    Prng rng(78);
    const KeyPair alice = keygen(rng);
    const KeyPair mallory = keygen(rng);
    const RoundPlaintext message{42, 43};
    const CipherEnvelope envelope = encrypt(message, alice.public_key, rng);

    CHECK_THROWS_AS(decrypt(envelope, mallory.secret_key), IntegrityFailure);

    CipherEnvelope tampered = envelope;
    tampered.bytes[40] ^= 0x01;
    CHECK_THROWS_AS(decrypt(tampered, alice.secret_key), IntegrityFailure);

    CipherEnvelope truncated = envelope;
    truncated.bytes.resize(20);
    CHECK_THROWS_AS(decrypt(truncated, alice.secret_key), IntegrityFailure);
}

TEST_CASE("envelopes interoperate with libsodium sealed boxes") {
    REQUIRE(sodium_init() >= 0);
    Prng rng(79);
    const KeyPair recipient = keygen(rng);
    const RoundPlaintext message{1111, 2222};

    // our seal, libsodium open
    const CipherEnvelope envelope = encrypt(message, recipient.public_key, rng);
    std::vector<std::uint8_t> opened(envelope.bytes.size() - crypto_box_SEALBYTES);
    REQUIRE(crypto_box_seal_open(opened.data(), envelope.bytes.data(), envelope.bytes.size(),
                                 recipient.public_key.data(),
                                 recipient.secret_key.data()) == 0);
    CHECK(RoundPlaintext::deserialize(opened) == message);

    // libsodium seal, our open
    const auto payload = message.serialize();
    CipherEnvelope sealed;
    sealed.bytes.resize(payload.size() + crypto_box_SEALBYTES);
    REQUIRE(crypto_box_seal(sealed.bytes.data(), payload.data(), payload.size(),
                            recipient.public_key.data()) == 0);
    CHECK(decrypt(sealed, recipient.secret_key) == message);

    // an authenticated payload of the wrong length is rejected after opening
    const std::vector<std::uint8_t> short_payload(10, 0xab);
    CipherEnvelope short_envelope;
    short_envelope.bytes.resize(short_payload.size() + crypto_box_SEALBYTES);
    REQUIRE(crypto_box_seal(short_envelope.bytes.data(), short_payload.data(),
                            short_payload.size(), recipient.public_key.data()) == 0);
    CHECK_THROWS_AS(decrypt(short_envelope, recipient.secret_key), MalformedPlaintext);
}

TEST_CASE("no commitment collisions across a million random draws") {
    Prng rng(5);
    constexpr std::size_t kPairs = 1'000'000;
    std::vector<std::array<std::uint8_t, 32>> digests;
    digests.reserve(kPairs);
    for (std::size_t i = 0; i < kPairs; ++i) {
        digests.push_back(commit(prng_draw(rng), prng_draw(rng)).digest);
    }
    std::sort(digests.begin(), digests.end());
    CHECK(std::adjacent_find(digests.begin(), digests.end()) == digests.end());
}
