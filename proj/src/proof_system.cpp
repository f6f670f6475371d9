#include "hypersum/proof_system.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

#include "hypersum/errors.hpp"

namespace hypersum {

std::array<std::uint8_t, 96> SummationStatement::encode() const {
    std::array<std::uint8_t, 96> out;
    std::memcpy(out.data(), sum_hash.digest.data(), 32);
    std::memcpy(out.data() + 32, sum_pair_hash.digest.data(), 32);
    std::memcpy(out.data() + 64, sum_next_hash.digest.data(), 32);
    return out;
}

std::array<std::uint8_t, 128> Proof::serialize() const {
    std::array<std::uint8_t, 128> out;
    std::memcpy(out.data(), tag.data(), 32);
    const auto publics = bound_publics.encode();
    std::memcpy(out.data() + 32, publics.data(), 96);
    return out;
}

Proof Proof::deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != 128) {
        throw std::invalid_argument("proof must be 128 bytes");
    }
    Proof p;
    std::memcpy(p.tag.data(), bytes.data(), 32);
    std::memcpy(p.bound_publics.sum_hash.digest.data(), bytes.data() + 32, 32);
    std::memcpy(p.bound_publics.sum_pair_hash.digest.data(), bytes.data() + 64, 32);
    std::memcpy(p.bound_publics.sum_next_hash.digest.data(), bytes.data() + 96, 32);
    return p;
}

std::string Proof::hex() const { return bytes_to_hex(serialize()); }

bool statement_holds(const SummationWitness& w, const SummationStatement& s) {
    const u128 sum_next = w.sum + w.sum_pair;
    if (sum_next < w.sum) {
        throw SumOverflow("sum + sum_pair wrapped past 128 bits");
    }
    return verify_commitment(s.sum_hash, w.sum, w.salt) &&
           verify_commitment(s.sum_pair_hash, w.sum_pair, w.salt_pair) &&
           verify_commitment(s.sum_next_hash, sum_next, w.salt_next);
}

namespace {

std::array<std::uint8_t, 32> statement_tag(const SummationStatement& s,
                                           const ProvingSecret& key) {
    const auto publics = s.encode();
    std::array<std::uint8_t, 32> tag;
    crypto_auth_hmacsha256(tag.data(), publics.data(), publics.size(), key.data());
    return tag;
}

}  // namespace

Proof prove(const SummationWitness& w, const SummationStatement& s, const ProvingSecret& key) {
    if (!statement_holds(w, s)) {
        throw StatementViolated("witness does not satisfy the summation statement");
    }
    return Proof{statement_tag(s, key), s};
}

bool verify_proof(const Proof& p, const SummationStatement& s, const ProvingSecret& key) {
    if (!(p.bound_publics == s)) return false;
    const auto expected = statement_tag(s, key);
    return sodium_memcmp(expected.data(), p.tag.data(), expected.size()) == 0;
}

}  // namespace hypersum
