#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "hypersum/crypto.hpp"
#include "hypersum/value128.hpp"

namespace hypersum {

/// Public inputs of one summation step: the prover's live commitment, the
/// peer's live commitment and the claimed next commitment.
struct SummationStatement {
    Commitment sum_hash;
    Commitment sum_pair_hash;
    Commitment sum_next_hash;

    bool operator==(const SummationStatement&) const = default;

    std::array<std::uint8_t, 96> encode() const;
};

/// Private inputs: the prover's cumulative sum and salt, the peer's
/// decrypted sum and salt, and the fresh salt behind the next commitment.
struct SummationWitness {
    u128 sum = 0;
    u128 salt = 0;
    u128 salt_next = 0;
    u128 sum_pair = 0;
    u128 salt_pair = 0;
};

/// Authenticator over a statement's public inputs. Only prove() mints tags
/// that verify, and a tag binds exactly the statement it was minted for.
struct Proof {
    std::array<std::uint8_t, 32> tag{};
    SummationStatement bound_publics;

    bool operator==(const Proof&) const = default;

    /// 32-byte tag || 96-byte publics.
    std::array<std::uint8_t, 128> serialize() const;
    static Proof deserialize(std::span<const std::uint8_t> bytes);
    std::string hex() const;
};

/// Per-deployment proving secret, the in-simulation analog of a trusted
/// setup. Holding it allows minting tags, so the backend models soundness
/// and completeness but is not zero-knowledge against the binary's owner.
using ProvingSecret = std::array<std::uint8_t, 32>;

/// The constraint system: the witness opens all three commitments and the
/// next commitment binds sum + sum_pair.
/// Throws SumOverflow if the 128-bit addition wraps (unreachable within the
/// declared value domains).
bool statement_holds(const SummationWitness& w, const SummationStatement& s);

/// Mints a proof iff the statement holds; throws StatementViolated otherwise.
Proof prove(const SummationWitness& w, const SummationStatement& s, const ProvingSecret& key);

/// True iff the tag authenticates `s` under `key` and the proof binds `s`.
/// Consumes only public data.
bool verify_proof(const Proof& p, const SummationStatement& s, const ProvingSecret& key);

/// Narrow prove/verify seam so a genuine SNARK backend (proving key,
/// verification key, on-ledger verifier) can replace the oracle without
/// touching ledger or party code.
class ProofBackend {
public:
    virtual ~ProofBackend() = default;
    virtual Proof prove(const SummationWitness& w, const SummationStatement& s) const = 0;
    virtual bool verify(const Proof& p, const SummationStatement& s) const = 0;
};

class OracleProofBackend final : public ProofBackend {
public:
    explicit OracleProofBackend(ProvingSecret secret) : secret_(secret) {}

    Proof prove(const SummationWitness& w, const SummationStatement& s) const override {
        return hypersum::prove(w, s, secret_);
    }
    bool verify(const Proof& p, const SummationStatement& s) const override {
        return verify_proof(p, s, secret_);
    }

private:
    ProvingSecret secret_;
};

}  // namespace hypersum
