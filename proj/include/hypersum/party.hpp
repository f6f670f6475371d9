#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "hypersum/crypto.hpp"
#include "hypersum/ledger.hpp"
#include "hypersum/proof_system.hpp"
#include "hypersum/protocol_math.hpp"

namespace hypersum {

/// Portable record of a party's registration-time values, as four
/// fixed-width lowercase-hex fields joined by ':' in the order
/// masked secret, mask, salt behind the masked commitment, salt behind
/// the mask commitment.
struct SecureNumber {
    u128 masked_secret = 0;
    u128 mask = 0;
    u128 salt_masked = 0;
    u128 salt_mask = 0;

    bool operator==(const SecureNumber&) const = default;

    std::string encode() const;
    static SecureNumber decode(std::string_view text);
};

/// What a party puts on the ledger when registering.
struct RegistrationPayload {
    Commitment commitment_a;
    Commitment commitment_b;
    std::vector<std::uint8_t> public_key;
};

/// Explicit masking values, used where tests need degenerate randomness.
struct MaskingDraws {
    u128 mask = 0;
    u128 salt_a = 0;
    u128 salt_b = 0;
};

/// Ledger-side context one round of processing consumes: the two envelopes
/// addressed to this party and the live commitments of itself and its peers.
struct RoundInputs {
    CipherEnvelope envelope_a;
    CipherEnvelope envelope_b;
    Commitment own_commitment_a;
    Commitment peer_commitment_a;
    Commitment own_commitment_b;
    Commitment peer_commitment_b;
};

struct RoundOutputs {
    Proof proof_a;
    Proof proof_b;
    Commitment next_commitment_a;
    Commitment next_commitment_b;
};

/// One participant. Owns its secret, mask, cumulative sums and live salts;
/// talks to the world only through registration payloads, sealed envelopes
/// and proofs. Owned by exactly one agent, never shared mutably.
class Party {
public:
    /// Draws the mask and both salts from `rng`, commits (x + e) and e,
    /// and generates the channel keypair. Throws SecretOutOfRange for
    /// secrets at or above 2^32.
    static Party create_registration(const Address& address, u128 secret, Prng& rng);

    /// Same, with the masking values forced instead of drawn.
    static Party create_registration(const Address& address, u128 secret,
                                     const MaskingDraws& draws, Prng& rng);

    const Address& address() const { return address_; }
    const RegistrationPayload& registration() const { return registration_; }
    const SecureNumber& secure_number() const { return secure_number_; }

    /// Called after the ledger closes registration.
    void assign_registration(PartyIndex id, std::uint32_t stage_count);
    PartyIndex registration_id() const;

    /// Seals the current (sum, salt) of each configuration to the matching
    /// peer's public key. Stale pairings produce well-formed envelopes; the
    /// ledger is the one that rejects them.
    std::pair<CipherEnvelope, CipherEnvelope> build_submission(
        std::span<const std::uint8_t> pk_peer_a, std::span<const std::uint8_t> pk_peer_b,
        Prng& rng) const;

    /// Decrypts both peer messages, folds them into the cumulative sums
    /// under fresh salts, and proves both summation statements.
    /// Throws IntegrityFailure on a bad envelope and StatementViolated when
    /// the decrypted values do not open the ledger's commitments.
    RoundOutputs process_round(const RoundInputs& inputs, const ProofBackend& backend, Prng& rng);

    /// The masked-sum aggregate minus the mask aggregate, i.e. the sum of
    /// every party's secret. Throws SessionIncomplete before the last stage.
    u128 extract_result() const;

    u128 sum_a() const { return sum_a_; }
    u128 sum_b() const { return sum_b_; }
    u128 salt_a() const { return salt_a_; }
    u128 salt_b() const { return salt_b_; }
    u128 secret() const { return secret_x_; }
    u128 mask() const { return mask_e_; }
    std::uint32_t stages_completed() const { return stages_completed_; }

private:
    Party() = default;

    Address address_{};
    u128 secret_x_ = 0;
    u128 mask_e_ = 0;
    u128 sum_a_ = 0;
    u128 sum_b_ = 0;
    u128 salt_a_ = 0;
    u128 salt_b_ = 0;
    KeyPair keypair_;
    RegistrationPayload registration_;
    SecureNumber secure_number_;
    std::optional<PartyIndex> registration_id_;
    std::uint32_t stage_count_ = 0;
    std::uint32_t stages_completed_ = 0;
};

}  // namespace hypersum
