#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypersum/crypto.hpp"
#include "hypersum/proof_system.hpp"
#include "hypersum/protocol_math.hpp"

namespace hypersum {

/// 20-byte account identifier, rendered as lowercase hex.
using Address = std::array<std::uint8_t, 20>;

std::string address_hex(const Address& addr);
Address address_from_hex(std::string_view hex);

/// Deterministic emulation of the aggregation contract: a registration
/// window in block time, per-party commitment and mailbox mappings, proof
/// verification with temp-commitment swapping, and stage advancement once
/// every registered party has verified.
///
/// All mutations run strictly serially; every method either completes or
/// throws with the state unchanged.
class Ledger {
public:
    /// Deployment. Registrations are accepted at block heights
    /// [registration_start, registration_start + registration_limit].
    /// Draws the session proving secret (the trusted-setup analog).
    Ledger(std::uint64_t registration_start, std::uint64_t registration_limit, Prng& rng);

    void advance_block(std::uint64_t blocks);

    void register_party(const Address& sender, const Commitment& commitment_a,
                        const Commitment& commitment_b, std::span<const std::uint8_t> public_key);

    /// Freezes the group once the window has passed; fixes max_stage = log2(N).
    void close_registration();

    /// Stores both envelopes in the stage's mailboxes, keyed
    /// (sender, peer) with the peers derived from the current stage.
    void submit(const Address& sender, CipherEnvelope envelope_a, CipherEnvelope envelope_b);

    /// Checks both proofs against statements built from the live commitments
    /// and the claimed next commitments, then runs the temp-commitment swap
    /// so a pair's live commitments change together regardless of which
    /// member verified first. The Nth verification of a stage advances it.
    void verify(const Address& sender, const Proof& proof_a, const Proof& proof_b,
                const Commitment& next_commitment_a, const Commitment& next_commitment_b);

    // --- reads ---
    std::span<const std::uint8_t> public_key(const Address& addr) const;
    std::pair<Commitment, Commitment> commitments(const Address& addr) const;
    std::pair<Commitment, Commitment> temp_commitments(const Address& addr) const;
    const CipherEnvelope& peer_envelope(HypercubeConfig config, const Address& peer,
                                        const Address& recipient) const;
    PartyIndex registration_id(const Address& addr) const;
    const std::vector<Address>& registered() const { return registered_users_; }
    Address peer_address(HypercubeConfig config, const Address& addr) const;

    StageIndex stage() const { return current_stage_; }
    std::uint32_t max_stage() const { return max_stage_; }
    std::uint32_t proofs_verified_count() const { return proofs_verified_count_; }
    std::uint64_t block_height() const { return block_height_; }
    bool registration_closed() const { return registration_closed_; }
    bool session_complete() const {
        return registration_closed_ && current_stage_ == max_stage_;
    }

    const ProofBackend& proof_backend() const { return backend_; }

    /// Canonical JSON snapshot of the contract state: stable field order,
    /// per-user mappings in registration order, all binary data as
    /// lowercase hex. The proving secret is not part of the public state.
    nlohmann::ordered_json snapshot() const;

private:
    struct StampedEnvelope {
        CipherEnvelope envelope;
        StageIndex stage = 0;
    };
    using Mailbox = std::map<std::pair<Address, Address>, StampedEnvelope>;

    const Mailbox& mailbox(HypercubeConfig config) const {
        return config == HypercubeConfig::A ? secret_messages_a_ : secret_messages_b_;
    }
    void require_registered(const Address& addr) const;
    PartyIndex peer_id(HypercubeConfig config, PartyIndex id) const;
    static void swap_in_next(std::map<Address, Commitment>& live,
                             std::map<Address, Commitment>& temp, const Address& sender,
                             const Address& peer, const Commitment& next);

    // contract mappings
    std::map<Address, PartyIndex> registration_ids_;
    std::vector<Address> registered_users_;
    std::map<Address, Commitment> commitments_a_;
    std::map<Address, Commitment> commitments_b_;
    std::map<Address, Commitment> temp_commitments_a_;
    std::map<Address, Commitment> temp_commitments_b_;
    std::map<Address, std::vector<std::uint8_t>> public_keys_;
    Mailbox secret_messages_a_;
    Mailbox secret_messages_b_;

    // counters and window
    StageIndex current_stage_ = 0;
    std::uint32_t max_stage_ = 0;
    std::uint32_t proofs_verified_count_ = 0;
    std::uint64_t registration_start_ = 0;
    std::uint64_t registration_limit_ = 0;
    std::uint64_t block_height_ = 0;
    bool registration_closed_ = false;

    // per-stage guards (bookkeeping, not contract mappings)
    std::map<Address, StageIndex> last_submit_stage_;
    std::map<Address, StageIndex> last_verify_stage_;

    ProvingSecret proving_secret_{};
    OracleProofBackend backend_;
};

}  // namespace hypersum
