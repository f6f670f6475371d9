#include "hypersum/party.hpp"

#include <stdexcept>

#include "hypersum/errors.hpp"

namespace hypersum {

std::string SecureNumber::encode() const {
    return to_hex32(masked_secret) + ":" + to_hex32(mask) + ":" + to_hex32(salt_masked) + ":" +
           to_hex32(salt_mask);
}

SecureNumber SecureNumber::decode(std::string_view text) {
    SecureNumber out;
    u128* fields[4] = {&out.masked_secret, &out.mask, &out.salt_masked, &out.salt_mask};
    std::size_t start = 0;
    for (int i = 0; i < 4; ++i) {
        const std::size_t end = i == 3 ? text.size() : text.find(':', start);
        if (end == std::string_view::npos) {
            throw std::invalid_argument("secure number needs four ':'-separated fields");
        }
        *fields[i] = u128_from_hex(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

Party Party::create_registration(const Address& address, u128 secret, Prng& rng) {
    const MaskingDraws draws{prng_draw(rng), prng_draw(rng), prng_draw(rng)};
    return create_registration(address, secret, draws, rng);
}

Party Party::create_registration(const Address& address, u128 secret, const MaskingDraws& draws,
                                 Prng& rng) {
    if (secret >= kSecretBound) {
        throw SecretOutOfRange("secret value must lie in [0, 2^32)");
    }
    Party p;
    p.address_ = address;
    p.secret_x_ = secret;
    p.mask_e_ = draws.mask;
    p.sum_a_ = secret + draws.mask;
    p.sum_b_ = draws.mask;
    p.salt_a_ = draws.salt_a;
    p.salt_b_ = draws.salt_b;
    p.keypair_ = keygen(rng);
    p.registration_ = RegistrationPayload{commit(p.sum_a_, p.salt_a_),
                                          commit(p.sum_b_, p.salt_b_), p.keypair_.public_key};
    p.secure_number_ = SecureNumber{p.sum_a_, p.mask_e_, p.salt_a_, p.salt_b_};
    return p;
}

void Party::assign_registration(PartyIndex id, std::uint32_t stage_count) {
    registration_id_ = id;
    stage_count_ = stage_count;
}

PartyIndex Party::registration_id() const {
    if (!registration_id_) throw std::logic_error("registration id not assigned yet");
    return *registration_id_;
}

std::pair<CipherEnvelope, CipherEnvelope> Party::build_submission(
    std::span<const std::uint8_t> pk_peer_a, std::span<const std::uint8_t> pk_peer_b,
    Prng& rng) const {
    CipherEnvelope envelope_a = encrypt(RoundPlaintext{sum_a_, salt_a_}, pk_peer_a, rng);
    CipherEnvelope envelope_b = encrypt(RoundPlaintext{sum_b_, salt_b_}, pk_peer_b, rng);
    return {std::move(envelope_a), std::move(envelope_b)};
}

RoundOutputs Party::process_round(const RoundInputs& inputs, const ProofBackend& backend,
                                  Prng& rng) {
    if (stage_count_ == 0) throw std::logic_error("registration id not assigned yet");
    if (stages_completed_ >= stage_count_) {
        throw SessionComplete("all stages already processed");
    }

    const RoundPlaintext from_peer_a = decrypt(inputs.envelope_a, keypair_.secret_key);
    const RoundPlaintext from_peer_b = decrypt(inputs.envelope_b, keypair_.secret_key);

    // The ledger's live commitments must open to what we hold and what the
    // peer sent; a mismatch means a stale view or a cheating peer.
    if (!verify_commitment(inputs.own_commitment_a, sum_a_, salt_a_) ||
        !verify_commitment(inputs.own_commitment_b, sum_b_, salt_b_)) {
        throw StatementViolated("own ledger commitments do not open to the held sums");
    }
    if (!verify_commitment(inputs.peer_commitment_a, from_peer_a.cumulative_sum,
                           from_peer_a.salt)) {
        throw StatementViolated("peer message does not open the peer's ledger commitment");
    }
    if (!verify_commitment(inputs.peer_commitment_b, from_peer_b.cumulative_sum,
                           from_peer_b.salt)) {
        throw StatementViolated("peer message does not open the peer's ledger commitment");
    }

    const u128 salt_next_a = prng_draw(rng);
    const u128 salt_next_b = prng_draw(rng);
    const u128 sum_next_a = sum_a_ + from_peer_a.cumulative_sum;
    const u128 sum_next_b = sum_b_ + from_peer_b.cumulative_sum;

    RoundOutputs out;
    out.next_commitment_a = commit(sum_next_a, salt_next_a);
    out.next_commitment_b = commit(sum_next_b, salt_next_b);

    const SummationStatement statement_a{inputs.own_commitment_a, inputs.peer_commitment_a,
                                         out.next_commitment_a};
    const SummationStatement statement_b{inputs.own_commitment_b, inputs.peer_commitment_b,
                                         out.next_commitment_b};
    const SummationWitness witness_a{sum_a_, salt_a_, salt_next_a, from_peer_a.cumulative_sum,
                                     from_peer_a.salt};
    const SummationWitness witness_b{sum_b_, salt_b_, salt_next_b, from_peer_b.cumulative_sum,
                                     from_peer_b.salt};
    out.proof_a = backend.prove(witness_a, statement_a);
    out.proof_b = backend.prove(witness_b, statement_b);

    sum_a_ = sum_next_a;
    salt_a_ = salt_next_a;
    sum_b_ = sum_next_b;
    salt_b_ = salt_next_b;
    stages_completed_ += 1;
    return out;
}

u128 Party::extract_result() const {
    if (stage_count_ == 0 || stages_completed_ < stage_count_) {
        throw SessionIncomplete("completed " + std::to_string(stages_completed_) + " of " +
                                std::to_string(stage_count_) + " stages");
    }
    return sum_a_ - sum_b_;
}

}  // namespace hypersum
