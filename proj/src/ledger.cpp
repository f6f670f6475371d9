#include "hypersum/ledger.hpp"

#include <cstring>
#include <limits>
#include <stdexcept>

#include "hypersum/errors.hpp"

namespace hypersum {

std::string address_hex(const Address& addr) { return bytes_to_hex(addr); }

Address address_from_hex(std::string_view hex) {
    const auto bytes = hex_to_bytes(hex);
    if (bytes.size() != 20) throw std::invalid_argument("address hex must be 40 digits");
    Address addr;
    std::memcpy(addr.data(), bytes.data(), 20);
    return addr;
}

namespace {

ProvingSecret draw_proving_secret(Prng& rng) {
    ProvingSecret secret;
    rng.fill_bytes(secret);
    return secret;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    return a > kMax - b ? kMax : a + b;
}

}  // namespace

Ledger::Ledger(std::uint64_t registration_start, std::uint64_t registration_limit, Prng& rng)
    : registration_start_(registration_start),
      registration_limit_(registration_limit),
      proving_secret_(draw_proving_secret(rng)),
      backend_(proving_secret_) {
    if (registration_limit < 1) {
        throw InvalidWindow("registration window must span at least one block");
    }
}

void Ledger::advance_block(std::uint64_t blocks) {
    if (blocks < 1) throw std::invalid_argument("block advance must be at least 1");
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    block_height_ = block_height_ > kMax - blocks ? kMax : block_height_ + blocks;
}

void Ledger::register_party(const Address& sender, const Commitment& commitment_a,
                            const Commitment& commitment_b,
                            std::span<const std::uint8_t> public_key) {
    const std::uint64_t window_end = saturating_add(registration_start_, registration_limit_);
    if (block_height_ < registration_start_) {
        throw WindowNotOpen("registration opens at block " + std::to_string(registration_start_));
    }
    if (block_height_ > window_end || registration_closed_) {
        throw WindowClosed("registration closed at block " + std::to_string(window_end));
    }
    if (public_keys_.contains(sender)) {
        throw AlreadyRegistered("address " + address_hex(sender) + " already registered");
    }
    if (public_key.size() != 32) {
        throw std::invalid_argument("public key must be 32 bytes");
    }
    if (commitment_a.is_zero() || commitment_b.is_zero()) {
        throw ZeroCommitment("the zero digest is reserved as the empty-slot sentinel");
    }

    registration_ids_[sender] = static_cast<PartyIndex>(registered_users_.size());
    commitments_a_[sender] = commitment_a;
    commitments_b_[sender] = commitment_b;
    temp_commitments_a_[sender] = Commitment{};
    temp_commitments_b_[sender] = Commitment{};
    public_keys_[sender] = std::vector<std::uint8_t>(public_key.begin(), public_key.end());
    registered_users_.push_back(sender);
}

void Ledger::close_registration() {
    if (registration_closed_) throw std::logic_error("registration already closed");
    const std::uint64_t window_end = saturating_add(registration_start_, registration_limit_);
    if (block_height_ <= window_end) {
        throw WindowStillOpen("window open until block " + std::to_string(window_end));
    }
    max_stage_ = dimension_count(registered_users_.size());
    current_stage_ = 0;
    proofs_verified_count_ = 0;
    registration_closed_ = true;
}

PartyIndex Ledger::peer_id(HypercubeConfig config, PartyIndex id) const {
    return peer_index(id, current_stage_, max_stage_, config);
}

void Ledger::require_registered(const Address& addr) const {
    if (!registration_ids_.contains(addr)) {
        throw UnknownAddress("address " + address_hex(addr) + " is not registered");
    }
}

void Ledger::submit(const Address& sender, CipherEnvelope envelope_a, CipherEnvelope envelope_b) {
    if (!registration_closed_) {
        throw RegistrationOpen("submissions start after the registration window closes");
    }
    if (session_complete()) {
        throw SessionComplete("all " + std::to_string(max_stage_) + " stages completed");
    }
    const auto it = registration_ids_.find(sender);
    if (it == registration_ids_.end()) {
        throw NotRegistered("address " + address_hex(sender) + " is not registered");
    }
    if (auto last = last_submit_stage_.find(sender);
        last != last_submit_stage_.end() && last->second == current_stage_) {
        throw DuplicateSubmission("one submission per party per stage");
    }

    const Address peer_a = registered_users_[peer_id(HypercubeConfig::A, it->second)];
    const Address peer_b = registered_users_[peer_id(HypercubeConfig::B, it->second)];
    secret_messages_a_[{sender, peer_a}] = {std::move(envelope_a), current_stage_};
    secret_messages_b_[{sender, peer_b}] = {std::move(envelope_b), current_stage_};
    last_submit_stage_[sender] = current_stage_;
}

void Ledger::swap_in_next(std::map<Address, Commitment>& live,
                          std::map<Address, Commitment>& temp, const Address& sender,
                          const Address& peer, const Commitment& next) {
    if (temp[peer].is_zero()) {
        temp[sender] = next;
    } else {
        live[sender] = next;
        live[peer] = temp[peer];
        temp[peer] = Commitment{};
    }
}

void Ledger::verify(const Address& sender, const Proof& proof_a, const Proof& proof_b,
                    const Commitment& next_commitment_a, const Commitment& next_commitment_b) {
    if (!registration_closed_) {
        throw RegistrationOpen("verification starts after the registration window closes");
    }
    if (session_complete()) {
        throw SessionComplete("all " + std::to_string(max_stage_) + " stages completed");
    }
    const auto it = registration_ids_.find(sender);
    if (it == registration_ids_.end()) {
        throw NotRegistered("address " + address_hex(sender) + " is not registered");
    }
    if (auto last = last_verify_stage_.find(sender);
        last != last_verify_stage_.end() && last->second == current_stage_) {
        throw AlreadyVerified("one verification per party per stage");
    }
    if (next_commitment_a.is_zero() || next_commitment_b.is_zero()) {
        throw ZeroCommitment("the zero digest is reserved as the empty-slot sentinel");
    }

    const Address peer_a = registered_users_[peer_id(HypercubeConfig::A, it->second)];
    const Address peer_b = registered_users_[peer_id(HypercubeConfig::B, it->second)];

    const auto env_a = secret_messages_a_.find({peer_a, sender});
    if (env_a == secret_messages_a_.end() || env_a->second.stage != current_stage_) {
        throw MissingPeerMessage("no current-stage message from peer " + address_hex(peer_a));
    }
    const auto env_b = secret_messages_b_.find({peer_b, sender});
    if (env_b == secret_messages_b_.end() || env_b->second.stage != current_stage_) {
        throw MissingPeerMessage("no current-stage message from peer " + address_hex(peer_b));
    }

    const SummationStatement statement_a{commitments_a_.at(sender), commitments_a_.at(peer_a),
                                         next_commitment_a};
    const SummationStatement statement_b{commitments_b_.at(sender), commitments_b_.at(peer_b),
                                         next_commitment_b};
    if (!backend_.verify(proof_a, statement_a) || !backend_.verify(proof_b, statement_b)) {
        throw ProofRejected("proof does not bind the live commitments");
    }

    last_verify_stage_[sender] = current_stage_;
    proofs_verified_count_ += 1;
    if (proofs_verified_count_ == registered_users_.size()) {
        current_stage_ += 1;
        proofs_verified_count_ = 0;
    }
    swap_in_next(commitments_a_, temp_commitments_a_, sender, peer_a, next_commitment_a);
    swap_in_next(commitments_b_, temp_commitments_b_, sender, peer_b, next_commitment_b);
}

std::span<const std::uint8_t> Ledger::public_key(const Address& addr) const {
    require_registered(addr);
    return public_keys_.at(addr);
}

std::pair<Commitment, Commitment> Ledger::commitments(const Address& addr) const {
    require_registered(addr);
    return {commitments_a_.at(addr), commitments_b_.at(addr)};
}

std::pair<Commitment, Commitment> Ledger::temp_commitments(const Address& addr) const {
    require_registered(addr);
    return {temp_commitments_a_.at(addr), temp_commitments_b_.at(addr)};
}

const CipherEnvelope& Ledger::peer_envelope(HypercubeConfig config, const Address& peer,
                                            const Address& recipient) const {
    require_registered(peer);
    require_registered(recipient);
    const auto& box = mailbox(config);
    const auto it = box.find({peer, recipient});
    if (it == box.end()) {
        throw MissingPeerMessage("no message from " + address_hex(peer) + " to " +
                                 address_hex(recipient));
    }
    return it->second.envelope;
}

PartyIndex Ledger::registration_id(const Address& addr) const {
    require_registered(addr);
    return registration_ids_.at(addr);
}

Address Ledger::peer_address(HypercubeConfig config, const Address& addr) const {
    require_registered(addr);
    if (!registration_closed_) {
        throw RegistrationOpen("pairings exist only after the registration window closes");
    }
    if (session_complete()) {
        throw SessionComplete("all stages completed");
    }
    return registered_users_[peer_id(config, registration_ids_.at(addr))];
}

nlohmann::ordered_json Ledger::snapshot() const {
    nlohmann::ordered_json snap;
    snap["block_height"] = block_height_;
    snap["registration_window"] = {{"start", registration_start_},
                                   {"limit", registration_limit_}};
    snap["registration_closed"] = registration_closed_;
    snap["current_stage"] = current_stage_;
    snap["max_stage"] = max_stage_;
    snap["proofs_verified_count"] = proofs_verified_count_;

    nlohmann::ordered_json users = nlohmann::ordered_json::array();
    for (const Address& addr : registered_users_) users.push_back(address_hex(addr));
    snap["registered_users"] = std::move(users);

    auto commitment_map = [this](const std::map<Address, Commitment>& source) {
        nlohmann::ordered_json out = nlohmann::ordered_json::object();
        for (const Address& addr : registered_users_) {
            out[address_hex(addr)] = source.at(addr).hex();
        }
        return out;
    };

    nlohmann::ordered_json ids = nlohmann::ordered_json::object();
    nlohmann::ordered_json keys = nlohmann::ordered_json::object();
    for (const Address& addr : registered_users_) {
        ids[address_hex(addr)] = registration_ids_.at(addr);
        keys[address_hex(addr)] = bytes_to_hex(public_keys_.at(addr));
    }
    snap["registration_ids"] = std::move(ids);
    snap["public_keys"] = std::move(keys);
    snap["commitments_a"] = commitment_map(commitments_a_);
    snap["commitments_b"] = commitment_map(commitments_b_);
    snap["temp_commitments_a"] = commitment_map(temp_commitments_a_);
    snap["temp_commitments_b"] = commitment_map(temp_commitments_b_);

    auto mailbox_map = [this](const Mailbox& box) {
        nlohmann::ordered_json out = nlohmann::ordered_json::object();
        for (const Address& sender : registered_users_) {
            nlohmann::ordered_json inner = nlohmann::ordered_json::object();
            for (const Address& recipient : registered_users_) {
                const auto it = box.find({sender, recipient});
                if (it != box.end()) {
                    inner[address_hex(recipient)] = bytes_to_hex(it->second.envelope.bytes);
                }
            }
            if (!inner.empty()) out[address_hex(sender)] = std::move(inner);
        }
        return out;
    };
    snap["secret_messages_a"] = mailbox_map(secret_messages_a_);
    snap["secret_messages_b"] = mailbox_map(secret_messages_b_);
    return snap;
}

}  // namespace hypersum
