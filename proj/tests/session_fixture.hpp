#pragma once

// Hand-driven session harness for ledger/party tests: registers N parties on
// a fresh ledger and exposes the per-transaction steps the simulator would
// otherwise batch, so tests can interleave and pervert them.

#include <cstdint>
#include <optional>
#include <vector>

#include "hypersum/ledger.hpp"
#include "hypersum/party.hpp"

namespace hypersum::testing {

struct TestSession {
    std::uint32_t dimensions = 0;
    std::optional<Ledger> ledger;
    std::vector<Party> parties;
    std::vector<Prng> rngs;

    explicit TestSession(const std::vector<u128>& secrets, std::uint64_t seed = 1000) {
        const auto n = static_cast<std::uint64_t>(secrets.size());
        dimensions = dimension_count(n);

        Prng deploy_rng(seed);
        ledger.emplace(0, n, deploy_rng);
        for (std::uint64_t i = 0; i < n; ++i) {
            rngs.emplace_back(seed + 17 * (i + 1));
            Address addr{};
            addr[0] = static_cast<std::uint8_t>(i + 1);
            addr[19] = static_cast<std::uint8_t>(i + 1);
            parties.push_back(Party::create_registration(addr, secrets[i], rngs[i]));
            const auto& reg = parties[i].registration();
            ledger->register_party(addr, reg.commitment_a, reg.commitment_b, reg.public_key);
        }
        ledger->advance_block(n + 1);
        ledger->close_registration();
        for (std::uint64_t i = 0; i < n; ++i) {
            parties[i].assign_registration(ledger->registration_id(parties[i].address()),
                                           dimensions);
        }
    }

    void submit_for(PartyIndex i) {
        Party& p = parties[i];
        const Address peer_a = ledger->peer_address(HypercubeConfig::A, p.address());
        const Address peer_b = ledger->peer_address(HypercubeConfig::B, p.address());
        auto [env_a, env_b] =
            p.build_submission(ledger->public_key(peer_a), ledger->public_key(peer_b), rngs[i]);
        ledger->submit(p.address(), std::move(env_a), std::move(env_b));
    }

    void submit_all() {
        for (PartyIndex i = 0; i < parties.size(); ++i) submit_for(i);
    }

    RoundInputs round_inputs(PartyIndex i) const {
        const Party& p = parties[i];
        const Address peer_a = ledger->peer_address(HypercubeConfig::A, p.address());
        const Address peer_b = ledger->peer_address(HypercubeConfig::B, p.address());
        RoundInputs inputs;
        inputs.envelope_a = ledger->peer_envelope(HypercubeConfig::A, peer_a, p.address());
        inputs.envelope_b = ledger->peer_envelope(HypercubeConfig::B, peer_b, p.address());
        const auto own = ledger->commitments(p.address());
        inputs.own_commitment_a = own.first;
        inputs.own_commitment_b = own.second;
        inputs.peer_commitment_a = ledger->commitments(peer_a).first;
        inputs.peer_commitment_b = ledger->commitments(peer_b).second;
        return inputs;
    }

    RoundOutputs process_for(PartyIndex i) {
        return parties[i].process_round(round_inputs(i), ledger->proof_backend(), rngs[i]);
    }

    void verify_for(PartyIndex i, const RoundOutputs& outs) {
        ledger->verify(parties[i].address(), outs.proof_a, outs.proof_b, outs.next_commitment_a,
                       outs.next_commitment_b);
    }

    void verify_in_order(const std::vector<PartyIndex>& order) {
        for (PartyIndex i : order) verify_for(i, process_for(i));
    }

    void run_stage() {
        submit_all();
        std::vector<PartyIndex> order(parties.size());
        for (PartyIndex i = 0; i < order.size(); ++i) order[i] = i;
        verify_in_order(order);
    }

    void run_all_stages() {
        for (std::uint32_t t = 0; t < dimensions; ++t) run_stage();
    }
};

}  // namespace hypersum::testing
