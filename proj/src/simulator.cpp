#include "hypersum/simulator.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "hypersum/errors.hpp"

namespace hypersum {

namespace {

std::vector<std::uint8_t> seed_material(std::string_view domain, std::uint64_t master,
                                        std::uint64_t index) {
    std::vector<std::uint8_t> material(domain.begin(), domain.end());
    for (int shift = 56; shift >= 0; shift -= 8) {
        material.push_back(static_cast<std::uint8_t>(master >> shift));
    }
    for (int shift = 56; shift >= 0; shift -= 8) {
        material.push_back(static_cast<std::uint8_t>(index >> shift));
    }
    return material;
}

std::uint64_t derive_seed(std::string_view domain, std::uint64_t master, std::uint64_t index = 0) {
    const auto digest = sha256(seed_material(domain, master, index));
    std::uint64_t seed = 0;
    for (int i = 0; i < 8; ++i) seed = (seed << 8) | digest[static_cast<std::size_t>(i)];
    return seed;
}

Address derive_address(std::uint64_t master, std::uint64_t index) {
    const auto digest = sha256(seed_material("address", master, index));
    Address addr;
    std::memcpy(addr.data(), digest.data(), addr.size());
    return addr;
}

std::string_view outcome_ok() { return "ok"; }

}  // namespace

std::string_view schedule_name(Schedule s) {
    switch (s) {
        case Schedule::Sequential: return "sequential";
        case Schedule::RandomPermutationPerPhase: return "random-permutation-per-phase";
        case Schedule::AdversarialReverse: return "adversarial-reverse";
    }
    throw std::invalid_argument("unknown schedule");
}

Schedule schedule_from_name(std::string_view name) {
    if (name == "sequential") return Schedule::Sequential;
    if (name == "random-permutation-per-phase") return Schedule::RandomPermutationPerPhase;
    if (name == "adversarial-reverse") return Schedule::AdversarialReverse;
    throw std::invalid_argument("unknown schedule: " + std::string(name));
}

std::string_view fault_name(FaultKind f) {
    switch (f) {
        case FaultKind::ForgeProof: return "forge-proof";
        case FaultKind::WrongWitness: return "wrong-witness";
        case FaultKind::DoubleRegister: return "double-register";
        case FaultKind::ReplayVerify: return "replay-verify";
        case FaultKind::TamperEnvelope: return "tamper-envelope";
    }
    throw std::invalid_argument("unknown fault");
}

FaultKind fault_from_name(std::string_view name) {
    if (name == "forge-proof") return FaultKind::ForgeProof;
    if (name == "wrong-witness") return FaultKind::WrongWitness;
    if (name == "double-register") return FaultKind::DoubleRegister;
    if (name == "replay-verify") return FaultKind::ReplayVerify;
    if (name == "tamper-envelope") return FaultKind::TamperEnvelope;
    throw std::invalid_argument("unknown fault: " + std::string(name));
}

nlohmann::ordered_json SessionReport::to_json() const {
    nlohmann::ordered_json j;
    j["session"] = {{"parties", n_parties},
                    {"seed", master_seed},
                    {"schedule", std::string(schedule_name(schedule))}};
    j["completed"] = completed;
    j["final_sum"] = to_dec_string(final_sum);
    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (u128 v : per_party_results) results.push_back(to_dec_string(v));
    j["per_party_results"] = std::move(results);
    j["stages_executed"] = stages_executed;
    j["warnings"] = warnings;
    j["gas"] = gas.to_json();
    j["overheads"] = overheads.to_json();
    nlohmann::ordered_json txs = nlohmann::ordered_json::array();
    for (const TranscriptEntry& e : transcript) {
        txs.push_back({{"block", e.block}, {"kind", e.kind}, {"party", e.party},
                       {"outcome", e.outcome}});
    }
    j["transcript"] = std::move(txs);
    return j;
}

Session::Session(SessionConfig config) : config_(std::move(config)) {
    const std::uint64_t n = config_.n_parties;
    dimension_count(n);  // validates the group size up front

    if (config_.secrets) {
        if (config_.secrets->size() != n) {
            throw std::invalid_argument("explicit secrets must match the party count");
        }
        for (u128 x : *config_.secrets) {
            if (x >= kSecretBound) throw SecretOutOfRange("secret value must lie in [0, 2^32)");
        }
        secrets_ = *config_.secrets;
    } else {
        Prng secret_rng(derive_seed("secrets", config_.master_seed));
        secrets_.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            secrets_.push_back(u128{secret_rng.below(std::uint64_t{1} << 32)});
        }
    }

    party_rngs_.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        party_rngs_.emplace_back(derive_seed("party", config_.master_seed, i));
    }
    schedule_rng_.emplace(derive_seed("schedule", config_.master_seed));
}

std::vector<PartyIndex> Session::phase_order() {
    const auto n = static_cast<PartyIndex>(config_.n_parties);
    std::vector<PartyIndex> order(n);
    std::iota(order.begin(), order.end(), PartyIndex{0});
    switch (config_.schedule) {
        case Schedule::Sequential: break;
        case Schedule::AdversarialReverse:
            std::reverse(order.begin(), order.end());
            break;
        case Schedule::RandomPermutationPerPhase:
            for (PartyIndex i = n - 1; i > 0; --i) {
                const auto j = static_cast<PartyIndex>(schedule_rng_->below(i + 1));
                std::swap(order[i], order[j]);
            }
            break;
    }
    return order;
}

SessionReport Session::run() { return execute(std::nullopt); }

SessionReport Session::run_with_fault(FaultKind fault) { return execute(fault); }

SessionReport Session::execute(const std::optional<FaultKind>& fault) {
    const std::uint64_t n = config_.n_parties;
    const std::uint32_t d = dimension_count(n);
    if (fault && *fault == FaultKind::ReplayVerify && d < 2) {
        throw std::invalid_argument("replay-verify needs at least two stages (4+ parties)");
    }
    schedule_rng_.emplace(derive_seed("schedule", config_.master_seed));

    SessionReport report;
    report.n_parties = n;
    report.master_seed = config_.master_seed;
    report.schedule = config_.schedule;
    report.overheads = overhead_counts(n);

    parties_.clear();
    parties_.reserve(n);
    std::vector<Prng> rngs;
    rngs.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) rngs.push_back(party_rngs_[i]);

    Prng ledger_rng(derive_seed("ledger", config_.master_seed));
    // Window [1, n]: one registration per block fills it exactly.
    ledger_.emplace(1, n - 1, ledger_rng);
    Ledger& ledger = *ledger_;
    report.transcript.push_back({ledger.block_height(), "deploy", -1, std::string(outcome_ok())});

    for (std::uint64_t i = 0; i < n; ++i) {
        parties_.push_back(
            Party::create_registration(derive_address(config_.master_seed, i), secrets_[i],
                                       rngs[i]));
    }

    // A fault is armed for one specific transaction; `contain` records the
    // rejection and finalizes the report.
    bool fault_hit = false;
    auto contain = [&](const ProtocolError& err, std::int64_t party_id,
                       const std::string& kind) {
        report.transcript.push_back({ledger.block_height(), kind, party_id,
                                     std::string(err.kind())});
        report.warnings.push_back("fault " + std::string(fault_name(*fault)) +
                                  " contained: " + std::string(err.kind()));
        fault_hit = true;
    };

    for (std::uint64_t i = 0; i < n; ++i) {
        ledger.advance_block(1);
        const Party& p = parties_[i];
        ledger.register_party(p.address(), p.registration().commitment_a,
                              p.registration().commitment_b, p.registration().public_key);
        report.transcript.push_back({ledger.block_height(), "register",
                                     static_cast<std::int64_t>(i), std::string(outcome_ok())});
    }

    if (fault && *fault == FaultKind::DoubleRegister) {
        const Party& p = parties_[0];
        try {
            ledger.register_party(p.address(), p.registration().commitment_a,
                                  p.registration().commitment_b, p.registration().public_key);
            throw UnexpectedSuccess("double registration was accepted");
        } catch (const AlreadyRegistered& err) {
            contain(err, 0, "register");
        }
        report.stages_executed = 0;
        return report;
    }

    ledger.advance_block(1);
    ledger.close_registration();
    report.transcript.push_back({ledger.block_height(), "close_registration", -1,
                                 std::string(outcome_ok())});
    for (std::uint64_t i = 0; i < n; ++i) {
        parties_[i].assign_registration(ledger.registration_id(parties_[i].address()), d);
    }

    // Stashed stage-0 verification arguments for the replay fault.
    std::optional<std::pair<RoundOutputs, Address>> replay_args;

    for (StageIndex stage = 0; stage < d; ++stage) {
        const auto submit_order = phase_order();
        for (PartyIndex pid : submit_order) {
            Party& p = parties_[pid];
            const Address peer_a = ledger.peer_address(HypercubeConfig::A, p.address());
            const Address peer_b = ledger.peer_address(HypercubeConfig::B, p.address());
            auto [env_a, env_b] = p.build_submission(ledger.public_key(peer_a),
                                                     ledger.public_key(peer_b), rngs[pid]);
            ledger.advance_block(1);
            ledger.submit(p.address(), std::move(env_a), std::move(env_b));
            report.transcript.push_back({ledger.block_height(), "submit",
                                         static_cast<std::int64_t>(pid),
                                         std::string(outcome_ok())});
        }

        if (fault && *fault == FaultKind::ReplayVerify && stage == 1 && replay_args) {
            ledger.advance_block(1);
            const auto& [outs, addr] = *replay_args;
            try {
                ledger.verify(addr, outs.proof_a, outs.proof_b, outs.next_commitment_a,
                              outs.next_commitment_b);
                throw UnexpectedSuccess("replayed verification was accepted");
            } catch (const ProofRejected& err) {
                contain(err, 0, "verify");
            } catch (const AlreadyVerified& err) {
                contain(err, 0, "verify");
            }
            report.stages_executed = stage;
            return report;
        }

        const auto verify_order = phase_order();
        for (PartyIndex pid : verify_order) {
            Party& p = parties_[pid];
            const Address peer_a = ledger.peer_address(HypercubeConfig::A, p.address());
            const Address peer_b = ledger.peer_address(HypercubeConfig::B, p.address());

            RoundInputs inputs;
            inputs.envelope_a = ledger.peer_envelope(HypercubeConfig::A, peer_a, p.address());
            inputs.envelope_b = ledger.peer_envelope(HypercubeConfig::B, peer_b, p.address());
            std::tie(inputs.own_commitment_a, inputs.own_commitment_b) =
                ledger.commitments(p.address());
            inputs.peer_commitment_a = ledger.commitments(peer_a).first;
            inputs.peer_commitment_b = ledger.commitments(peer_b).second;

            if (fault && *fault != FaultKind::ReplayVerify && stage == 0 && pid == 0) {
                ledger.advance_block(1);
                switch (*fault) {
                    case FaultKind::TamperEnvelope: {
                        inputs.envelope_a.bytes[inputs.envelope_a.bytes.size() / 2] ^= 0xff;
                        try {
                            p.process_round(inputs, ledger.proof_backend(), rngs[pid]);
                            throw UnexpectedSuccess("tampered envelope decrypted cleanly");
                        } catch (const IntegrityFailure& err) {
                            contain(err, 0, "process_round");
                        }
                        report.stages_executed = 0;
                        return report;
                    }
                    case FaultKind::WrongWitness: {
                        // A cheater without the real openings asks the prover
                        // library to sign an unsatisfiable witness.
                        const SummationWitness bogus{p.sum_a() + 1, 0, prng_draw(rngs[pid]), 0,
                                                     0};
                        const SummationStatement target{
                            inputs.own_commitment_a, inputs.peer_commitment_a,
                            commit(p.sum_a() + 1, 7)};
                        try {
                            ledger.proof_backend().prove(bogus, target);
                            throw UnexpectedSuccess("prover signed a violated statement");
                        } catch (const StatementViolated& err) {
                            contain(err, 0, "prove");
                        }
                        report.stages_executed = 0;
                        return report;
                    }
                    case FaultKind::ForgeProof: {
                        RoundOutputs outs =
                            p.process_round(inputs, ledger.proof_backend(), rngs[pid]);
                        rngs[pid].fill_bytes(outs.proof_a.tag);  // forged authenticator
                        try {
                            ledger.verify(p.address(), outs.proof_a, outs.proof_b,
                                          outs.next_commitment_a, outs.next_commitment_b);
                            throw UnexpectedSuccess("forged proof was accepted");
                        } catch (const ProofRejected& err) {
                            contain(err, 0, "verify");
                        }
                        report.stages_executed = 0;
                        return report;
                    }
                    default:
                        throw std::logic_error("fault not handled at this point");
                }
            }

            RoundOutputs outs = p.process_round(inputs, ledger.proof_backend(), rngs[pid]);
            if (fault && *fault == FaultKind::ReplayVerify && stage == 0 && pid == 0) {
                replay_args = {outs, p.address()};
            }
            ledger.advance_block(1);
            ledger.verify(p.address(), outs.proof_a, outs.proof_b, outs.next_commitment_a,
                          outs.next_commitment_b);
            report.transcript.push_back({ledger.block_height(), "verify",
                                         static_cast<std::int64_t>(pid),
                                         std::string(outcome_ok())});
        }
    }

    if (fault && !fault_hit) {
        throw UnexpectedSuccess("session completed despite fault " +
                                std::string(fault_name(*fault)));
    }

    report.per_party_results.reserve(n);
    for (const Party& p : parties_) report.per_party_results.push_back(p.extract_result());
    report.final_sum = report.per_party_results.front();
    for (u128 v : report.per_party_results) {
        if (v != report.final_sum) {
            throw std::logic_error("parties disagree on the final aggregate");
        }
    }
    report.stages_executed = d;
    report.completed = true;
    report.gas = tally_gas(1, n, 2 * n * d, 2 * n * d, config_.cost_table);
    if (n == 2) {
        report.warnings.push_back(
            "two-party group: both configurations pair the same peers at stage 0, so the "
            "collusion guarantee degrades to trusting the single counterparty");
    }
    return report;
}

nlohmann::ordered_json Session::ledger_snapshot() const {
    if (!ledger_) throw std::logic_error("no session has run yet");
    return ledger_->snapshot();
}

SessionReport run_session(const SessionConfig& config) { return Session(config).run(); }

SessionReport run_adversarial(const SessionConfig& config, FaultKind fault) {
    return Session(config).run_with_fault(fault);
}

std::vector<std::string> find_plaintext_leaks(const std::string& snapshot_text,
                                              std::span<const u128> values) {
    std::vector<std::string> findings;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string pattern = to_hex32(values[i]);
        if (snapshot_text.find(pattern) != std::string::npos) {
            findings.push_back("canonical encoding of value #" + std::to_string(i) +
                               " (" + pattern + ") appears in the ledger state");
        }
    }
    return findings;
}

}  // namespace hypersum
