#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypersum/cost_model.hpp"
#include "hypersum/ledger.hpp"
#include "hypersum/party.hpp"

namespace hypersum {

/// Per-phase ordering of party transactions. The final result and all final
/// commitments are schedule-invariant; only temp-slot traffic differs.
enum class Schedule : std::uint8_t {
    Sequential,
    RandomPermutationPerPhase,
    AdversarialReverse,
};

std::string_view schedule_name(Schedule s);
Schedule schedule_from_name(std::string_view name);

struct SessionConfig {
    std::uint64_t n_parties = 0;
    std::uint64_t master_seed = 0;
    /// Explicit secrets; drawn uniformly from [0, 2^32) when absent.
    std::optional<std::vector<u128>> secrets;
    Schedule schedule = Schedule::Sequential;
    CostTable cost_table = default_cost_table();
};

struct TranscriptEntry {
    std::uint64_t block = 0;
    std::string kind;
    /// Registration id of the acting party, -1 for deployer transactions.
    std::int64_t party = -1;
    std::string outcome;
};

struct SessionReport {
    std::uint64_t n_parties = 0;
    std::uint64_t master_seed = 0;
    Schedule schedule = Schedule::Sequential;
    bool completed = false;
    u128 final_sum = 0;
    std::vector<u128> per_party_results;
    std::uint32_t stages_executed = 0;
    GasReport gas;
    OverheadReport overheads;
    std::vector<TranscriptEntry> transcript;
    std::vector<std::string> warnings;

    nlohmann::ordered_json to_json() const;
};

/// Injected misbehavior for the containment harness.
enum class FaultKind : std::uint8_t {
    ForgeProof,
    WrongWitness,
    DoubleRegister,
    ReplayVerify,
    TamperEnvelope,
};

std::string_view fault_name(FaultKind f);
FaultKind fault_from_name(std::string_view name);

/// Drives one full session: deploy, register every party, then for each
/// hypercube stage a submission phase followed by a verification phase,
/// both in schedule order. Deterministic given the config.
class Session {
public:
    explicit Session(SessionConfig config);

    SessionReport run();

    /// Runs with `fault` injected; the report's transcript ends at the
    /// rejected transaction. Throws UnexpectedSuccess if the fault was not
    /// contained by the expected error.
    SessionReport run_with_fault(FaultKind fault);

    /// Canonical ledger snapshot of the last run.
    nlohmann::ordered_json ledger_snapshot() const;

    const std::vector<Party>& parties() const { return parties_; }
    const std::vector<u128>& secrets() const { return secrets_; }

private:
    SessionReport execute(const std::optional<FaultKind>& fault);
    std::vector<PartyIndex> phase_order();

    SessionConfig config_;
    std::vector<u128> secrets_;
    std::vector<Party> parties_;
    std::vector<Prng> party_rngs_;
    std::optional<Prng> schedule_rng_;
    std::optional<Ledger> ledger_;
};

SessionReport run_session(const SessionConfig& config);
SessionReport run_adversarial(const SessionConfig& config, FaultKind fault);

/// Scans serialized ledger state for the canonical hex encoding of any of
/// the given values. Returns one finding per leaked value.
std::vector<std::string> find_plaintext_leaks(const std::string& snapshot_text,
                                              std::span<const u128> values);

}  // namespace hypersum
