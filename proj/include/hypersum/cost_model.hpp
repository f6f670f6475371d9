#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace hypersum {

/// Per-function gas constants plus unit pricing. Defaults carry the Fuji
/// testnet measurements; the unit price is a parameter because the
/// published per-function currency figures imply an effective price
/// slightly above the quoted 25 nano-units.
struct CostTable {
    std::uint64_t gas_deploy = 0;
    std::uint64_t gas_register = 0;
    std::uint64_t gas_submit = 0;
    std::uint64_t gas_verify = 0;
    double price_nano_per_unit = 0.0;
    double currency_to_usd = 0.0;

    bool operator==(const CostTable&) const = default;

    nlohmann::ordered_json to_json() const;
    static CostTable from_json(const nlohmann::json& j);
};

CostTable default_cost_table();

/// Registration cost plus log2(n) rounds of submission + verification.
std::uint64_t per_user_gas(std::uint64_t n_parties, const CostTable& table);

/// System-wide model: n registrations plus 2 * n * log2(n) units of
/// per-configuration dynamic work.
std::uint64_t system_gas(std::uint64_t n_parties, const CostTable& table);

/// Exact rational, normalized with a positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    bool operator==(const Rational&) const = default;

    static Rational make(std::int64_t num, std::int64_t den);
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Average verification cost when log2(n) of the n transactions in a stage
/// cycle cost tx_plus and the rest cost tx. Exact rational arithmetic.
Rational averaged_verify_gas(std::uint64_t n_parties, std::uint64_t tx, std::uint64_t tx_plus);

/// Scalability counters for one session size.
struct OverheadReport {
    std::uint64_t proofs_party = 0;
    std::uint64_t proofs_system = 0;
    std::uint64_t exchanges_party = 0;
    std::uint64_t exchanges_system = 0;
    std::uint64_t keys_party = 0;
    std::uint64_t keys_system = 0;

    bool operator==(const OverheadReport&) const = default;

    nlohmann::ordered_json to_json() const;
};

OverheadReport overhead_counts(std::uint64_t n_parties);

struct GasCost {
    double native = 0.0;
    double usd = 0.0;
};

GasCost convert_gas(std::uint64_t units, const CostTable& table);

/// Charged totals for one simulated session. Submission and verification
/// events are counted per configuration (two per ledger transaction), the
/// granularity the system-scale model prices.
struct GasReport {
    std::uint64_t deployments = 0;
    std::uint64_t registrations = 0;
    std::uint64_t submission_events = 0;
    std::uint64_t verification_events = 0;
    std::uint64_t deploy_units = 0;
    std::uint64_t register_units = 0;
    std::uint64_t submit_units = 0;
    std::uint64_t verify_units = 0;
    std::uint64_t total_units = 0;
    double native_cost = 0.0;
    double usd_cost = 0.0;

    nlohmann::ordered_json to_json() const;
};

GasReport tally_gas(std::uint64_t deployments, std::uint64_t registrations,
                    std::uint64_t submission_events, std::uint64_t verification_events,
                    const CostTable& table);

}  // namespace hypersum
