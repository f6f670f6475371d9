#include "hypersum/cost_model.hpp"

#include <numeric>
#include <stdexcept>

#include "hypersum/errors.hpp"
#include "hypersum/protocol_math.hpp"

namespace hypersum {

nlohmann::ordered_json CostTable::to_json() const {
    return {{"gas_deploy", gas_deploy},
            {"gas_register", gas_register},
            {"gas_submit", gas_submit},
            {"gas_verify", gas_verify},
            {"price_nano_per_unit", price_nano_per_unit},
            {"currency_to_usd", currency_to_usd}};
}

CostTable CostTable::from_json(const nlohmann::json& j) {
    CostTable t = default_cost_table();
    t.gas_deploy = j.value("gas_deploy", t.gas_deploy);
    t.gas_register = j.value("gas_register", t.gas_register);
    t.gas_submit = j.value("gas_submit", t.gas_submit);
    t.gas_verify = j.value("gas_verify", t.gas_verify);
    t.price_nano_per_unit = j.value("price_nano_per_unit", t.price_nano_per_unit);
    t.currency_to_usd = j.value("currency_to_usd", t.currency_to_usd);
    if (t.gas_deploy == 0 || t.gas_register == 0 || t.gas_submit == 0 || t.gas_verify == 0) {
        throw InvalidCosts("gas constants must be positive");
    }
    return t;
}

CostTable default_cost_table() {
    return CostTable{3'372'418, 253'118, 763'692, 2'030'995, 25.0, 22.86};
}

std::uint64_t per_user_gas(std::uint64_t n_parties, const CostTable& table) {
    const std::uint64_t d = dimension_count(n_parties);
    return table.gas_register + d * (table.gas_submit + table.gas_verify);
}

std::uint64_t system_gas(std::uint64_t n_parties, const CostTable& table) {
    const std::uint64_t d = dimension_count(n_parties);
    return n_parties * table.gas_register +
           2 * n_parties * d * (table.gas_submit + table.gas_verify);
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

Rational averaged_verify_gas(std::uint64_t n_parties, std::uint64_t tx, std::uint64_t tx_plus) {
    if (tx_plus < tx) {
        throw InvalidCosts("the end-of-stage transaction cannot be cheaper than a normal one");
    }
    const std::uint64_t d = dimension_count(n_parties);
    const auto num = static_cast<std::int64_t>(d * tx_plus + (n_parties - d) * tx);
    return Rational::make(num, static_cast<std::int64_t>(n_parties));
}

nlohmann::ordered_json OverheadReport::to_json() const {
    return {{"proofs_party", proofs_party},       {"proofs_system", proofs_system},
            {"exchanges_party", exchanges_party}, {"exchanges_system", exchanges_system},
            {"keys_party", keys_party},           {"keys_system", keys_system}};
}

OverheadReport overhead_counts(std::uint64_t n_parties) {
    const std::uint64_t d = dimension_count(n_parties);
    OverheadReport r;
    r.proofs_party = 2 * d;
    r.proofs_system = n_parties * r.proofs_party;
    r.exchanges_party = 2 * d;
    r.exchanges_system = n_parties * r.exchanges_party;
    r.keys_party = 6 + 2 * d;
    r.keys_system = n_parties * r.keys_party;
    return r;
}

GasCost convert_gas(std::uint64_t units, const CostTable& table) {
    GasCost cost;
    cost.native = static_cast<double>(units) * table.price_nano_per_unit * 1e-9;
    cost.usd = cost.native * table.currency_to_usd;
    return cost;
}

nlohmann::ordered_json GasReport::to_json() const {
    return {{"deployments", deployments},
            {"registrations", registrations},
            {"submission_events", submission_events},
            {"verification_events", verification_events},
            {"deploy_units", deploy_units},
            {"register_units", register_units},
            {"submit_units", submit_units},
            {"verify_units", verify_units},
            {"total_units", total_units},
            {"native_cost", native_cost},
            {"usd_cost", usd_cost}};
}

GasReport tally_gas(std::uint64_t deployments, std::uint64_t registrations,
                    std::uint64_t submission_events, std::uint64_t verification_events,
                    const CostTable& table) {
    GasReport r;
    r.deployments = deployments;
    r.registrations = registrations;
    r.submission_events = submission_events;
    r.verification_events = verification_events;
    r.deploy_units = deployments * table.gas_deploy;
    r.register_units = registrations * table.gas_register;
    r.submit_units = submission_events * table.gas_submit;
    r.verify_units = verification_events * table.gas_verify;
    r.total_units = r.deploy_units + r.register_units + r.submit_units + r.verify_units;
    const GasCost cost = convert_gas(r.total_units, table);
    r.native_cost = cost.native;
    r.usd_cost = cost.usd;
    return r;
}

}  // namespace hypersum
