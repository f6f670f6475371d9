// Command-line front door: run sessions, query pairings, emit cost reports,
// inspect ledger snapshots.
//
// Exit codes: 0 success, 2 usage error, 3 protocol failure, 4 check failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypersum/cost_model.hpp"
#include "hypersum/errors.hpp"
#include "hypersum/protocol_math.hpp"
#include "hypersum/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitProtocol = 3;
constexpr int kExitCheckFailed = 4;

std::vector<hypersum::u128> parse_secrets(const std::string& csv) {
    std::vector<hypersum::u128> secrets;
    std::stringstream stream(csv);
    std::string field;
    while (std::getline(stream, field, ',')) {
        secrets.push_back(hypersum::u128_from_dec(field));
    }
    return secrets;
}

hypersum::CostTable load_cost_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cost table file: " + path);
    nlohmann::json j;
    in >> j;
    return hypersum::CostTable::from_json(j);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to " + out_path);
    out << text;
}

int cmd_run(std::uint64_t parties, std::uint64_t seed, const std::string& secrets_csv,
            const std::string& schedule, const std::string& cost_table_path,
            const std::string& fault, const std::string& out_path,
            const std::string& snapshot_path) {
    hypersum::SessionConfig cfg;
    cfg.n_parties = parties;
    cfg.master_seed = seed;
    cfg.schedule = hypersum::schedule_from_name(schedule);
    if (!secrets_csv.empty()) cfg.secrets = parse_secrets(secrets_csv);
    if (!cost_table_path.empty()) cfg.cost_table = load_cost_table(cost_table_path);

    hypersum::Session session(cfg);
    const hypersum::SessionReport report =
        fault.empty() ? session.run()
                      : session.run_with_fault(hypersum::fault_from_name(fault));

    write_output(report.to_json().dump(2) + "\n", out_path);
    if (!snapshot_path.empty()) {
        write_output(session.ledger_snapshot().dump(2) + "\n", snapshot_path);
    }
    return report.completed || !fault.empty() ? kExitOk : kExitProtocol;
}

int cmd_pair(std::uint64_t n, std::uint32_t stage, const std::string& config,
             std::uint32_t id) {
    const std::uint32_t d = hypersum::dimension_count(n);
    const auto cube =
        config == "A" ? hypersum::HypercubeConfig::A : hypersum::HypercubeConfig::B;
    std::cout << hypersum::peer_index(id, stage, d, cube) << "\n";
    return kExitOk;
}

int cmd_costs(std::uint64_t parties, const std::string& cost_table_path,
              const std::string& format) {
    const hypersum::CostTable table =
        cost_table_path.empty() ? hypersum::default_cost_table()
                                : load_cost_table(cost_table_path);
    const std::uint64_t user_gas = hypersum::per_user_gas(parties, table);
    const std::uint64_t total_gas = hypersum::system_gas(parties, table);
    const hypersum::GasCost user_cost = hypersum::convert_gas(user_gas, table);
    const hypersum::GasCost total_cost = hypersum::convert_gas(total_gas, table);
    const hypersum::OverheadReport overheads = hypersum::overhead_counts(parties);

    if (format == "json") {
        nlohmann::ordered_json j;
        j["parties"] = parties;
        j["per_user_gas"] = user_gas;
        j["system_gas"] = total_gas;
        j["per_user_native"] = user_cost.native;
        j["per_user_usd"] = user_cost.usd;
        j["system_native"] = total_cost.native;
        j["system_usd"] = total_cost.usd;
        j["overheads"] = overheads.to_json();
        j["cost_table"] = table.to_json();
        std::cout << j.dump(2) << "\n";
    } else {
        // render through the json serializer so both formats carry the
        // exact same number spellings
        const auto num = [](double v) { return nlohmann::json(v).dump(); };
        std::cout << "metric,value\n";
        std::cout << "parties," << parties << "\n";
        std::cout << "per_user_gas," << user_gas << "\n";
        std::cout << "system_gas," << total_gas << "\n";
        std::cout << "per_user_native," << num(user_cost.native) << "\n";
        std::cout << "per_user_usd," << num(user_cost.usd) << "\n";
        std::cout << "system_native," << num(total_cost.native) << "\n";
        std::cout << "system_usd," << num(total_cost.usd) << "\n";
        const auto o = overheads.to_json();
        for (const auto& [key, value] : o.items()) {
            std::cout << key << "," << value << "\n";
        }
    }
    return kExitOk;
}

int cmd_inspect(const std::string& snapshot_path, const std::string& check,
                const std::string& secrets_path) {
    std::ifstream in(snapshot_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open snapshot: " << snapshot_path << "\n";
        return kExitUsage;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    nlohmann::json snapshot;
    try {
        snapshot = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: malformed snapshot: " << e.what() << "\n";
        return kExitUsage;
    }

    if (check.empty()) {
        std::cout << "block_height: " << snapshot.value("block_height", 0ull) << "\n";
        std::cout << "registered: " << snapshot.value("registered_users",
                                                      nlohmann::json::array()).size() << "\n";
        std::cout << "registration_closed: "
                  << (snapshot.value("registration_closed", false) ? "true" : "false") << "\n";
        std::cout << "stage: " << snapshot.value("current_stage", 0u) << " / "
                  << snapshot.value("max_stage", 0u) << "\n";
        return kExitOk;
    }
    if (check != "no-plaintext") {
        std::cerr << "error: unknown check: " << check << "\n";
        return kExitUsage;
    }
    if (secrets_path.empty()) {
        std::cerr << "error: --check no-plaintext needs --secrets-file\n";
        return kExitUsage;
    }

    std::ifstream secrets_in(secrets_path);
    if (!secrets_in) {
        std::cerr << "error: cannot open secrets file: " << secrets_path << "\n";
        return kExitUsage;
    }
    nlohmann::json secrets_json;
    try {
        secrets_in >> secrets_json;
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: malformed secrets file: " << e.what() << "\n";
        return kExitUsage;
    }
    std::vector<hypersum::u128> values;
    for (const auto& entry : secrets_json) {
        if (entry.is_string()) {
            values.push_back(hypersum::u128_from_dec(entry.get<std::string>()));
        } else {
            values.push_back(hypersum::u128{entry.get<std::uint64_t>()});
        }
    }

    const auto findings = hypersum::find_plaintext_leaks(text, values);
    if (findings.empty()) {
        std::cout << "no plaintext found (" << values.size() << " values scanned)\n";
        return kExitOk;
    }
    for (const std::string& finding : findings) std::cout << finding << "\n";
    return kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Privacy-preserving summation over dual hypercube aggregation: "
                 "deterministic session simulator, pairing and cost calculators, "
                 "and ledger snapshot inspection"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run a full aggregation session");
    std::uint64_t parties = 0;
    std::uint64_t seed = 0;
    std::string secrets_csv;
    std::string schedule = "sequential";
    std::string cost_table_path;
    std::string fault;
    std::string out_path;
    std::string snapshot_path;
    run->add_option("--parties", parties, "Group size (power of two, >= 2)")->required();
    run->add_option("--seed", seed, "Master seed; fixes every draw in the session")->required();
    run->add_option("--secrets", secrets_csv, "Comma-separated secret values in [0, 2^32)");
    run->add_option("--schedule", schedule,
                    "Transaction order: sequential | random-permutation-per-phase | "
                    "adversarial-reverse");
    run->add_option("--cost-table", cost_table_path, "JSON cost table override");
    run->add_option("--fault", fault,
                    "Inject a fault: forge-proof | wrong-witness | double-register | "
                    "replay-verify | tamper-envelope");
    run->add_option("--out", out_path, "Write the session report here instead of stdout");
    run->add_option("--snapshot", snapshot_path, "Also write the final ledger snapshot here");

    // pair
    auto* pair = app.add_subcommand("pair", "Print the peer of a party at a stage");
    std::uint64_t pair_n = 0;
    std::uint32_t pair_stage = 0;
    std::string pair_config = "A";
    std::uint32_t pair_id = 0;
    pair->add_option("--n", pair_n, "Group size (power of two, >= 2)")->required();
    pair->add_option("--stage", pair_stage, "Stage in [0, log2(n))")->required();
    pair->add_option("--config", pair_config, "A or B")
        ->check(CLI::IsMember({"A", "B"}))
        ->required();
    pair->add_option("--id", pair_id, "Party registration id")->required();

    // costs
    auto* costs = app.add_subcommand("costs", "Gas and overhead projections for a group size");
    std::uint64_t costs_parties = 0;
    std::string costs_table_path;
    std::string costs_format = "json";
    costs->add_option("--parties", costs_parties, "Group size (power of two, >= 2)")->required();
    costs->add_option("--cost-table", costs_table_path, "JSON cost table override");
    costs->add_option("--format", costs_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // inspect
    auto* inspect = app.add_subcommand("inspect", "Examine a ledger snapshot");
    std::string inspect_snapshot;
    std::string inspect_check;
    std::string inspect_secrets;
    inspect->add_option("--snapshot", inspect_snapshot, "Snapshot JSON path")->required();
    inspect->add_option("--check", inspect_check, "Check to run: no-plaintext");
    inspect->add_option("--secrets-file", inspect_secrets,
                        "JSON array of values the snapshot must not contain");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(parties, seed, secrets_csv, schedule, cost_table_path, fault,
                           out_path, snapshot_path);
        }
        if (pair->parsed()) {
            return cmd_pair(pair_n, pair_stage, pair_config, pair_id);
        }
        if (costs->parsed()) {
            return cmd_costs(costs_parties, costs_table_path, costs_format);
        }
        if (inspect->parsed()) {
            return cmd_inspect(inspect_snapshot, inspect_check, inspect_secrets);
        }
    } catch (const hypersum::ProtocolError& e) {
        std::cerr << "protocol failure: " << e.kind() << ": " << e.what() << "\n";
        return kExitProtocol;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
