#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "hypersum/cost_model.hpp"
#include "hypersum/crypto.hpp"
#include "hypersum/errors.hpp"
#include "hypersum/protocol_math.hpp"
#include "hypersum/simulator.hpp"

namespace py = pybind11;
using namespace hypersum;

namespace {

u128 u128_from_py(const py::int_& value) {
    // round-trip through a decimal string; python ints are unbounded
    return u128_from_dec(py::str(value).cast<std::string>());
}

py::int_ u128_to_py(u128 value) {
    return py::int_(py::str(to_dec_string(value)));
}

py::object json_to_py(const nlohmann::ordered_json& j) {
    const py::module_ json = py::module_::import("json");
    return json.attr("loads")(j.dump());
}

SessionConfig make_config(std::uint64_t parties, std::uint64_t seed,
                          const std::optional<std::vector<py::int_>>& secrets,
                          const std::string& schedule) {
    SessionConfig cfg;
    cfg.n_parties = parties;
    cfg.master_seed = seed;
    cfg.schedule = schedule_from_name(schedule);
    if (secrets) {
        std::vector<u128> values;
        values.reserve(secrets->size());
        for (const py::int_& v : *secrets) values.push_back(u128_from_py(v));
        cfg.secrets = std::move(values);
    }
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_hypersum, m) {
    m.doc() = "Privacy-preserving summation over dual hypercube aggregation";

    py::register_exception<ProtocolError>(m, "ProtocolError");

    m.def("dimension_count", &dimension_count, py::arg("n_parties"),
          "log2 of a power-of-two group size");

    m.def(
        "peer_index",
        [](PartyIndex u, StageIndex t, std::uint32_t d, const std::string& config) {
            return peer_index(u, t, d,
                              config == "A" ? HypercubeConfig::A : HypercubeConfig::B);
        },
        py::arg("u"), py::arg("stage"), py::arg("dimensions"), py::arg("config"),
        "Peer of party u at a stage, config 'A' or 'B'");

    m.def("hamming_distance", &hamming_distance, py::arg("u"), py::arg("v"));

    m.def(
        "commit",
        [](const py::int_& value, const py::int_& salt) {
            return commit(u128_from_py(value), u128_from_py(salt)).hex();
        },
        py::arg("value"), py::arg("salt"),
        "Hex digest binding (value, salt) under the canonical encoding");

    m.def(
        "verify_commitment",
        [](const std::string& digest_hex, const py::int_& value, const py::int_& salt) {
            return verify_commitment(Commitment::from_hex(digest_hex), u128_from_py(value),
                                     u128_from_py(salt));
        },
        py::arg("digest_hex"), py::arg("value"), py::arg("salt"));

    m.def(
        "run_session",
        [](std::uint64_t parties, std::uint64_t seed,
           const std::optional<std::vector<py::int_>>& secrets, const std::string& schedule,
           bool with_snapshot) {
            Session session(make_config(parties, seed, secrets, schedule));
            const SessionReport report = session.run();
            py::dict out;
            out["report"] = json_to_py(report.to_json());
            out["final_sum"] = u128_to_py(report.final_sum);
            if (with_snapshot) out["snapshot"] = json_to_py(session.ledger_snapshot());
            return out;
        },
        py::arg("parties"), py::arg("seed"), py::arg("secrets") = py::none(),
        py::arg("schedule") = "sequential", py::arg("with_snapshot") = false,
        "Run a full aggregation session; returns the report (and optionally the snapshot)");

    m.def(
        "run_adversarial",
        [](std::uint64_t parties, std::uint64_t seed, const std::string& fault) {
            const SessionReport report = run_adversarial(
                make_config(parties, seed, std::nullopt, "sequential"),
                fault_from_name(fault));
            return json_to_py(report.to_json());
        },
        py::arg("parties"), py::arg("seed"), py::arg("fault"),
        "Run a session with an injected fault; the transcript shows the containment");

    m.def(
        "per_user_gas",
        [](std::uint64_t n) { return per_user_gas(n, default_cost_table()); },
        py::arg("n_parties"));
    m.def(
        "system_gas", [](std::uint64_t n) { return system_gas(n, default_cost_table()); },
        py::arg("n_parties"));
    m.def(
        "averaged_verify_gas",
        [](std::uint64_t n, std::uint64_t tx, std::uint64_t tx_plus) {
            const Rational r = averaged_verify_gas(n, tx, tx_plus);
            return py::make_tuple(r.num, r.den);
        },
        py::arg("n_parties"), py::arg("tx"), py::arg("tx_plus"),
        "Exact (numerator, denominator) of the stage-cycle average");
    m.def(
        "overhead_counts",
        [](std::uint64_t n) { return json_to_py(overhead_counts(n).to_json()); },
        py::arg("n_parties"));
    m.def("default_cost_table", [] { return json_to_py(default_cost_table().to_json()); });
}
