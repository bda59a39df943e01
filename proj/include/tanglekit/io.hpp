#pragma once

#include "tanglekit/invariants.hpp"
#include "tanglekit/state.hpp"
#include "tanglekit/verify.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <string>

namespace tanglekit {

using json = nlohmann::json;

/// State file format: {"n": int, "amplitudes": [[re, im], ...]} with 2^n
/// entries ordered by linear index (qubit 1 = most significant bit).
inline json state_to_json(const PureState& state) {
    json amps = json::array();
    for (std::uint32_t idx = 0; idx < state.dim(); ++idx)
        amps.push_back({state[idx].real(), state[idx].imag()});
    return json{{"n", state.n()}, {"amplitudes", std::move(amps)}};
}

/// Parses the state file format. Error messages name the offending field.
inline PureState state_from_json(const json& j) {
    if (!j.is_object())
        throw std::runtime_error("state file: top level must be a JSON object");
    if (!j.contains("n"))
        throw std::runtime_error("state file: missing field \"n\"");
    if (!j["n"].is_number_integer())
        throw std::runtime_error("state file: field \"n\" must be an integer");
    const int n = j["n"].get<int>();
    if (n < 1 || n > kMaxQubits)
        throw std::runtime_error("state file: field \"n\" must be in [1, 12]");
    if (!j.contains("amplitudes"))
        throw std::runtime_error("state file: missing field \"amplitudes\"");
    const json& amps = j["amplitudes"];
    if (!amps.is_array())
        throw std::runtime_error("state file: field \"amplitudes\" must be an array");
    const std::size_t expected = std::size_t{1} << n;
    if (amps.size() != expected)
        throw std::runtime_error("state file: \"amplitudes\" has " + std::to_string(amps.size()) +
                                 " entries, expected " + std::to_string(expected) +
                                 " for n=" + std::to_string(n));
    Amplitudes a(expected);
    for (std::size_t k = 0; k < expected; ++k) {
        const json& e = amps[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw std::runtime_error("state file: \"amplitudes[" + std::to_string(k) +
                                     "]\" must be a [re, im] pair of numbers");
        a[static_cast<Eigen::Index>(k)] = Complex(e[0].get<double>(), e[1].get<double>());
    }
    return PureState(n, std::move(a));
}

inline void save_state(const std::string& path, const PureState& state) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << state_to_json(state).dump(2) << "\n";
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

inline PureState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("state file '" + path + "': " + e.what());
    }
    return state_from_json(j);
}

inline json report_to_json(const InvariantReport& rep) {
    json entries = json::object();
    for (const auto& e : rep.entries) {
        json v;
        if (e.is_real)
            v = e.value.real();
        else
            v = json::array({e.value.real(), e.value.imag()});
        entries[e.name] = json{{"value", std::move(v)}, {"definition", e.definition}};
    }
    json census = json::array();
    for (const auto& r : rep.font_census)
        census.push_back(json{{"p", r.p}, {"K", r.k}, {"count", r.total}, {"nonzero", r.nonzero}});
    return json{{"state", json{{"n", rep.n},
                               {"source", rep.source},
                               {"norm_deviation", rep.norm_deviation}}},
                {"entries", std::move(entries)},
                {"font_census", std::move(census)}};
}

inline json checks_to_json(const std::vector<CheckResult>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back(json{{"name", c.name},
                           {"trials", c.trials},
                           {"max_deviation", c.max_deviation},
                           {"tolerance", c.tolerance},
                           {"passed", c.passed},
                           {"seed", c.seed}});
    return arr;
}

}  // namespace tanglekit
