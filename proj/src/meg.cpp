#include "homemeg/meg.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homemeg/errors.hpp"
#include "json_util.hpp"

namespace homemeg {

std::pair<int, int> edge_endpoints(std::size_t id) {
    // Invert id = v(v-1)/2 + u with 0 <= u < v.
    auto v = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(id))) / 2.0);
    while (v * (v - 1) / 2 > id) --v;
    while ((v + 1) * v / 2 <= id) ++v;
    std::size_t u = id - v * (v - 1) / 2;
    return {static_cast<int>(u), static_cast<int>(v)};
}

std::array<double, 4> transition_row(const HomeMegParams& params, EdgeState from) {
    const double p = params.p, q = params.q, a = params.alpha, g = params.gamma;
    if (home(from)) {
        return {(1.0 - q) * a, (1.0 - q) * (1.0 - a), q * g, q * (1.0 - g)};
    }
    return {p * a, p * (1.0 - a), (1.0 - p) * g, (1.0 - p) * (1.0 - g)};
}

StationaryDist stationary(const HomeMegParams& params) {
    const double s = params.p + params.q;
    if (s <= 0.0) throw DegenerateChainError("p + q must be positive");
    return {params.p * params.alpha / s, params.p * (1.0 - params.alpha) / s,
            params.q * params.gamma / s, params.q * (1.0 - params.gamma) / s};
}

EdgeState sample_state(const std::array<double, 4>& probs, double u) {
    // Connected-first layout [HC, NC, HD, ND]; see header.
    const double c0 = probs[0];
    const double c1 = c0 + probs[2];
    const double c2 = c1 + probs[1];
    if (u < c0) return EdgeState::HC;
    if (u < c1) return EdgeState::NC;
    if (u < c2) return EdgeState::HD;
    return EdgeState::ND;
}

EdgeState step_edge(const HomeMegParams& params, EdgeState from, double u) {
    return sample_state(transition_row(params, from), u);
}

GraphSnapshot sample_initial(const HomeMegParams& params, const InitMode& mode,
                             const EdgeUniforms& rng) {
    if (params.n < 1) throw ParamError("graph operations need n >= 1");
    const std::size_t m = edge_count(params.n);
    GraphSnapshot snap;
    snap.n = params.n;
    snap.t = 0;
    switch (mode.kind) {
        case InitMode::Kind::Stationary: {
            const auto pi = stationary(params).as_array();
            snap.states.resize(m);
            for (std::size_t e = 0; e < m; ++e) {
                snap.states[e] = sample_state(pi, rng.at(0, e));
            }
            break;
        }
        case InitMode::Kind::AllState:
            snap.states.assign(m, mode.state);
            break;
        case InitMode::Kind::Explicit:
            if (mode.states.size() != m) {
                throw ShapeError("explicit init needs " + std::to_string(m) +
                                 " edge states, got " + std::to_string(mode.states.size()));
            }
            snap.states = mode.states;
            break;
    }
    return snap;
}

void evolve_in_place(GraphSnapshot& snapshot, const HomeMegParams& params,
                     const EdgeUniforms& rng) {
    const std::uint64_t t_next = snapshot.t + 1;
    for (std::size_t e = 0; e < snapshot.states.size(); ++e) {
        snapshot.states[e] = step_edge(params, snapshot.states[e], rng.at(t_next, e));
    }
    snapshot.t = t_next;
}

GraphSnapshot evolve(const GraphSnapshot& snapshot, const HomeMegParams& params,
                     const EdgeUniforms& rng) {
    GraphSnapshot next = snapshot;
    evolve_in_place(next, params, rng);
    return next;
}

std::string snapshot_to_json(const GraphSnapshot& snapshot) {
    nlohmann::json j;
    j["schema_version"] = detail::kSchemaVersion;
    j["n"] = snapshot.n;
    j["t"] = snapshot.t;
    auto& states = j["states"] = nlohmann::json::array();
    for (EdgeState s : snapshot.states) states.push_back(std::string(to_string(s)));
    return j.dump();
}

GraphSnapshot snapshot_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("snapshot parse failure: ") + e.what());
    }
    GraphSnapshot snap;
    try {
        snap.n = j.at("n").get<int>();
        snap.t = j.at("t").get<std::uint64_t>();
        for (const auto& s : j.at("states")) {
            snap.states.push_back(edge_state_from_string(s.get<std::string>()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("snapshot field failure: ") + e.what());
    }
    if (snap.n < 0 || snap.states.size() != edge_count(snap.n)) {
        throw ShapeError("snapshot has " + std::to_string(snap.states.size()) +
                         " states for n = " + std::to_string(snap.n));
    }
    return snap;
}

}  // namespace homemeg
