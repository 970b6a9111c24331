#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "homemeg/edge_state.hpp"
#include "homemeg/params.hpp"
#include "homemeg/rng.hpp"

namespace homemeg {

// Stationary law of the per-edge chain, components in matrix order.
struct StationaryDist {
    double pi_hc = 0.0;
    double pi_hd = 0.0;
    double pi_nc = 0.0;
    double pi_nd = 0.0;

    std::array<double, 4> as_array() const { return {pi_hc, pi_hd, pi_nc, pi_nd}; }
    double home() const { return pi_hc + pi_hd; }
    double connected() const { return pi_hc + pi_nc; }
};

// Number of unordered node pairs.
constexpr std::size_t edge_count(int n) {
    return static_cast<std::size_t>(n) * (n - 1) / 2;
}

// Canonical upper-triangle edge id for u < v.
constexpr std::size_t edge_id(int u, int v) {
    return static_cast<std::size_t>(v) * (v - 1) / 2 + static_cast<std::size_t>(u);
}

// Inverse of edge_id: returns (u, v) with u < v.
std::pair<int, int> edge_endpoints(std::size_t id);

// All edge states of the graph at one time step.
struct GraphSnapshot {
    int n = 0;
    std::uint64_t t = 0;
    std::vector<EdgeState> states;

    bool edge_connected(int u, int v) const {
        return connected(states[u < v ? edge_id(u, v) : edge_id(v, u)]);
    }
};

// Row of the transition matrix for `from`, in state order [HC, HD, NC, ND].
// Rows depend on `from` only through home(from).
std::array<double, 4> transition_row(const HomeMegParams& params, EdgeState from);

// Stationary distribution (p*a, p*(1-a), q*g, q*(1-g)) / (p+q). Requires p+q > 0.
StationaryDist stationary(const HomeMegParams& params);

// Inverse-CDF draw from a distribution given in matrix order, with the
// sub-intervals laid out connected-first: [HC, NC, HD, ND]. The layout is load
// bearing: the coupling construction reuses the same uniform u and relies on
// the connected region being the prefix [0, P(HC)+P(NC)).
EdgeState sample_state(const std::array<double, 4>& probs, double u);

// One chain step driven by a uniform u in [0, 1].
EdgeState step_edge(const HomeMegParams& params, EdgeState from, double u);

// How the initial edge-state vector is drawn.
struct InitMode {
    enum class Kind { Stationary, AllState, Explicit };

    Kind kind = Kind::Stationary;
    EdgeState state = EdgeState::ND;
    std::vector<EdgeState> states;

    static InitMode stationary_draw() { return {}; }
    static InitMode all_state(EdgeState s) { return {Kind::AllState, s, {}}; }
    static InitMode explicit_states(std::vector<EdgeState> v) {
        return {Kind::Explicit, EdgeState::ND, std::move(v)};
    }
};

// Snapshot at t = 0. Stationary mode draws each edge i.i.d. from pi using
// U_0(e); AllState puts every edge in the given state; Explicit copies the
// given vector (length must be n(n-1)/2).
GraphSnapshot sample_initial(const HomeMegParams& params, const InitMode& mode,
                             const EdgeUniforms& rng);

// Advances every edge independently with U_{t+1}(e); increments t.
void evolve_in_place(GraphSnapshot& snapshot, const HomeMegParams& params,
                     const EdgeUniforms& rng);

GraphSnapshot evolve(const GraphSnapshot& snapshot, const HomeMegParams& params,
                     const EdgeUniforms& rng);

// JSON round trip: {"n": ..., "t": ..., "states": ["HC", ...]}.
std::string snapshot_to_json(const GraphSnapshot& snapshot);
GraphSnapshot snapshot_from_json(const std::string& text);

}  // namespace homemeg
