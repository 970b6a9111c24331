#include "homemeg/coupling.hpp"

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homemeg/errors.hpp"
#include "json_util.hpp"

namespace homemeg {

namespace {

void check_hypotheses(const HomeMegParams& params) {
    if (params.p + params.q > 1.0) {
        throw CouplingError("coupling needs p + q <= 1, got " +
                            std::to_string(params.p + params.q));
    }
    if (params.gamma > params.alpha) {
        throw CouplingError("coupling needs gamma <= alpha, got gamma = " +
                            std::to_string(params.gamma) + " > alpha = " +
                            std::to_string(params.alpha));
    }
}

// Flooding step over a plain edge set given as a bitmask.
void er_flood_step(int n, const Bitset& edges, Bitset& informed) {
    Bitset next = informed;
    std::size_t e = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u, ++e) {
            if (!edges.test(e)) continue;
            const bool iu = informed.test(u), iv = informed.test(v);
            if (iu == iv) continue;
            next.set(iu ? v : u);
        }
    }
    informed = std::move(next);
}

Bitset meg_edges(const GraphSnapshot& snap) {
    Bitset edges(snap.states.size());
    for (std::size_t e = 0; e < snap.states.size(); ++e) {
        if (connected(snap.states[e])) edges.set(e);
    }
    return edges;
}

}  // namespace

bool CoupledState::sandwich_holds() const {
    const Bitset h = meg_edges(meg);
    return h.contains(er_p_edges) && er_q_edges.contains(h);
}

CoupledState coupled_initial(const HomeMegParams& params, const EdgeUniforms& rng) {
    check_hypotheses(params);
    if (params.n < 1) throw ParamError("graph operations need n >= 1");
    const std::size_t m = edge_count(params.n);

    CoupledState state;
    state.p_hat = p_hat(params);
    state.q_hat = q_hat(params);
    state.meg.n = params.n;
    state.meg.t = 0;
    state.meg.states.resize(m);
    state.er_p_edges = Bitset(m);
    state.er_q_edges = Bitset(m);

    const auto pi = stationary(params).as_array();
    for (std::size_t e = 0; e < m; ++e) {
        const double u = rng.at(0, e);
        state.meg.states[e] = sample_state(pi, u);
        if (u < state.p_hat) state.er_p_edges.set(e);
        if (u < state.q_hat) state.er_q_edges.set(e);
    }
    return state;
}

void coupled_step(CoupledState& state, const HomeMegParams& params,
                  const EdgeUniforms& rng) {
    const std::uint64_t t_next = state.meg.t + 1;
    const std::size_t m = state.meg.states.size();
    state.er_p_edges = Bitset(m);
    state.er_q_edges = Bitset(m);
    for (std::size_t e = 0; e < m; ++e) {
        const double u = rng.at(t_next, e);
        state.meg.states[e] = step_edge(params, state.meg.states[e], u);
        if (u < state.p_hat) state.er_p_edges.set(e);
        if (u < state.q_hat) state.er_q_edges.set(e);
    }
    state.meg.t = t_next;
}

CoupledFloodRun coupled_flooding(const HomeMegParams& params, int source,
                                 const EdgeUniforms& rng, std::uint64_t horizon) {
    if (source < 0 || source >= params.n) {
        throw ParamError("source " + std::to_string(source) + " out of range for n = " +
                         std::to_string(params.n));
    }
    if (horizon == 0) horizon = default_horizon(params);
    const auto nodes = static_cast<std::size_t>(params.n);

    CoupledFloodRun result;
    for (FloodRun* run : {&result.er_q, &result.meg, &result.er_p}) {
        run->source = source;
        run->horizon = horizon;
    }

    CoupledState state = coupled_initial(params, rng);
    Bitset inf_p(nodes), inf_h(nodes), inf_q(nodes);
    inf_p.set(static_cast<std::size_t>(source));
    inf_h.set(static_cast<std::size_t>(source));
    inf_q.set(static_cast<std::size_t>(source));

    auto record = [nodes](FloodRun& run, const Bitset& informed, std::uint64_t t) {
        run.informed_sizes.push_back(informed.count());
        if (!run.completion_time && informed.count() == nodes) run.completion_time = t;
    };

    result.sandwich_ok = state.sandwich_holds();
    result.steps_checked = 1;
    record(result.er_p, inf_p, 0);
    record(result.meg, inf_h, 0);
    record(result.er_q, inf_q, 0);

    for (std::uint64_t t = 1;
         t <= horizon && !(result.er_p.completed() && result.meg.completed() &&
                           result.er_q.completed());
         ++t) {
        coupled_step(state, params, rng);
        if (!result.er_p.completed()) er_flood_step(params.n, state.er_p_edges, inf_p);
        if (!result.meg.completed()) {
            const Bitset h = meg_edges(state.meg);
            er_flood_step(params.n, h, inf_h);
        }
        if (!result.er_q.completed()) er_flood_step(params.n, state.er_q_edges, inf_q);

        if (!state.sandwich_holds() || !inf_h.contains(inf_p) || !inf_q.contains(inf_h)) {
            result.sandwich_ok = false;
        }
        ++result.steps_checked;
        record(result.er_p, inf_p, t);
        record(result.meg, inf_h, t);
        record(result.er_q, inf_q, t);
    }

    result.er_p.informed_final = std::move(inf_p);
    result.meg.informed_final = std::move(inf_h);
    result.er_q.informed_final = std::move(inf_q);

    // Pathwise order with censoring treated as +infinity.
    auto time_of = [horizon](const FloodRun& run) {
        return run.completed() ? *run.completion_time : horizon + 1;
    };
    if (time_of(result.er_q) > time_of(result.meg) ||
        time_of(result.meg) > time_of(result.er_p)) {
        result.sandwich_ok = false;
    }
    return result;
}

std::string coupled_trials_to_json(const HomeMegParams& params,
                                   const std::vector<CoupledFloodRun>& runs,
                                   std::uint64_t seed) {
    nlohmann::json j = detail::report_skeleton(params);
    j["seed"] = seed;
    j["p_hat"] = p_hat(params);
    j["q_hat"] = q_hat(params);
    j["trials"] = runs.size();
    std::uint64_t violations = 0;
    auto& rows = j["runs"] = nlohmann::json::array();
    for (const CoupledFloodRun& run : runs) {
        if (!run.sandwich_ok) ++violations;
        auto entry = [](const FloodRun& r) -> nlohmann::json {
            if (r.completed()) return *r.completion_time;
            return nullptr;
        };
        rows.push_back({{"t_q", entry(run.er_q)},
                        {"t_h", entry(run.meg)},
                        {"t_p", entry(run.er_p)},
                        {"sandwich_ok", run.sandwich_ok}});
    }
    j["sandwich_violations"] = violations;
    return j.dump(2);
}

}  // namespace homemeg
