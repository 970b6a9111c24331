#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homemeg/bitset.hpp"
#include "homemeg/flooding.hpp"
#include "homemeg/meg.hpp"
#include "homemeg/params.hpp"
#include "homemeg/rng.hpp"

namespace homemeg {

// Home-MEG snapshot coupled with two i.i.d. Erdos-Renyi edge processes driven
// by the same uniforms: G^p with edge probability p_hat = min_s P(connected | s)
// and G^q with q_hat = max_s P(connected | s). Because the connected states
// occupy the prefix of every sub-interval layout, u < p_hat implies the MEG
// edge is connected and a connected MEG edge implies u < q_hat, giving
// E(G^p) subseteq E(H) subseteq E(G^q) at every step, deterministically.
struct CoupledState {
    GraphSnapshot meg;
    Bitset er_p_edges;
    Bitset er_q_edges;
    double p_hat = 0.0;
    double q_hat = 0.0;

    bool sandwich_holds() const;
};

// Couples the initial draw: the same U_0(e) drives the stationary draw of the
// MEG edge and the Bernoulli draws of both ER graphs. The sandwich requires
// the coupling hypotheses p + q <= 1 and gamma <= alpha (they imply
// p_hat <= pi(connected) <= q_hat); violations throw CouplingError.
CoupledState coupled_initial(const HomeMegParams& params, const EdgeUniforms& rng);

// Advances all three processes with the shared U_{t+1}(e).
void coupled_step(CoupledState& state, const HomeMegParams& params,
                  const EdgeUniforms& rng);

// Result of one coupled flooding run: the three processes flooded from the
// same source on the shared randomness.
struct CoupledFloodRun {
    FloodRun er_q;  // fastest: G^q floods first
    FloodRun meg;
    FloodRun er_p;  // slowest
    // True iff the edge-set sandwich held at every step and the informed-set
    // sandwich I(G^p) subseteq I(H) subseteq I(G^q) held at every step.
    bool sandwich_ok = true;
    std::uint64_t steps_checked = 0;
};

// Floods all three coupled processes in lockstep until all complete or the
// horizon is reached, verifying the sandwich invariants along the way.
CoupledFloodRun coupled_flooding(const HomeMegParams& params, int source,
                                 const EdgeUniforms& rng, std::uint64_t horizon = 0);

// JSON report over many coupled trials (per-trial completion triples and
// violation counts).
std::string coupled_trials_to_json(const HomeMegParams& params,
                                   const std::vector<CoupledFloodRun>& runs,
                                   std::uint64_t seed);

}  // namespace homemeg
