#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homemeg/params.hpp"
#include "homemeg/rng.hpp"

namespace homemeg {

// Lambda = 4 (p+q) / (p * alpha); equivalently 4 / pi(HC). Requires p > 0 and
// alpha > 0 (else LambdaUndefinedError).
double lambda_value(const HomeMegParams& params);

// Characteristic quantities and flooding-time bound arguments for a given n.
struct BoundReport {
    int n = 0;
    double p_hat = 0.0;   // P(edge connected | not home) one-step = p*a + (1-p)*g
    double q_hat = 0.0;   // P(edge connected | home) one-step = (1-q)*a + q*g
    double lambda = 0.0;
    double thm1_upper_arg = 0.0;  // log n / log(1 + n * p_hat)
    double thm1_lower_arg = 0.0;  // log n / log(1 + n * q_hat)
    double thm2_arg = 0.0;        // log n / log(1 + n / lambda)
    bool thm2_applicable = false; // ceil(5L/n) <= min(1/a, 1/(4q))
    bool corollary_regime = false;
    double corollary_eps = 0.0;   // eps with p = n^-(1+eps), when in regime
};

BoundReport bound_report(const HomeMegParams& params);

// Phase schedule of the multi-phase flooding analysis:
//   K = 2 * max(1, n / (5 Lambda)),
//   L_1 = ceil(4 Lambda ln n / n),
//   L_tau = 1 if 2 K^{tau-2} ln n >= Lambda else ceil(5 Lambda / n)  (tau >= 2),
//   t_1 = 0, t_tau = t_{tau-1} + L_{tau-1},
// stopping at the first tau with 2 K^{tau-1} ln n >= n / 16.
struct Phase {
    int tau = 0;
    std::uint64_t start = 0;   // t_tau
    std::uint64_t length = 0;  // L_tau
    double informed_target = 0.0;  // 2 K^{tau-1} ln n, capped at n
};

struct PhaseSchedule {
    int n = 0;
    double k_growth = 0.0;  // K
    std::vector<Phase> phases;
    std::uint64_t total_steps = 0;  // t_{tau*} + L_{tau*}
};

PhaseSchedule phase_schedule(const HomeMegParams& params);

// Generic disconnection bound (chain with contact probability >= delta from
// every state and <= lambda from every state, target set A):
//   P(e disconnected on a whole window of length l | start in A)
//     <= 1 - delta^l (1 - (lambda/delta)^l * pi(A and disconnected)/pi(A)),
// clamped to [0, 1].
double disconnection_bound(double lambda, double delta, double pi_a_disc,
                           double pi_a, int len);

// Home-MEG corollary: P(edge home and disconnected for l consecutive steps)
//   <= 1 - (1-q)^l (1 - (1-a)^l).
double home_disconnection_bound(const HomeMegParams& params, int len);

// Tighter direct specialization of the generic bound to the Home-MEG chain:
//   1 - (1-q)^l (1 - (1-a)^{l+1}).
// Dominated by home_disconnection_bound (it is never larger).
double home_disconnection_plugin(const HomeMegParams& params, int len);

// Largest l for which the connection lower bound below is valid:
// l <= min(1/alpha, 1/(4q)).
int connection_cap(const HomeMegParams& params);

// Lower bound on P(edge connected at least once in a window of length l),
// valid for l <= connection_cap: l / Lambda. (The derivation in fact supports
// a constant-factor-stronger statement; this conservative form is the one
// guaranteed by the stationary-measure argument used here.)
double connection_lower_bound(const HomeMegParams& params, int len);

// Exact flooding completion-time distribution by dynamic programming over
// (edge-state vector, informed set). Only feasible for n <= 4 (20 bits of
// state at n = 4); larger n throws CapacityError.
struct CompletionDistribution {
    int n = 0;
    std::uint64_t horizon = 0;
    std::vector<double> pmf;     // pmf[t] = P(completion at exactly t), t = 0..horizon
    double censored = 0.0;       // P(not complete by horizon)
    double mean_given_complete = 0.0;
};

CompletionDistribution exact_flooding_distribution(const HomeMegParams& params,
                                                   int source, std::uint64_t horizon);

// Monte Carlo estimate of P(an edge stays home & disconnected for the first
// l steps) for every l = 1..max_len in one pass per trial, starting from the
// stationary law conditioned on (home, disconnected).
struct WindowEstimate {
    std::vector<double> estimate;  // index l-1
    std::vector<double> sigma;     // binomial sigma per l
    std::uint64_t trials = 0;
};

WindowEstimate estimate_h_disconnection(const HomeMegParams& params, int max_len,
                                        std::uint64_t trials, std::uint64_t seed);

// Monte Carlo estimate of P(edge connected at least once in l steps) for
// l = 1..max_len (stationary start), via first-connect times.
WindowEstimate estimate_connection_prob(const HomeMegParams& params, int max_len,
                                        std::uint64_t trials, std::uint64_t seed);

// JSON report of bound_report + phase_schedule.
std::string bounds_to_json(const HomeMegParams& params);

}  // namespace homemeg
