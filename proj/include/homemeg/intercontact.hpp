#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homemeg/params.hpp"
#include "homemeg/rng.hpp"

namespace homemeg {

// Conditional state probabilities at a contact instant (Bayes):
// P(H | contact) = p*a / (p*a + q*g). Requires p*a + q*g > 0 (otherwise
// contacts never happen and the inter-contact law is undefined;
// NoContactsError).
struct ContactCondProbs {
    double p_h_given_contact = 0.0;
    double p_nh_given_contact = 0.0;
};

ContactCondProbs contact_cond_probs(const HomeMegParams& params);

// Inter-contact time distribution. pmf[k] = P(IC = k) for k = 1..k_max
// (pmf[0] is unused and zero); ccdf[k] = P(IC > k) with ccdf[0] = 1.
// tail_mass = P(IC > k_max) = ccdf[k_max].
struct IcDistribution {
    std::vector<double> pmf;
    std::vector<double> ccdf;
    double tail_mass = 0.0;
    int k_max = 0;
};

// Analytic distribution via the two-sequence recursion. P_{i,X} is the
// probability that the next contact happens exactly i steps from now, given
// the edge is currently in home (X = H) or non-home (X = N) state:
//   P_{1,H} = (1-q) a + q g = q_hat,   P_{1,N} = p a + (1-p) g = p_hat,
//   P_{i,H} = q (1-g) P_{i-1,N} + (1-q)(1-a) P_{i-1,H},
//   P_{i,N} = (1-p)(1-g) P_{i-1,N} + p (1-a) P_{i-1,H},
// and P(IC = k) = P(H|contact) P_{k,H} + P(NH|contact) P_{k,N}.
// When a = g the law is exactly geometric(a).
// If tail_stop > 0, stops early once the tail mass drops below it.
IcDistribution ic_pmf(const HomeMegParams& params, int k_max, double tail_stop = 0.0);

// Empirical distribution from one long simulated edge trajectory: runs a
// single edge for `steps` transitions from a stationary start, collects gaps
// between consecutive contact steps, and tabulates them up to k_max. Requires
// at least 1000 observed gaps (else InsufficientDataError). `n_edges`
// independent edges are pooled to reach the sample size faster.
IcDistribution empirical_ic(const HomeMegParams& params, std::uint64_t steps,
                            int n_edges, int k_max, const EdgeUniforms& rng);

// Total-variation distance between two distributions truncated at the shorter
// k_max, with the tails compared as one extra bucket.
double tv_distance(const IcDistribution& a, const IcDistribution& b);

// CSV with header "k,pmf,ccdf" (k = 1..k_max).
std::string ic_to_csv(const IcDistribution& dist);

// JSON report with schema_version, params, pmf, ccdf, tail_mass.
std::string ic_to_json(const IcDistribution& dist, const HomeMegParams& params);

}  // namespace homemeg
