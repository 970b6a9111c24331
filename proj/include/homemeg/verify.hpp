#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homemeg/params.hpp"

namespace homemeg {

// Outcome of one model-validation check (shared by `verify` and the
// acceptance suite). Checks compare Monte Carlo estimates against analytic
// bounds or exact oracles with 3-sigma tolerances, so a pass is a statistical
// statement, not exact equality.
struct VerifyResult {
    std::string check;
    bool passed = true;
    std::vector<std::string> details;  // one human-readable line per sub-check
};

// Lemma-1 corollary: estimated P(home & disconnected for l steps) must not
// exceed 1 - (1-q)^l (1 - (1-a)^l) + 3 sigma, for l = 1..max_len.
VerifyResult verify_lemma1(const HomeMegParams& params, int max_len,
                           std::uint64_t trials, std::uint64_t seed);

// Connection lower bound: estimated P(connected at least once in l steps)
// must be >= l / Lambda - 3 sigma for all l up to connection_cap.
VerifyResult verify_lambda_lb(const HomeMegParams& params, std::uint64_t trials,
                              std::uint64_t seed);

// Coupling sandwich: runs coupled flooding trials and requires zero edge-set
// or informed-set violations, plus T(G^q) <= T(H) <= T(G^p) on every trial
// where the order is observable.
VerifyResult verify_coupling(const HomeMegParams& params, int source,
                             std::uint64_t trials, std::uint64_t seed,
                             std::uint64_t horizon = 0);

// Exact-distribution oracle: Monte Carlo completion times for small n must be
// within tv_tol in total variation of exact_flooding_distribution.
VerifyResult verify_oracle(const HomeMegParams& params, std::uint64_t trials,
                           std::uint64_t seed, double tv_tol = 0.01);

std::string verify_to_json(const VerifyResult& result, const HomeMegParams& params);

}  // namespace homemeg
