#include "homemeg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homemeg/bounds.hpp"
#include "homemeg/coupling.hpp"
#include "homemeg/errors.hpp"
#include "homemeg/flooding.hpp"
#include "json_util.hpp"

namespace homemeg {

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out << std::setprecision(10) << v;
    return out.str();
}

}  // namespace

VerifyResult verify_lemma1(const HomeMegParams& params, int max_len,
                           std::uint64_t trials, std::uint64_t seed) {
    VerifyResult result;
    result.check = "lemma1";
    const WindowEstimate est = estimate_h_disconnection(params, max_len, trials, seed);
    for (int len = 1; len <= max_len; ++len) {
        const double bound = home_disconnection_bound(params, len);
        const double value = est.estimate[static_cast<std::size_t>(len) - 1];
        const double sigma = est.sigma[static_cast<std::size_t>(len) - 1];
        const bool ok = value <= bound + 3.0 * sigma;
        if (!ok) result.passed = false;
        result.details.push_back("l=" + std::to_string(len) + " estimate=" + fmt(value) +
                                 " bound=" + fmt(bound) + " sigma=" + fmt(sigma) +
                                 (ok ? " ok" : " VIOLATED"));
    }
    return result;
}

VerifyResult verify_lambda_lb(const HomeMegParams& params, std::uint64_t trials,
                              std::uint64_t seed) {
    VerifyResult result;
    result.check = "lambda-lb";
    const int cap = connection_cap(params);
    const int max_len = std::min(cap, 20);
    if (max_len < 1) {
        result.passed = false;
        result.details.push_back("no valid window: min(1/alpha, 1/(4q)) < 1");
        return result;
    }
    const WindowEstimate est = estimate_connection_prob(params, max_len, trials, seed);
    for (int len = 1; len <= max_len; ++len) {
        const double bound = connection_lower_bound(params, len);
        const double value = est.estimate[static_cast<std::size_t>(len) - 1];
        const double sigma = est.sigma[static_cast<std::size_t>(len) - 1];
        const bool ok = value >= bound - 3.0 * sigma;
        if (!ok) result.passed = false;
        result.details.push_back("l=" + std::to_string(len) + " estimate=" + fmt(value) +
                                 " lower_bound=" + fmt(bound) + " sigma=" + fmt(sigma) +
                                 (ok ? " ok" : " VIOLATED"));
    }
    return result;
}

VerifyResult verify_coupling(const HomeMegParams& params, int source,
                             std::uint64_t trials, std::uint64_t seed,
                             std::uint64_t horizon) {
    VerifyResult result;
    result.check = "coupling";
    std::uint64_t violations = 0;
    std::uint64_t completed_all = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const EdgeUniforms rng(derive_key(seed, trial));
        const CoupledFloodRun run = coupled_flooding(params, source, rng, horizon);
        if (!run.sandwich_ok) ++violations;
        if (run.er_p.completed() && run.meg.completed() && run.er_q.completed()) {
            ++completed_all;
        }
    }
    result.passed = violations == 0;
    result.details.push_back("trials=" + std::to_string(trials) +
                             " sandwich_violations=" + std::to_string(violations) +
                             " all_three_completed=" + std::to_string(completed_all));
    return result;
}

VerifyResult verify_oracle(const HomeMegParams& params, std::uint64_t trials,
                           std::uint64_t seed, double tv_tol) {
    VerifyResult result;
    result.check = "oracle";
    const std::uint64_t horizon = default_horizon(params);
    const CompletionDistribution exact = exact_flooding_distribution(params, 0, horizon);

    std::vector<double> emp(static_cast<std::size_t>(horizon) + 1, 0.0);
    std::uint64_t censored = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const EdgeUniforms rng(derive_key(seed, trial));
        const FloodRun run = run_flooding(params, 0, rng, horizon);
        if (run.completed()) {
            emp[static_cast<std::size_t>(*run.completion_time)] += 1.0;
        } else {
            ++censored;
        }
    }
    for (double& v : emp) v /= static_cast<double>(trials);

    double tv = std::abs(exact.censored -
                         static_cast<double>(censored) / static_cast<double>(trials));
    for (std::size_t t = 0; t < emp.size(); ++t) {
        tv += std::abs(exact.pmf[t] - emp[t]);
    }
    tv *= 0.5;
    result.passed = tv < tv_tol;
    result.details.push_back("trials=" + std::to_string(trials) + " tv_distance=" +
                             fmt(tv) + " tolerance=" + fmt(tv_tol) +
                             " exact_mean=" + fmt(exact.mean_given_complete));
    return result;
}

std::string verify_to_json(const VerifyResult& result, const HomeMegParams& params) {
    nlohmann::json j = detail::report_skeleton(params);
    j["check"] = result.check;
    j["passed"] = result.passed;
    j["details"] = result.details;
    return j.dump(2);
}

}  // namespace homemeg
