#include "homemeg/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homemeg/errors.hpp"
#include "homemeg/meg.hpp"
#include "json_util.hpp"

namespace homemeg {

namespace {

constexpr double kRelTol = 1e-9;

bool rel_close(double a, double b) {
    return std::abs(a - b) <= kRelTol * std::max(std::abs(a), std::abs(b));
}

// min(1/alpha, 1/(4q)) with the conventions 1/0 = +inf.
double window_cap(const HomeMegParams& params) {
    const double inf = std::numeric_limits<double>::infinity();
    const double by_alpha = params.alpha > 0.0 ? 1.0 / params.alpha : inf;
    const double by_q = params.q > 0.0 ? 1.0 / (4.0 * params.q) : inf;
    return std::min(by_alpha, by_q);
}

// Ceiling that forgives representation noise: quantities like 5*Lambda/n are
// often exact integers in real arithmetic but land a few ulps above them in
// floating point, which would silently bump the ceiling by one.
std::uint64_t ceil_tol(double x) {
    return static_cast<std::uint64_t>(
        std::ceil(x - kRelTol * std::max(1.0, std::abs(x))));
}

}  // namespace

double lambda_value(const HomeMegParams& params) {
    if (params.p * params.alpha <= 0.0) {
        throw LambdaUndefinedError("Lambda = 4(p+q)/(p*alpha) undefined: p*alpha = 0");
    }
    return 4.0 * (params.p + params.q) / (params.p * params.alpha);
}

BoundReport bound_report(const HomeMegParams& params) {
    const int n = params.n;
    if (n < 2) throw ParamError("bound arguments need n >= 2");
    const double nd = static_cast<double>(n);
    const double ln_n = std::log(nd);

    BoundReport r;
    r.n = n;
    r.p_hat = p_hat(params);
    r.q_hat = q_hat(params);
    r.lambda = lambda_value(params);
    r.thm1_upper_arg = ln_n / std::log1p(nd * r.p_hat);
    r.thm1_lower_arg = ln_n / std::log1p(nd * r.q_hat);
    r.thm2_arg = ln_n / std::log1p(nd / r.lambda);
    r.thm2_applicable =
        static_cast<double>(ceil_tol(5.0 * r.lambda / nd)) <= window_cap(params);

    // alpha = n^eps / n  =>  eps = ln(alpha * n) / ln(n).
    const double eps = std::log(params.alpha * nd) / ln_n;
    r.corollary_regime = eps > 0.0 && eps < 1.0 &&
                         rel_close(params.q, 1.0 / nd) &&
                         rel_close(params.gamma, 1.0 / (nd * nd)) &&
                         rel_close(params.p, std::pow(nd, -(1.0 + eps)));
    r.corollary_eps = r.corollary_regime ? eps : 0.0;
    return r;
}

PhaseSchedule phase_schedule(const HomeMegParams& params) {
    const BoundReport r = bound_report(params);
    if (!r.thm2_applicable) {
        throw PreconditionError(
            "phase schedule needs ceil(5*Lambda/n) <= min(1/alpha, 1/(4q)): " +
            std::to_string(ceil_tol(5.0 * r.lambda / r.n)) + " > " +
            std::to_string(window_cap(params)));
    }
    const double nd = static_cast<double>(r.n);
    const double ln_n = std::log(nd);
    const double lam = r.lambda;

    PhaseSchedule sched;
    sched.n = r.n;
    sched.k_growth = 2.0 * std::max(1.0, nd / (5.0 * lam));
    const std::uint64_t long_period = ceil_tol(5.0 * lam / nd);

    std::uint64_t t = 0;
    for (int tau = 1;; ++tau) {
        Phase phase;
        phase.tau = tau;
        phase.start = t;
        if (tau == 1) {
            phase.length = static_cast<std::uint64_t>(std::ceil(4.0 * lam * ln_n / nd));
        } else {
            const double reach = 2.0 * std::pow(sched.k_growth, tau - 2) * ln_n;
            phase.length = reach >= lam ? 1 : long_period;
        }
        const double target = 2.0 * std::pow(sched.k_growth, tau - 1) * ln_n;
        phase.informed_target = std::min(nd, target);
        t += phase.length;
        sched.phases.push_back(phase);
        if (target >= nd / 16.0) break;
    }
    sched.total_steps = t;
    return sched;
}

double disconnection_bound(double lambda, double delta, double pi_a_disc,
                           double pi_a, int len) {
    if (len < 1) throw ParamError("window length must be >= 1");
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw ParamError("delta must be in (0, 1], got " + std::to_string(delta));
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ParamError("lambda must be in [0, 1], got " + std::to_string(lambda));
    }
    if (pi_a <= 0.0) {
        throw PreconditionError("pi(A) must be positive to condition on A");
    }
    const double ratio = std::pow(lambda / delta, len) * (pi_a_disc / pi_a);
    const double bound = 1.0 - std::pow(delta, len) * (1.0 - ratio);
    return std::clamp(bound, 0.0, 1.0);
}

double home_disconnection_bound(const HomeMegParams& params, int len) {
    if (len < 1) throw ParamError("window length must be >= 1");
    const double q = params.q, a = params.alpha;
    const double bound =
        1.0 - std::pow(1.0 - q, len) * (1.0 - std::pow(1.0 - a, len));
    return std::clamp(bound, 0.0, 1.0);
}

double home_disconnection_plugin(const HomeMegParams& params, int len) {
    // Generic bound with A = {HC, HD}: lambda = (1-q)(1-a), delta = (1-q),
    // pi(A and D)/pi(A) = 1 - a. One factor (1-a) tighter than the corollary.
    if (params.p <= 0.0) {
        throw PreconditionError("pi(H) = p/(p+q) must be positive");
    }
    const double q = params.q, a = params.alpha;
    return disconnection_bound((1.0 - q) * (1.0 - a), 1.0 - q,
                               params.p * (1.0 - a), params.p, len);
}

int connection_cap(const HomeMegParams& params) {
    const double cap = window_cap(params);
    if (cap >= static_cast<double>(std::numeric_limits<int>::max())) {
        return std::numeric_limits<int>::max();
    }
    return static_cast<int>(cap);
}

double connection_lower_bound(const HomeMegParams& params, int len) {
    if (len == 0) return 0.0;
    if (len < 0) throw ParamError("window length must be >= 0");
    if (static_cast<double>(len) > window_cap(params)) {
        throw PreconditionError("connection bound needs l <= min(1/alpha, 1/(4q)) = " +
                                std::to_string(window_cap(params)) + ", got l = " +
                                std::to_string(len));
    }
    return static_cast<double>(len) / lambda_value(params);
}

namespace {

// Digit e of the base-4 edge-state vector s.
inline int edge_digit(std::uint32_t s, int e) { return (s >> (2 * e)) & 3; }

// Connected states are HC = 0 and NC = 2: even codes.
inline bool digit_connected(int d) { return (d & 1) == 0; }

}  // namespace

CompletionDistribution exact_flooding_distribution(const HomeMegParams& params,
                                                   int source, std::uint64_t horizon) {
    const int n = params.n;
    if (n < 1) throw ParamError("graph operations need n >= 1");
    if (n > 4) {
        throw CapacityError("exact distribution limited to n <= 4, got n = " +
                            std::to_string(n));
    }
    if (source < 0 || source >= n) {
        throw ParamError("source " + std::to_string(source) + " out of range for n = " +
                         std::to_string(n));
    }

    CompletionDistribution out;
    out.n = n;
    out.horizon = horizon;
    out.pmf.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
    if (n == 1) {
        out.pmf[0] = 1.0;
        return out;
    }

    const int m = static_cast<int>(edge_count(n));
    const std::uint32_t n_states = 1u << (2 * m);  // 4^m
    const std::uint32_t n_masks = 1u << n;
    const std::uint32_t full = n_masks - 1;

    // Per-edge transition rows in state-code order [HC, HD, NC, ND].
    const auto row_home = transition_row(params, EdgeState::HC);
    const auto row_away = transition_row(params, EdgeState::NC);
    const auto& row_of = [&](int d) -> const std::array<double, 4>& {
        return d < 2 ? row_home : row_away;
    };

    std::vector<std::pair<int, int>> ends(m);
    for (int e = 0; e < m; ++e) ends[e] = edge_endpoints(static_cast<std::size_t>(e));

    // One flooding hop as a lookup: flood_map[s][I] = I'.
    std::vector<std::uint32_t> flood_map(static_cast<std::size_t>(n_states) * n_masks);
    for (std::uint32_t s = 0; s < n_states; ++s) {
        for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
            std::uint32_t next = mask;
            for (int e = 0; e < m; ++e) {
                if (!digit_connected(edge_digit(s, e))) continue;
                const auto [u, v] = ends[e];
                const bool iu = mask & (1u << u), iv = mask & (1u << v);
                if (iu != iv) next |= (1u << u) | (1u << v);
            }
            flood_map[static_cast<std::size_t>(s) * n_masks + mask] = next;
        }
    }

    // Initial joint law: product stationary over edges x point mass on {source}.
    const auto pi = stationary(params).as_array();
    // pi is in matrix order [HC, HD, NC, ND] which equals the digit coding.
    std::vector<double> joint(static_cast<std::size_t>(n_states) * n_masks, 0.0);
    const std::uint32_t init_mask = 1u << source;
    for (std::uint32_t s = 0; s < n_states; ++s) {
        double prob = 1.0;
        for (int e = 0; e < m; ++e) prob *= pi[edge_digit(s, e)];
        joint[static_cast<std::size_t>(s) * n_masks + init_mask] = prob;
    }

    std::vector<double> scratch(joint.size());
    double remaining = 1.0;
    for (std::uint64_t t = 1; t <= horizon && remaining > 0.0; ++t) {
        // Evolve each edge axis independently (tensor sweep per edge).
        for (int e = 0; e < m; ++e) {
            std::fill(scratch.begin(), scratch.end(), 0.0);
            for (std::uint32_t s = 0; s < n_states; ++s) {
                const int d = edge_digit(s, e);
                const std::uint32_t base = s & ~(3u << (2 * e));
                const auto& row = row_of(d);
                for (int d_next = 0; d_next < 4; ++d_next) {
                    const double w = row[d_next];
                    if (w == 0.0) continue;
                    const std::uint32_t s_next =
                        base | (static_cast<std::uint32_t>(d_next) << (2 * e));
                    double* dst = &scratch[static_cast<std::size_t>(s_next) * n_masks];
                    const double* src = &joint[static_cast<std::size_t>(s) * n_masks];
                    for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
                        dst[mask] += w * src[mask];
                    }
                }
            }
            joint.swap(scratch);
        }
        // Deterministic flooding hop, then absorb completed mass.
        std::fill(scratch.begin(), scratch.end(), 0.0);
        for (std::uint32_t s = 0; s < n_states; ++s) {
            const std::size_t row_base = static_cast<std::size_t>(s) * n_masks;
            for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
                const double prob = joint[row_base + mask];
                if (prob == 0.0) continue;
                scratch[row_base + flood_map[row_base + mask]] += prob;
            }
        }
        joint.swap(scratch);
        double done = 0.0;
        for (std::uint32_t s = 0; s < n_states; ++s) {
            double& cell = joint[static_cast<std::size_t>(s) * n_masks + full];
            done += cell;
            cell = 0.0;
        }
        out.pmf[static_cast<std::size_t>(t)] = done;
        remaining -= done;
    }
    out.censored = std::max(0.0, remaining);

    double mass = 0.0, weighted = 0.0;
    for (std::size_t t = 0; t < out.pmf.size(); ++t) {
        mass += out.pmf[t];
        weighted += static_cast<double>(t) * out.pmf[t];
    }
    out.mean_given_complete = mass > 0.0 ? weighted / mass : 0.0;
    return out;
}

namespace {

WindowEstimate tally_first_connect(int max_len, std::uint64_t trials,
                                   std::vector<std::uint64_t> counts) {
    WindowEstimate est;
    est.trials = trials;
    est.estimate.resize(static_cast<std::size_t>(max_len));
    est.sigma.resize(static_cast<std::size_t>(max_len));
    for (int len = 1; len <= max_len; ++len) {
        const double v =
            static_cast<double>(counts[static_cast<std::size_t>(len)]) /
            static_cast<double>(trials);
        est.estimate[static_cast<std::size_t>(len) - 1] = v;
        est.sigma[static_cast<std::size_t>(len) - 1] =
            std::sqrt(v * (1.0 - v) / static_cast<double>(trials));
    }
    return est;
}

}  // namespace

WindowEstimate estimate_h_disconnection(const HomeMegParams& params, int max_len,
                                        std::uint64_t trials, std::uint64_t seed) {
    if (max_len < 1) throw ParamError("max_len must be >= 1");
    if (params.p <= 0.0) throw PreconditionError("pi(H) = 0: cannot condition on H");
    // counts[len] = number of trials disconnected during the whole window
    // t = 0..len, starting from pi restricted to H (so HC w.p. alpha).
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_len) + 1, 0);
    const EdgeUniforms rng(derive_key(seed, 0x48444953ULL));  // "HDIS"
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        EdgeState state = rng.at(0, trial) < params.alpha ? EdgeState::HC : EdgeState::HD;
        int first_connect = 0;
        if (!connected(state)) {
            first_connect = max_len + 1;
            const EdgeUniforms walk(derive_key(seed, 0x48444954ULL, trial));
            for (int t = 1; t <= max_len; ++t) {
                state = step_edge(params, state,
                                  walk.at(static_cast<std::uint64_t>(t), 0));
                if (connected(state)) {
                    first_connect = t;
                    break;
                }
            }
        }
        // Window survives through len iff first connection is after len.
        for (int len = 1; len <= max_len && len < first_connect; ++len) {
            ++counts[static_cast<std::size_t>(len)];
        }
    }
    return tally_first_connect(max_len, trials, std::move(counts));
}

WindowEstimate estimate_connection_prob(const HomeMegParams& params, int max_len,
                                        std::uint64_t trials, std::uint64_t seed) {
    if (max_len < 1) throw ParamError("max_len must be >= 1");
    const auto pi = stationary(params).as_array();
    // counts[len] = number of trials with a connected step somewhere in 0..len.
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_len) + 1, 0);
    const EdgeUniforms rng(derive_key(seed, 0x434f4e4eULL));  // "CONN"
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        EdgeState state = sample_state(pi, rng.at(0, trial));
        int first_connect = connected(state) ? 0 : max_len + 1;
        if (first_connect != 0) {
            const EdgeUniforms walk(derive_key(seed, 0x434f4e4fULL, trial));
            for (int t = 1; t <= max_len; ++t) {
                state = step_edge(params, state,
                                  walk.at(static_cast<std::uint64_t>(t), 0));
                if (connected(state)) {
                    first_connect = t;
                    break;
                }
            }
        }
        for (int len = std::max(1, first_connect); len <= max_len; ++len) {
            ++counts[static_cast<std::size_t>(len)];
        }
    }
    return tally_first_connect(max_len, trials, std::move(counts));
}

std::string bounds_to_json(const HomeMegParams& params) {
    const BoundReport r = bound_report(params);
    nlohmann::json j = detail::report_skeleton(params);
    j["n"] = r.n;
    j["p_hat"] = r.p_hat;
    j["q_hat"] = r.q_hat;
    j["lambda"] = r.lambda;
    j["thm1_upper_arg"] = r.thm1_upper_arg;
    j["thm1_lower_arg"] = r.thm1_lower_arg;
    j["thm2_arg"] = r.thm2_arg;
    j["thm2_applicable"] = r.thm2_applicable;
    j["corollary_regime"] = r.corollary_regime;
    if (r.corollary_regime) j["corollary_eps"] = r.corollary_eps;
    if (r.thm2_applicable) {
        const PhaseSchedule sched = phase_schedule(params);
        nlohmann::json sj;
        sj["k_growth"] = sched.k_growth;
        sj["total_steps"] = sched.total_steps;
        auto& phases = sj["phases"] = nlohmann::json::array();
        for (const Phase& ph : sched.phases) {
            phases.push_back({{"tau", ph.tau},
                              {"start", ph.start},
                              {"length", ph.length},
                              {"informed_target", ph.informed_target}});
        }
        j["phase_schedule"] = std::move(sj);
    }
    return j.dump(2);
}

}  // namespace homemeg
