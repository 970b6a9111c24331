#include "homemeg/intercontact.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homemeg/errors.hpp"
#include "homemeg/meg.hpp"
#include "json_util.hpp"

namespace homemeg {

ContactCondProbs contact_cond_probs(const HomeMegParams& params) {
    const double w = params.p * params.alpha + params.q * params.gamma;
    if (w <= 0.0) {
        throw NoContactsError("p*alpha + q*gamma = 0: contacts never happen");
    }
    return {params.p * params.alpha / w, params.q * params.gamma / w};
}

IcDistribution ic_pmf(const HomeMegParams& params, int k_max, double tail_stop) {
    if (k_max < 1) throw ParamError("k_max must be >= 1");
    const ContactCondProbs cond = contact_cond_probs(params);
    const double p = params.p, q = params.q, a = params.alpha, g = params.gamma;

    IcDistribution dist;
    dist.pmf.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    dist.ccdf.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    dist.ccdf[0] = 1.0;

    // P_{k,H} / P_{k,N}: next contact exactly k steps ahead given current state.
    double ph = q_hat(params);
    double pn = p_hat(params);
    int k = 1;
    for (; k <= k_max; ++k) {
        if (k > 1) {
            const double ph_next = q * (1.0 - g) * pn + (1.0 - q) * (1.0 - a) * ph;
            const double pn_next = (1.0 - p) * (1.0 - g) * pn + p * (1.0 - a) * ph;
            ph = ph_next;
            pn = pn_next;
        }
        const auto ku = static_cast<std::size_t>(k);
        dist.pmf[ku] = cond.p_h_given_contact * ph + cond.p_nh_given_contact * pn;
        dist.ccdf[ku] = std::max(0.0, dist.ccdf[ku - 1] - dist.pmf[ku]);
        if (tail_stop > 0.0 && dist.ccdf[ku] < tail_stop) break;
    }
    const int actual = std::min(k, k_max);
    dist.k_max = actual;
    dist.pmf.resize(static_cast<std::size_t>(actual) + 1);
    dist.ccdf.resize(static_cast<std::size_t>(actual) + 1);
    dist.tail_mass = dist.ccdf[static_cast<std::size_t>(actual)];
    return dist;
}

IcDistribution empirical_ic(const HomeMegParams& params, std::uint64_t steps,
                            int n_edges, int k_max, const EdgeUniforms& rng) {
    if (k_max < 1) throw ParamError("k_max must be >= 1");
    if (n_edges < 1) throw ParamError("n_edges must be >= 1");
    const auto pi = stationary(params).as_array();

    std::vector<std::uint64_t> hist(static_cast<std::size_t>(k_max) + 1, 0);
    std::uint64_t overflow = 0;
    std::uint64_t total = 0;
    for (int e = 0; e < n_edges; ++e) {
        EdgeState state = sample_state(pi, rng.at(0, static_cast<std::uint64_t>(e)));
        std::int64_t last_contact = connected(state) ? 0 : -1;
        for (std::uint64_t t = 1; t <= steps; ++t) {
            state = step_edge(params, state, rng.at(t, static_cast<std::uint64_t>(e)));
            if (!connected(state)) continue;
            if (last_contact >= 0) {
                const std::uint64_t gap = t - static_cast<std::uint64_t>(last_contact);
                if (gap <= static_cast<std::uint64_t>(k_max)) {
                    ++hist[gap];
                } else {
                    ++overflow;
                }
                ++total;
            }
            last_contact = static_cast<std::int64_t>(t);
        }
    }
    constexpr std::uint64_t kMinGaps = 1000;
    if (total < kMinGaps) throw InsufficientDataError(total, kMinGaps);

    IcDistribution dist;
    dist.k_max = k_max;
    dist.pmf.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    dist.ccdf.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    dist.ccdf[0] = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        dist.pmf[ku] = static_cast<double>(hist[ku]) / static_cast<double>(total);
        dist.ccdf[ku] = std::max(0.0, dist.ccdf[ku - 1] - dist.pmf[ku]);
    }
    dist.tail_mass = static_cast<double>(overflow) / static_cast<double>(total);
    return dist;
}

double tv_distance(const IcDistribution& a, const IcDistribution& b) {
    const int k_common = std::min(a.k_max, b.k_max);
    double sum = 0.0;
    for (int k = 1; k <= k_common; ++k) {
        sum += std::abs(a.pmf[static_cast<std::size_t>(k)] -
                        b.pmf[static_cast<std::size_t>(k)]);
    }
    // Everything beyond k_common compared as one tail bucket.
    sum += std::abs(a.ccdf[static_cast<std::size_t>(k_common)] -
                    b.ccdf[static_cast<std::size_t>(k_common)]);
    return 0.5 * sum;
}

std::string ic_to_csv(const IcDistribution& dist) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "k,pmf,ccdf\n";
    for (int k = 1; k <= dist.k_max; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        out << k << ',' << dist.pmf[ku] << ',' << dist.ccdf[ku] << '\n';
    }
    return out.str();
}

std::string ic_to_json(const IcDistribution& dist, const HomeMegParams& params) {
    nlohmann::json j = detail::report_skeleton(params);
    j["k_max"] = dist.k_max;
    j["tail_mass"] = dist.tail_mass;
    j["pmf"] = std::vector<double>(dist.pmf.begin() + 1, dist.pmf.end());
    j["ccdf"] = std::vector<double>(dist.ccdf.begin() + 1, dist.ccdf.end());
    return j.dump(2);
}

}  // namespace homemeg
