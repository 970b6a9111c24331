#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is derived from first principles (product-form matrix
// construction, path enumeration, power iteration) rather than calling the
// library's own formulas, so agreement is meaningful.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <homemeg/params.hpp>

namespace oracle {

using Matrix4 = std::array<std::array<double, 4>, 4>;
using Vec4 = std::array<double, 4>;

// State order [HC, HD, NC, ND]; location component: 0 = home, 1 = non-home.
inline constexpr int kLoc[4] = {0, 0, 1, 1};
inline constexpr bool kContact[4] = {true, false, true, false};

// The chain factorizes as: move the location (home <-> non-home two-state
// chain), then draw the contact flag in the new location. Building the 4x4
// matrix as that product is an independent encoding of the model.
inline Matrix4 transition_matrix(const homemeg::HomeMegParams& params) {
    const double move[2][2] = {{1.0 - params.q, params.q},
                               {params.p, 1.0 - params.p}};
    const double contact_at[2] = {params.alpha, params.gamma};
    Matrix4 m{};
    for (int s = 0; s < 4; ++s) {
        for (int t = 0; t < 4; ++t) {
            const int to_loc = kLoc[t];
            const double c = contact_at[to_loc];
            m[s][t] = move[kLoc[s]][to_loc] * (kContact[t] ? c : 1.0 - c);
        }
    }
    return m;
}

inline Vec4 left_multiply(const Vec4& v, const Matrix4& m) {
    Vec4 out{};
    for (int t = 0; t < 4; ++t)
        for (int s = 0; s < 4; ++s) out[t] += v[s] * m[s][t];
    return out;
}

inline double linf(const Vec4& a, const Vec4& b) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Stationary distribution by power iteration from the uniform vector.
inline Vec4 stationary_power_iteration(const homemeg::HomeMegParams& params,
                                       int iterations = 20000) {
    const Matrix4 m = transition_matrix(params);
    Vec4 v = {0.25, 0.25, 0.25, 0.25};
    for (int i = 0; i < iterations; ++i) v = left_multiply(v, m);
    return v;
}

// Brute-force inter-contact pmf by enumerating all 2^k location paths.
// A contact draw happens in the location *after* each move; IC = k means no
// contact at steps 1..k-1 and a contact at step k. The start location is
// distributed as P(location | contact now).
inline double ic_pmf_bruteforce(const homemeg::HomeMegParams& params, int k) {
    const double p = params.p, q = params.q, a = params.alpha, g = params.gamma;
    const double w = p * a + q * g;
    const double start_w[2] = {p * a / w, q * g / w};  // home, non-home
    const double move[2][2] = {{1.0 - q, q}, {p, 1.0 - p}};
    const double contact_at[2] = {a, g};
    double total = 0.0;
    for (int start = 0; start < 2; ++start) {
        for (std::uint64_t path = 0; path < (std::uint64_t{1} << k); ++path) {
            double prob = start_w[start];
            int loc = start;
            for (int i = 0; i < k; ++i) {
                const int nxt = static_cast<int>((path >> i) & 1u);
                prob *= move[loc][nxt];
                const double c = contact_at[nxt];
                prob *= (i == k - 1) ? c : 1.0 - c;
                loc = nxt;
            }
            total += prob;
        }
    }
    return total;
}

// Standard error of a binomial proportion estimate.
inline double binom_sigma(double p_hat, double trials) {
    return std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) / trials);
}

// Random valid parameter draws for property tests (bounded away from the
// degenerate p + q = 0 corner).
inline homemeg::HomeMegParams random_params(std::mt19937_64& gen, int n = 0) {
    std::uniform_real_distribution<double> u(0.01, 0.99);
    return homemeg::HomeMegParams(n, u(gen), u(gen), u(gen), u(gen));
}

}  // namespace oracle
