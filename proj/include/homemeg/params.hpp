#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "homemeg/errors.hpp"

namespace homemeg {

// Model parameters: per-edge chain probabilities plus the node count.
//   p     Non-Home -> Home transition probability
//   q     Home -> Non-Home transition probability
//   alpha contact probability while in Home
//   gamma contact probability while in Non-Home
// n = 0 is allowed for chain-only uses (fitting); graph operations require n >= 1.
struct HomeMegParams {
    int n = 1;
    double p = 0.0;
    double q = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;

    HomeMegParams() = default;

    HomeMegParams(int n, double p, double q, double alpha, double gamma)
        : n(n), p(p), q(q), alpha(alpha), gamma(gamma) {
        validate();
    }

    void validate() const {
        if (n < 0) throw ParamError("n must be nonnegative, got " + std::to_string(n));
        auto check_prob = [](double v, std::string_view name) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw ParamError(std::string(name) + " must be in [0, 1], got " +
                                 std::to_string(v));
            }
        };
        check_prob(p, "p");
        check_prob(q, "q");
        check_prob(alpha, "alpha");
        check_prob(gamma, "gamma");
        if (p + q <= 0.0) throw DegenerateChainError("p + q must be positive");
    }

    HomeMegParams with_n(int new_n) const { return {new_n, p, q, alpha, gamma}; }
};

// One-step connection probability from a Non-Home state.
inline double p_hat(const HomeMegParams& m) { return m.p * m.alpha + (1.0 - m.p) * m.gamma; }

// One-step connection probability from a Home state.
inline double q_hat(const HomeMegParams& m) { return (1.0 - m.q) * m.alpha + m.q * m.gamma; }

// Best-fit parameters for the bundled trace presets.
HomeMegParams preset_params(std::string_view name, int n = 0);

std::vector<std::string> preset_names();

// Sparse regime parametrized by eps in (0,1):
//   alpha = n^eps / n, gamma = 1/n^2, p = 1/n^(1+eps), q = 1/n.
HomeMegParams corollary_params(int n, double eps);

}  // namespace homemeg
