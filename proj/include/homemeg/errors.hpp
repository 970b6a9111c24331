#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homemeg {

// Parameter-domain violations (bad probabilities, n < 0, ...).
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// p + q = 0: the edge chain has no stationary distribution.
struct DegenerateChainError : ParamError {
    using ParamError::ParamError;
};

// Container length does not match the declared node/edge count.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// p*alpha + q*gamma = 0: contacts never happen, inter-contact time undefined.
struct NoContactsError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Empirical estimate asked for with too few observations.
struct InsufficientDataError : std::runtime_error {
    InsufficientDataError(std::size_t observed, std::size_t required)
        : std::runtime_error("insufficient data: observed " + std::to_string(observed) +
                             " gaps, need at least " + std::to_string(required)),
          observed(observed),
          required(required) {}
    std::size_t observed;
    std::size_t required;
};

// Coupling hypotheses (p+q <= 1, gamma <= alpha) violated: sandwich not guaranteed.
struct CouplingError : std::domain_error {
    using std::domain_error::domain_error;
};

// A bound's stated precondition does not hold; message carries the violated inequality.
struct PreconditionError : std::domain_error {
    using std::domain_error::domain_error;
};

// Lambda = 4(p+q)/(p*alpha) undefined because p*alpha = 0.
struct LambdaUndefinedError : std::domain_error {
    using std::domain_error::domain_error;
};

// Exact enumeration asked for a state space beyond its capacity.
struct CapacityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent CCDF trace file; message names the offending line.
struct TraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every candidate evaluation was infeasible.
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failure while reading or writing results.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace homemeg
