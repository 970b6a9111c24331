#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homemeg/params.hpp"

namespace homemeg {

// An empirical inter-contact CCDF trace: sorted sample times (seconds) with
// ccdf[i] = P(IC > t_seconds[i]). step_seconds converts wall-clock time to
// chain steps (one step = step_seconds).
struct CcdfTrace {
    std::vector<double> t_seconds;
    std::vector<double> ccdf;
    double step_seconds = 86.4;
    std::string name;

    // Sample time mapped to a chain step index, clamped to >= 1.
    int step_of(std::size_t i) const;
};

// Parses CSV "t_seconds,ccdf" (header optional). A comment line of the form
// "# step_seconds=<v>" overrides the default step length. Throws TraceError
// on malformed rows, unsorted times, or ccdf outside [0, 1].
CcdfTrace parse_trace_csv(const std::string& text);
CcdfTrace load_trace(const std::string& path);

// Mean squared error between log10 of the model CCDF and log10 of the trace
// CCDF at the trace's step indices. Returns +infinity if the model ccdf is
// <= 0 at any required point with trace ccdf > 0; trace points with ccdf <= 0
// are skipped.
double log_mse(const HomeMegParams& params, const CcdfTrace& trace);

struct SearchConfig {
    int grid_points = 7;           // per axis, log-uniform over [1e-7, 1]
    double log10_min = -7.0;
    double log10_max = 0.0;
    int refine_starts = 5;         // best grid points refined by Nelder-Mead
    int max_iterations = 500;      // per Nelder-Mead run
    double tolerance = 1e-6;       // simplex diameter stop, in log10 space
    std::uint64_t seed = 0;        // reserved; the search is deterministic
};

struct FitResult {
    HomeMegParams params;  // n = 0: the fit is per-edge, graph size is not fitted
    double objective = 0.0;
    std::uint64_t iterations = 0;     // total Nelder-Mead iterations
    std::uint64_t evaluations = 0;    // total objective evaluations
    // Derived columns, recomputed from params:
    double p_h = 0.0;              // stationary home probability p / (p+q)
    double alpha_over_gamma = 0.0;
    double p_plus_q = 0.0;
};

// Deterministic multi-start fit: evaluates the full 4-d log-uniform grid,
// refines the best `refine_starts` candidates with Nelder-Mead in log10
// parameter space, and returns the best result. All four parameters are kept
// strictly inside (0, 1).
FitResult fit(const CcdfTrace& trace, const SearchConfig& config = {});

// Model CCDF values at the trace's step indices (for reporting residuals).
std::vector<double> model_ccdf_at(const HomeMegParams& params, const CcdfTrace& trace);

// JSON report with schema_version, fitted params, objective, derived values.
std::string fit_to_json(const FitResult& result, const CcdfTrace& trace);

}  // namespace homemeg
