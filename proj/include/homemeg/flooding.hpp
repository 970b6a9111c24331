#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homemeg/bitset.hpp"
#include "homemeg/meg.hpp"
#include "homemeg/params.hpp"
#include "homemeg/rng.hpp"

namespace homemeg {

// One-step flooding update: everyone adjacent (in `snapshot`) to an informed
// node becomes informed. Returns the number of newly informed nodes.
int flood_step(Bitset& informed, const GraphSnapshot& snapshot);

// Default simulation horizon: 64 * ceil(log2 n) * max(1, ceil(5*Lambda/n)),
// and at least 64. Falls back to 64*n when Lambda is undefined (alpha = 0).
std::uint64_t default_horizon(const HomeMegParams& params);

// A single flooding run from one source.
struct FloodRun {
    int source = 0;
    std::uint64_t horizon = 0;
    // informed_sizes[t] = |I_t| for t = 0..last simulated step.
    std::vector<std::uint64_t> informed_sizes;
    // First t with |I_t| = n; absent if the horizon was hit first.
    std::optional<std::uint64_t> completion_time;
    Bitset informed_final;

    bool completed() const { return completion_time.has_value(); }
};

// Runs flooding from `source` under stationary initial conditions (or the
// given init mode), stopping at completion or after `horizon` steps.
FloodRun run_flooding(const HomeMegParams& params, int source, const EdgeUniforms& rng,
                      std::uint64_t horizon = 0,
                      const InitMode& init = InitMode::stationary_draw());

// One row of a flooding experiment: the completion result of a single trial.
struct FloodTrial {
    int source = 0;
    std::uint64_t trial = 0;
    std::uint64_t time = 0;  // completion time, or horizon when censored
    bool censored = false;
};

// Summary statistics over many trials (order statistics over completed ones).
struct FloodSummary {
    std::uint64_t trials = 0;
    std::uint64_t completed = 0;
    double mean = 0.0;    // over completed trials
    double stddev = 0.0;  // over completed trials
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    std::uint64_t median = 0;
    std::uint64_t p95 = 0;
};

struct FloodStats {
    int n = 0;
    std::uint64_t trials_per_source = 0;
    std::uint64_t horizon = 0;
    std::uint64_t seed = 0;
    std::vector<int> sources;
    std::vector<FloodTrial> trials;
    std::vector<FloodSummary> per_source;  // parallel to `sources`
    FloodSummary overall;
};

// Monte Carlo flooding experiment. `sources` empty means every node. Streams
// are derived from (seed, source, trial) so runs are reproducible and
// independent across trials.
FloodStats flooding_time_estimate(const HomeMegParams& params,
                                  const std::vector<int>& sources,
                                  std::uint64_t trials_per_source, std::uint64_t seed,
                                  std::uint64_t horizon = 0);

// CSV with header "source,trial,completion_time,censored".
std::string flood_trials_to_csv(const FloodStats& stats);

// JSON report with schema_version, params, and summaries.
std::string flood_stats_to_json(const FloodStats& stats, const HomeMegParams& params);

}  // namespace homemeg
