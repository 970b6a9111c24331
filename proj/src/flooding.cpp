#include "homemeg/flooding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homemeg/bounds.hpp"
#include "homemeg/errors.hpp"
#include "json_util.hpp"

namespace homemeg {

int flood_step(Bitset& informed, const GraphSnapshot& snapshot) {
    Bitset next = informed;
    std::size_t e = 0;
    for (int v = 1; v < snapshot.n; ++v) {
        for (int u = 0; u < v; ++u, ++e) {
            if (!connected(snapshot.states[e])) continue;
            const bool iu = informed.test(u), iv = informed.test(v);
            if (iu == iv) continue;
            next.set(iu ? v : u);
        }
    }
    const int gained = static_cast<int>(next.count() - informed.count());
    informed = std::move(next);
    return gained;
}

std::uint64_t default_horizon(const HomeMegParams& params) {
    const int n = params.n;
    if (n <= 1) return 64;
    const auto log2n = static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(n))));
    std::uint64_t stretch = 1;
    if (params.p > 0.0 && params.alpha > 0.0) {
        const double lam = lambda_value(params);
        stretch = static_cast<std::uint64_t>(
            std::max(1.0, std::ceil(5.0 * lam / static_cast<double>(n))));
    } else {
        stretch = static_cast<std::uint64_t>(n);
    }
    return std::max<std::uint64_t>(64, 64 * log2n * stretch);
}

FloodRun run_flooding(const HomeMegParams& params, int source, const EdgeUniforms& rng,
                      std::uint64_t horizon, const InitMode& init) {
    if (source < 0 || source >= params.n) {
        throw ParamError("source " + std::to_string(source) + " out of range for n = " +
                         std::to_string(params.n));
    }
    if (horizon == 0) horizon = default_horizon(params);

    FloodRun run;
    run.source = source;
    run.horizon = horizon;

    GraphSnapshot snap = sample_initial(params, init, rng);
    Bitset informed(static_cast<std::size_t>(params.n));
    informed.set(static_cast<std::size_t>(source));
    run.informed_sizes.push_back(informed.count());
    if (informed.all()) {
        run.completion_time = 0;
        run.informed_final = informed;
        return run;
    }
    for (std::uint64_t t = 1; t <= horizon; ++t) {
        evolve_in_place(snap, params, rng);
        flood_step(informed, snap);
        run.informed_sizes.push_back(informed.count());
        if (informed.all()) {
            run.completion_time = t;
            break;
        }
    }
    run.informed_final = std::move(informed);
    return run;
}

namespace {

FloodSummary summarize(std::vector<std::uint64_t> completed_times, std::uint64_t trials) {
    FloodSummary s;
    s.trials = trials;
    s.completed = completed_times.size();
    if (completed_times.empty()) return s;
    std::sort(completed_times.begin(), completed_times.end());
    s.min = completed_times.front();
    s.max = completed_times.back();
    s.median = completed_times[completed_times.size() / 2];
    s.p95 = completed_times[std::min(completed_times.size() - 1,
                                     (completed_times.size() * 95) / 100)];
    const double mean =
        std::accumulate(completed_times.begin(), completed_times.end(), 0.0) /
        static_cast<double>(completed_times.size());
    double var = 0.0;
    for (std::uint64_t t : completed_times) {
        const double d = static_cast<double>(t) - mean;
        var += d * d;
    }
    var /= static_cast<double>(completed_times.size());
    s.mean = mean;
    s.stddev = std::sqrt(var);
    return s;
}

}  // namespace

FloodStats flooding_time_estimate(const HomeMegParams& params,
                                  const std::vector<int>& sources,
                                  std::uint64_t trials_per_source, std::uint64_t seed,
                                  std::uint64_t horizon) {
    if (params.n < 1) throw ParamError("graph operations need n >= 1");
    if (horizon == 0) horizon = default_horizon(params);

    FloodStats stats;
    stats.n = params.n;
    stats.trials_per_source = trials_per_source;
    stats.horizon = horizon;
    stats.seed = seed;
    stats.sources = sources;
    if (stats.sources.empty()) {
        stats.sources.resize(static_cast<std::size_t>(params.n));
        std::iota(stats.sources.begin(), stats.sources.end(), 0);
    }

    std::vector<std::uint64_t> all_completed;
    for (int source : stats.sources) {
        std::vector<std::uint64_t> completed;
        for (std::uint64_t trial = 0; trial < trials_per_source; ++trial) {
            EdgeUniforms rng(derive_key(seed, static_cast<std::uint64_t>(source), trial));
            FloodRun run = run_flooding(params, source, rng, horizon);
            FloodTrial row;
            row.source = source;
            row.trial = trial;
            row.censored = !run.completed();
            row.time = run.completed() ? *run.completion_time : horizon;
            stats.trials.push_back(row);
            if (!row.censored) {
                completed.push_back(row.time);
                all_completed.push_back(row.time);
            }
        }
        stats.per_source.push_back(summarize(std::move(completed), trials_per_source));
    }
    stats.overall = summarize(std::move(all_completed),
                              trials_per_source * stats.sources.size());
    return stats;
}

std::string flood_trials_to_csv(const FloodStats& stats) {
    std::ostringstream out;
    out << "source,trial,completion_time,censored\n";
    for (const FloodTrial& row : stats.trials) {
        out << row.source << ',' << row.trial << ',' << row.time << ','
            << (row.censored ? 1 : 0) << '\n';
    }
    return out.str();
}

namespace {

nlohmann::json summary_json(const FloodSummary& s) {
    return {{"trials", s.trials}, {"completed", s.completed}, {"mean", s.mean},
            {"stddev", s.stddev}, {"min", s.min},             {"max", s.max},
            {"median", s.median}, {"p95", s.p95}};
}

}  // namespace

std::string flood_stats_to_json(const FloodStats& stats, const HomeMegParams& params) {
    nlohmann::json j = detail::report_skeleton(params);
    j["seed"] = stats.seed;
    j["horizon"] = stats.horizon;
    j["trials_per_source"] = stats.trials_per_source;
    j["sources"] = stats.sources;
    auto& per_source = j["per_source"] = nlohmann::json::array();
    for (std::size_t i = 0; i < stats.per_source.size(); ++i) {
        nlohmann::json row = summary_json(stats.per_source[i]);
        row["source"] = stats.sources[i];
        per_source.push_back(std::move(row));
    }
    j["overall"] = summary_json(stats.overall);
    return j.dump(2);
}

}  // namespace homemeg
