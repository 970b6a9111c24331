#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <homemeg/bitset.hpp>
#include <homemeg/flooding.hpp>
#include <homemeg/meg.hpp>
#include <homemeg/params.hpp>
#include <homemeg/rng.hpp>

using namespace homemeg;

namespace {

// Builds a snapshot with exactly the given edges connected (state NC;
// everything else ND).
GraphSnapshot make_snapshot(int n, const std::vector<std::pair<int, int>>& edges) {
    GraphSnapshot snap;
    snap.n = n;
    snap.t = 1;
    snap.states.assign(edge_count(n), EdgeState::ND);
    for (auto [u, v] : edges) snap.states[edge_id(u, v)] = EdgeState::NC;
    return snap;
}

}  // namespace

TEST_CASE("flood_step adds exactly the neighbors of the informed set") {
    Bitset informed(4);
    informed.set(0);
    informed.set(1);
    const auto snap = make_snapshot(4, {{1, 2}});
    CHECK(flood_step(informed, snap) == 1);
    CHECK(informed.test(0));
    CHECK(informed.test(1));
    CHECK(informed.test(2));
    CHECK_FALSE(informed.test(3));
}

TEST_CASE("flood_step does not chain within a single step") {
    // 0 -- 1 -- 2 in the same snapshot: information moves one hop per step.
    Bitset informed(3);
    informed.set(0);
    const auto snap = make_snapshot(3, {{0, 1}, {1, 2}});
    CHECK(flood_step(informed, snap) == 1);
    CHECK(informed.test(1));
    CHECK_FALSE(informed.test(2));
    CHECK(flood_step(informed, snap) == 1);
    CHECK(informed.test(2));
    CHECK(flood_step(informed, snap) == 0);
}

TEST_CASE("flood_step with no edges changes nothing") {
    Bitset informed(5);
    informed.set(2);
    const auto snap = make_snapshot(5, {});
    CHECK(flood_step(informed, snap) == 0);
    CHECK(informed.count() == 1);
}

TEST_CASE("default horizon") {
    // Lambda = 16 at these parameters; ceil(5*16/64) = 2, ceil(log2 64) = 6.
    CHECK(default_horizon(HomeMegParams(64, 0.1, 0.1, 0.5, 0.05)) == 64 * 6 * 2);
    // n = 1: the log term vanishes, the floor of 64 applies.
    CHECK(default_horizon(HomeMegParams(1, 0.1, 0.1, 0.5, 0.05)) == 64);
    // alpha = 0 leaves Lambda undefined; the stretch factor falls back to n,
    // giving 64 * ceil(log2 10) * 10.
    CHECK(default_horizon(HomeMegParams(10, 0.5, 0.5, 0.0, 0.3)) == 64 * 4 * 10);
}

TEST_CASE("single node floods instantly") {
    const HomeMegParams P(1, 0.3, 0.3, 0.8, 0.1);
    const auto run = run_flooding(P, 0, EdgeUniforms(derive_key(1, 0)));
    REQUIRE(run.completed());
    CHECK(*run.completion_time == 0);
    CHECK(run.informed_sizes == std::vector<std::uint64_t>{1});
}

TEST_CASE("certain contact floods in one step") {
    const HomeMegParams P(8, 0.4, 0.2, 1.0, 1.0);
    const auto run = run_flooding(P, 3, EdgeUniforms(derive_key(2, 0)));
    REQUIRE(run.completed());
    CHECK(*run.completion_time == 1);
    CHECK(run.informed_sizes == std::vector<std::uint64_t>{1, 8});
    CHECK(run.informed_final.all());
}

TEST_CASE("informed sizes are monotone and end at n on completion") {
    const HomeMegParams P(16, 0.1, 0.1, 0.5, 0.05);
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const auto run = run_flooding(P, 0, EdgeUniforms(derive_key(7, trial)));
        REQUIRE(run.completed());
        const auto& sz = run.informed_sizes;
        REQUIRE(!sz.empty());
        CHECK(sz.front() == 1);
        for (std::size_t i = 1; i < sz.size(); ++i) CHECK(sz[i] >= sz[i - 1]);
        CHECK(sz.back() == 16);
        CHECK(*run.completion_time == sz.size() - 1);
    }
}

TEST_CASE("horizon censoring") {
    // gamma = 0 and an all-ND start from an explicit init: with alpha > 0 but
    // p = 0 no edge ever returns home, so nothing can ever connect.
    const HomeMegParams P(4, 0.0, 0.5, 0.9, 0.0);
    std::vector<EdgeState> all_nd(edge_count(4), EdgeState::ND);
    const auto run = run_flooding(P, 0, EdgeUniforms(derive_key(3, 0)), 10,
                                  InitMode::explicit_states(all_nd));
    CHECK_FALSE(run.completed());
    CHECK(run.horizon == 10);
    CHECK(run.informed_sizes.size() == 11);
    CHECK(run.informed_sizes.back() == 1);
}

TEST_CASE("runs are deterministic in the key") {
    const HomeMegParams P(12, 0.1, 0.1, 0.5, 0.05);
    const auto a = run_flooding(P, 5, EdgeUniforms(derive_key(11, 4)));
    const auto b = run_flooding(P, 5, EdgeUniforms(derive_key(11, 4)));
    CHECK(a.informed_sizes == b.informed_sizes);
    CHECK(a.completion_time == b.completion_time);
}

TEST_CASE("source out of range is rejected") {
    const HomeMegParams P(4, 0.1, 0.1, 0.5, 0.05);
    CHECK_THROWS_AS(run_flooding(P, 4, EdgeUniforms(1)), ParamError);
    CHECK_THROWS_AS(run_flooding(P, -1, EdgeUniforms(1)), ParamError);
}

TEST_CASE("two-node completion time is geometric when alpha = gamma") {
    // With alpha = gamma = c connectivity is i.i.d. Bernoulli(c) per step, so
    // T is geometric(c) with mean 1/c; check the sample mean within 4 sigma.
    const double c = 0.37;
    const HomeMegParams P(2, 0.25, 0.65, c, c);
    const auto stats = flooding_time_estimate(P, {0}, 4000, 99);
    REQUIRE(stats.overall.completed == 4000);
    const double mean_T = 1.0 / c;
    const double var_T = (1.0 - c) / (c * c);
    const double sigma = std::sqrt(var_T / 4000.0);
    CHECK(stats.overall.mean == doctest::Approx(mean_T).epsilon(4 * sigma / mean_T));
}

TEST_CASE("summary statistics agree with a direct recomputation") {
    const HomeMegParams P(8, 0.1, 0.1, 0.5, 0.05);
    const auto stats = flooding_time_estimate(P, {}, 25, 7);
    CHECK(stats.sources.size() == 8);
    CHECK(stats.trials.size() == 8 * 25);
    CHECK(stats.per_source.size() == 8);
    CHECK(stats.overall.trials == 8 * 25);

    std::vector<std::uint64_t> times;
    for (const auto& t : stats.trials) {
        if (!t.censored) times.push_back(t.time);
    }
    REQUIRE(times.size() == stats.overall.completed);
    REQUIRE(!times.empty());
    std::sort(times.begin(), times.end());
    double mean = 0.0;
    for (auto v : times) mean += static_cast<double>(v);
    mean /= static_cast<double>(times.size());
    double var = 0.0;
    for (auto v : times) var += (v - mean) * (v - mean);
    var /= static_cast<double>(times.size());
    CHECK(stats.overall.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(stats.overall.stddev == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
    CHECK(stats.overall.min == times.front());
    CHECK(stats.overall.max == times.back());
    CHECK(stats.overall.median == times[times.size() / 2]);
    CHECK(stats.overall.p95 ==
          times[std::min(times.size() - 1, times.size() * 95 / 100)]);
    CHECK(stats.overall.min <= stats.overall.median);
    CHECK(stats.overall.median <= stats.overall.p95);
    CHECK(stats.overall.p95 <= stats.overall.max);
}

TEST_CASE("estimates are reproducible and seed-sensitive") {
    const HomeMegParams P(6, 0.1, 0.1, 0.5, 0.05);
    const auto a = flooding_time_estimate(P, {0, 3}, 50, 42);
    const auto b = flooding_time_estimate(P, {0, 3}, 50, 42);
    const auto c = flooding_time_estimate(P, {0, 3}, 50, 43);
    CHECK(flood_trials_to_csv(a) == flood_trials_to_csv(b));
    CHECK(flood_trials_to_csv(a) != flood_trials_to_csv(c));
    CHECK(a.overall.mean == b.overall.mean);
}

TEST_CASE("csv and json report shapes") {
    const HomeMegParams P(3, 0.3, 0.3, 0.9, 0.1);
    const auto stats = flooding_time_estimate(P, {0}, 4, 1);
    const auto csv = flood_trials_to_csv(stats);
    CHECK(csv.rfind("source,trial,completion_time,censored\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows
    const auto json = flood_stats_to_json(stats, P);
    CHECK(json.find("\"schema_version\"") != std::string::npos);
    CHECK(json.find("\"per_source\"") != std::string::npos);
    CHECK(json.find("\"overall\"") != std::string::npos);
}
