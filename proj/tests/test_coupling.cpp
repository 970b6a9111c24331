#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <random>

#include <homemeg/coupling.hpp>
#include <homemeg/errors.hpp>
#include <homemeg/meg.hpp>
#include <homemeg/params.hpp>
#include <homemeg/rng.hpp>

#include "oracles.hpp"

using namespace homemeg;

namespace {

// Random draws satisfying the coupling hypotheses p + q <= 1, gamma <= alpha.
HomeMegParams random_couplable(std::mt19937_64& gen, int n) {
    std::uniform_real_distribution<double> half(0.01, 0.49);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    const double p = half(gen), q = half(gen);
    double a = unit(gen), g = unit(gen);
    if (g > a) std::swap(a, g);
    return HomeMegParams(n, p, q, a, g);
}

}  // namespace

TEST_CASE("coupling hypotheses are enforced") {
    const EdgeUniforms rng(1);
    CHECK_THROWS_AS(coupled_initial(HomeMegParams(4, 0.7, 0.7, 0.5, 0.1), rng),
                    CouplingError);
    CHECK_THROWS_AS(coupled_initial(HomeMegParams(4, 0.1, 0.1, 0.2, 0.5), rng),
                    CouplingError);
    CHECK_NOTHROW(coupled_initial(HomeMegParams(4, 0.5, 0.5, 0.5, 0.5), rng));
}

TEST_CASE("one-step connection probabilities, frozen values") {
    const auto P = preset_params("infocom06", 4);
    const auto state = coupled_initial(P, EdgeUniforms(7));
    CHECK(state.p_hat == doctest::Approx(0.0005091).epsilon(1e-12));
    CHECK(state.q_hat == doctest::Approx(0.0682575).epsilon(1e-12));
    CHECK(state.p_hat == doctest::Approx(p_hat(P)).epsilon(1e-15));
    CHECK(state.q_hat == doctest::Approx(q_hat(P)).epsilon(1e-15));
}

TEST_CASE("hypotheses imply p_hat <= pi(connected) <= q_hat") {
    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 200; ++rep) {
        const auto P = random_couplable(gen, 2);
        const double pic = stationary(P).connected();
        CHECK(p_hat(P) <= pic + 1e-15);
        CHECK(pic <= q_hat(P) + 1e-15);
    }
}

TEST_CASE("shared-uniform step preserves the edge sandwich pointwise") {
    // For every prior state and every u: u < p_hat implies the chain lands in
    // a connected state, and a connected landing implies u < q_hat. This is
    // the deterministic heart of the coupling; check it on a dense u grid.
    std::mt19937_64 gen(29);
    for (int rep = 0; rep < 30; ++rep) {
        const auto P = random_couplable(gen, 2);
        const double ph = p_hat(P), qh = q_hat(P);
        for (int s = 0; s < 4; ++s) {
            for (int i = 0; i < 10000; ++i) {
                const double u = i / 10000.5;
                const bool meg_conn = connected(step_edge(P, static_cast<EdgeState>(s), u));
                if (u < ph) CHECK(meg_conn);
                if (meg_conn) CHECK(u < qh);
            }
        }
    }
}

TEST_CASE("the same holds for the coupled stationary initialization") {
    std::mt19937_64 gen(31);
    for (int rep = 0; rep < 30; ++rep) {
        const auto P = random_couplable(gen, 2);
        const auto probs = stationary(P).as_array();
        const double ph = p_hat(P), qh = q_hat(P);
        for (int i = 0; i < 10000; ++i) {
            const double u = i / 10000.5;
            const bool meg_conn = connected(sample_state(probs, u));
            if (u < ph) CHECK(meg_conn);
            if (meg_conn) CHECK(u < qh);
        }
    }
}

TEST_CASE("coupled evolution keeps the sandwich and the right marginals") {
    const HomeMegParams P(2, 0.1, 0.1, 0.5, 0.05);
    const EdgeUniforms rng(derive_key(17, 0));
    auto state = coupled_initial(P, rng);
    CHECK(state.sandwich_holds());
    std::uint64_t er_p_count = 0, er_q_count = 0, meg_count = 0;
    const int steps = 100000;
    for (int i = 0; i < steps; ++i) {
        coupled_step(state, P, rng);
        CHECK(state.sandwich_holds());
        er_p_count += state.er_p_edges.test(0);
        er_q_count += state.er_q_edges.test(0);
        meg_count += connected(state.meg.states[0]);
    }
    // ER marginals are i.i.d. Bernoulli(p_hat) / Bernoulli(q_hat).
    const double n = steps;
    CHECK(std::abs(er_p_count / n - state.p_hat) <
          4 * oracle::binom_sigma(state.p_hat, n));
    CHECK(std::abs(er_q_count / n - state.q_hat) <
          4 * oracle::binom_sigma(state.q_hat, n));
    // The MEG edge's connectivity frequency follows its stationary law; the
    // chain mixes fast at these parameters so 4 sigma of the i.i.d. bound is
    // only indicative, use a loose band.
    const double pic = stationary(P).connected();
    CHECK(std::abs(meg_count / n - pic) < 0.01);
}

TEST_CASE("alpha = gamma makes the three processes identical") {
    const double c = 0.4;
    const HomeMegParams P(8, 0.3, 0.3, c, c);
    const EdgeUniforms rng(derive_key(19, 0));
    auto state = coupled_initial(P, rng);
    for (int i = 0; i < 200; ++i) {
        coupled_step(state, P, rng);
        CHECK(state.p_hat == doctest::Approx(c).epsilon(1e-15));
        CHECK(state.q_hat == doctest::Approx(c).epsilon(1e-15));
        for (std::size_t e = 0; e < edge_count(8); ++e) {
            const bool conn = connected(state.meg.states[e]);
            CHECK(state.er_p_edges.test(e) == conn);
            CHECK(state.er_q_edges.test(e) == conn);
        }
    }
}

TEST_CASE("coupled flooding orders the completion times") {
    const HomeMegParams P(16, 0.1, 0.1, 0.5, 0.05);
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const auto run = coupled_flooding(P, 0, EdgeUniforms(derive_key(37, trial)));
        CHECK(run.sandwich_ok);
        REQUIRE(run.er_q.completed());
        const std::uint64_t horizon_plus = run.meg.horizon + 1;
        const auto time_of = [&](const FloodRun& r) {
            return r.completed() ? *r.completion_time : horizon_plus;
        };
        CHECK(time_of(run.er_q) <= time_of(run.meg));
        CHECK(time_of(run.meg) <= time_of(run.er_p));
    }
}

TEST_CASE("coupled flooding rejects bad parameters and sources") {
    CHECK_THROWS_AS(
        coupled_flooding(HomeMegParams(4, 0.8, 0.8, 0.5, 0.1), 0, EdgeUniforms(1)),
        CouplingError);
    CHECK_THROWS_AS(
        coupled_flooding(HomeMegParams(4, 0.1, 0.1, 0.5, 0.05), 9, EdgeUniforms(1)),
        ParamError);
}

TEST_CASE("coupled trials JSON reports violations and triples") {
    const HomeMegParams P(6, 0.1, 0.1, 0.5, 0.05);
    std::vector<CoupledFloodRun> runs;
    for (std::uint64_t trial = 0; trial < 5; ++trial)
        runs.push_back(coupled_flooding(P, 0, EdgeUniforms(derive_key(41, trial))));
    const auto doc = nlohmann::json::parse(coupled_trials_to_json(P, runs, 41));
    CHECK(doc.at("schema_version") == 1);
    CHECK(doc.at("sandwich_violations") == 0);
    CHECK(doc.at("trials") == 5);
    REQUIRE(doc.at("runs").size() == 5);
    CHECK(doc.at("runs").at(0).contains("t_q"));
    CHECK(doc.at("runs").at(0).contains("t_h"));
    CHECK(doc.at("runs").at(0).contains("t_p"));
    CHECK(doc.at("runs").at(0).at("sandwich_ok") == true);
    CHECK(doc.at("p_hat") == doctest::Approx(p_hat(P)).epsilon(1e-12));
}
