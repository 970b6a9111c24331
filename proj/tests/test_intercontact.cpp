#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <homemeg/errors.hpp>
#include <homemeg/intercontact.hpp>
#include <homemeg/params.hpp>
#include <homemeg/rng.hpp>

#include "oracles.hpp"

using namespace homemeg;

TEST_CASE("contact conditional probabilities") {
    SUBCASE("frozen mit-cell value") {
        // p*a / (p*a + q*g) = 1.35e-5 / (1.35e-5 + 2.574e-5) = 75/218.
        const auto c = contact_cond_probs(preset_params("mit-cell"));
        CHECK(c.p_h_given_contact == doctest::Approx(0.3440366972477064).epsilon(1e-12));
        CHECK(c.p_h_given_contact + c.p_nh_given_contact ==
              doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("contacts only from home") {
        const auto c = contact_cond_probs(HomeMegParams(0, 0.2, 0.4, 0.7, 0.0));
        CHECK(c.p_h_given_contact == 1.0);
    }
    SUBCASE("no contacts at all") {
        CHECK_THROWS_AS(contact_cond_probs(HomeMegParams(0, 0.2, 0.4, 0.0, 0.0)),
                        NoContactsError);
    }
}

TEST_CASE("analytic pmf matches brute-force path enumeration") {
    const HomeMegParams P(0, 0.3, 0.3, 0.8, 0.1);
    const auto dist = ic_pmf(P, 12);
    REQUIRE(dist.k_max == 12);
    for (int k = 1; k <= 12; ++k) {
        CHECK(dist.pmf[k] ==
              doctest::Approx(oracle::ic_pmf_bruteforce(P, k)).epsilon(1e-12));
    }
    // Frozen values from exact rational arithmetic.
    CHECK(dist.pmf[1] == doctest::Approx(0.5588888888888889).epsilon(1e-13));
    CHECK(dist.pmf[2] == doctest::Approx(0.17345555555555556).epsilon(1e-13));
    CHECK(dist.pmf[6] == doctest::Approx(0.025751190881222224).epsilon(1e-13));
    CHECK(dist.pmf[12] == doctest::Approx(0.0021491374037093895).epsilon(1e-13));
}

TEST_CASE("brute force agrees for asymmetric parameters too") {
    const HomeMegParams P(0, 0.15, 0.45, 0.35, 0.05);
    const auto dist = ic_pmf(P, 10);
    for (int k = 1; k <= 10; ++k) {
        CHECK(dist.pmf[k] ==
              doctest::Approx(oracle::ic_pmf_bruteforce(P, k)).epsilon(1e-12));
    }
}

TEST_CASE("alpha = gamma collapses to a geometric law") {
    const double a = 0.37;
    const HomeMegParams P(0, 0.25, 0.65, a, a);
    const auto dist = ic_pmf(P, 30);
    for (int k = 1; k <= 30; ++k) {
        CHECK(dist.pmf[k] ==
              doctest::Approx(a * std::pow(1.0 - a, k - 1)).epsilon(1e-12));
        CHECK(dist.ccdf[k] == doctest::Approx(std::pow(1.0 - a, k)).epsilon(1e-12));
    }
}

TEST_CASE("certain contact means IC = 1 always") {
    const auto dist = ic_pmf(HomeMegParams(0, 0.5, 0.5, 1.0, 1.0), 5);
    CHECK(dist.pmf[1] == 1.0);
    for (int k = 2; k <= 5; ++k) CHECK(dist.pmf[k] == 0.0);
    CHECK(dist.tail_mass == 0.0);
}

TEST_CASE("pmf and ccdf are a consistent distribution") {
    std::mt19937_64 gen(17);
    for (int rep = 0; rep < 25; ++rep) {
        const auto P = oracle::random_params(gen);
        const auto dist = ic_pmf(P, 200);
        CHECK(dist.ccdf[0] == 1.0);
        double tail = 1.0;
        for (int k = 1; k <= 200; ++k) {
            CHECK(dist.pmf[k] >= 0.0);
            CHECK(dist.pmf[k] <= 1.0);
            tail -= dist.pmf[k];
            CHECK(dist.ccdf[k] == doctest::Approx(tail).epsilon(1e-9));
            CHECK(dist.ccdf[k] <= dist.ccdf[k - 1] + 1e-15);
        }
        CHECK(dist.tail_mass == doctest::Approx(dist.ccdf[200]).epsilon(1e-12));
    }
}

TEST_CASE("tail_stop truncates early") {
    const HomeMegParams P(0, 0.3, 0.3, 0.8, 0.1);
    const auto dist = ic_pmf(P, 100000, 1e-6);
    CHECK(dist.k_max < 100000);
    CHECK(dist.tail_mass < 1e-6);
    // The truncated prefix agrees with the untruncated law.
    const auto full = ic_pmf(P, dist.k_max);
    for (int k = 1; k <= dist.k_max; ++k)
        CHECK(dist.pmf[k] == doctest::Approx(full.pmf[k]).epsilon(1e-14));
}

TEST_CASE("empirical law converges to the analytic one") {
    const HomeMegParams P(0, 0.3, 0.3, 0.8, 0.1);
    const EdgeUniforms rng(derive_key(2024, 0));
    const auto emp = empirical_ic(P, 200000, 1, 50, rng);
    const auto ana = ic_pmf(P, 50);
    CHECK(tv_distance(emp, ana) < 0.02);
    CHECK(tv_distance(emp, emp) == 0.0);
    CHECK(tv_distance(ana, ana) == 0.0);
}

TEST_CASE("empirical estimate needs enough gaps") {
    // Contacts are near-certain every step, so steps ~ gaps; 100 steps cannot
    // produce the required 1000 observations.
    const HomeMegParams P(0, 0.5, 0.5, 1.0, 1.0);
    const EdgeUniforms rng(derive_key(3, 0));
    CHECK_THROWS_AS(empirical_ic(P, 100, 1, 10, rng), InsufficientDataError);
    try {
        empirical_ic(P, 100, 1, 10, rng);
    } catch (const InsufficientDataError& e) {
        CHECK(e.required == 1000);
        CHECK(e.observed < 1000);
    }
}

TEST_CASE("csv and json outputs carry the distribution") {
    const HomeMegParams P(0, 0.5, 0.5, 1.0, 1.0);
    const auto dist = ic_pmf(P, 3);
    const auto csv = ic_to_csv(dist);
    CHECK(csv.find("k,pmf,ccdf") == 0);
    CHECK(csv.find("\n1,1") != std::string::npos);
    const auto json = ic_to_json(dist, P);
    CHECK(json.find("\"schema_version\"") != std::string::npos);
    CHECK(json.find("\"tail_mass\"") != std::string::npos);
}
