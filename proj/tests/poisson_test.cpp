#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "portree/poisson.hpp"
#include "portree/stats.hpp"

using namespace portree;

TEST_CASE("moment generating function") {
    CHECK(mgf_W(0.0, 2.0) == doctest::Approx(1.0));
    CHECK(mgf_W(0.3, 0.0) == doctest::Approx(std::exp(0.3)));
    CHECK_THROWS_AS((void)mgf_W(0.1, -1.0), std::domain_error);
    // convergence requires u < -ln(1 - e^{-dt})
    CHECK_THROWS_AS((void)mgf_W(1.0, 2.0), std::domain_error);
}

TEST_CASE("finite differences of the mgf reproduce the moments") {
    for (const double dt : {0.5, 1.0, 2.0, 3.0}) {
        const auto w = moments_W(dt);
        const double h1 = 1e-6;
        CHECK((mgf_W(h1, dt) - mgf_W(-h1, dt)) / (2 * h1) == doctest::Approx(w.mean).epsilon(1e-6));
        const double h2 = 1e-4;
        const double second = (mgf_W(h2, dt) - 2 * mgf_W(0.0, dt) + mgf_W(-h2, dt)) / (h2 * h2);
        CHECK(second == doctest::Approx(w.second_moment).epsilon(1e-5));
        CHECK(w.variance == doctest::Approx(w.second_moment - w.mean * w.mean));
    }
    const auto w = moments_W(std::log(2.0));
    CHECK(w.mean == doctest::Approx(2.0));
    CHECK(w.second_moment == doctest::Approx(6.0));
    CHECK(w.variance == doctest::Approx(2.0));
    CHECK(moments_W(5.0).mean == doctest::Approx(std::exp(5.0)));
    CHECK_THROWS_AS((void)moments_W(-0.1), std::domain_error);
}

TEST_CASE("geometric law") {
    CHECK(geometric_pmf_W(std::log(2.0), 1) == doctest::Approx(0.5));
    CHECK(geometric_pmf_W(std::log(2.0), 3) == doctest::Approx(0.125));
    CHECK(geometric_pmf_W(1.0, 0) == 0.0);
    double total = 0.0;
    for (int k = 1; k < 2000; ++k) total += geometric_pmf_W(2.0, k);
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("Yule simulation") {
    Rng rng = make_stream(1, 0);
    CHECK(simulate_yule(0.0, rng) == 1);
    for (const double dt : {0.5, 1.0, 2.0}) {
        const auto sample = yule_sample(dt, 10'000, 40 + static_cast<std::uint64_t>(dt * 10));
        CHECK(geometric_goodness_of_fit(sample, dt).pvalue > 0.001);
        const Moments m = describe(sample);
        CHECK(std::abs(m.mean - std::exp(dt)) < 4.0 * m.standard_error());
    }
    CHECK(yule_sample(1.0, 100, 3, 1) == yule_sample(1.0, 100, 3, 4));
}

TEST_CASE("full tree simulation bookkeeping") {
    Rng rng = make_stream(2, 0);
    const auto idle = simulate_poissonized_tree(4, 0.0, rng);
    CHECK(idle.state.white == 1);
    CHECK(idle.events == 0);
    CHECK(idle.initial_blue == 6);
    CHECK(idle.alternate_initial_blue == 5);

    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng r = make_stream(3, s);
        const auto run = simulate_poissonized_tree(3, 1.5, r, kDefaultEventCap, true);
        CHECK(run.total_gaps == 2 * (run.j + run.events) - 1);
        CHECK(run.state.white + run.state.blue == run.total_gaps);
        std::int64_t focal = 0;
        double last = 0.0;
        for (const auto& e : run.log) {
            CHECK(e.time >= last);
            CHECK(e.time <= run.horizon);
            last = e.time;
            if (e.parent == 3) ++focal;
        }
        CHECK(run.state.white == 1 + focal);
        CHECK(static_cast<std::int64_t>(run.white_times.size()) == focal);
        CHECK(static_cast<std::int64_t>(run.log.size()) == run.events);
    }
}

TEST_CASE("focal gaps in the full tree follow the Yule law") {
    const auto tree = poissonized_tree_sample(2, 1.0, 10'000, 8);
    const Moments m = describe(tree);
    CHECK(std::abs(m.mean - std::exp(1.0)) < 4.0 * m.standard_error());
    const auto yule = yule_sample(1.0, 10'000, 9);
    CHECK(ks_two_sample(tree, yule).pvalue > 0.001);
    CHECK(geometric_goodness_of_fit(poissonized_tree_sample(3, 1.0, 10'000, 10), 1.0).pvalue > 0.001);
}

TEST_CASE("argument checks") {
    Rng rng = make_stream(4, 0);
    CHECK_THROWS_AS((void)simulate_poissonized_tree(1, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS((void)simulate_poissonized_tree(3, -1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS((void)simulate_poissonized_tree(3, 5.0, rng, 10), std::length_error);
    CHECK_THROWS_AS((void)simulate_yule(-1.0, rng), std::domain_error);
    CHECK_THROWS_AS((void)scaled_limit_test(1.0, 10'000, rng), std::domain_error);
    CHECK_THROWS_AS((void)scaled_limit_test(6.0, 100, rng), std::invalid_argument);
}

TEST_CASE("scaled limit is exponential") {
    CHECK(geometric_ks_floor(1e-3) == doctest::Approx(1e-3).epsilon(0.01));
    CHECK(geometric_ks_floor(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));

    Rng rng = make_stream(6, 0);
    const auto res = scaled_limit_test(6.0, 100'000, rng);
    CHECK(res.distance < 0.01);
    CHECK(res.pass);
    CHECK(std::abs(res.mean - 1.0) < 3.0 * res.standard_error);
}
