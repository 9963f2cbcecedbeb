#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "portree/exact_degree.hpp"

using namespace portree;

namespace {

// Brute-force law of the degree of node j at time n: walk every attachment
// history of the gap-oriented tree, carrying its probability.
void walk(std::vector<long>& outdeg, std::int64_t n, std::int64_t j, const Rational& prob,
          std::map<std::int64_t, Rational>& law) {
    const auto m = static_cast<std::int64_t>(outdeg.size());
    if (m == n) {
        const std::int64_t d = outdeg[static_cast<std::size_t>(j - 1)] + (j == 1 ? 0 : 1);
        law[d] += prob;
        return;
    }
    const long gaps_total = 2 * m - 1;
    for (std::int64_t v = 0; v < m; ++v) {
        const long w = outdeg[static_cast<std::size_t>(v)] + 1;
        outdeg[static_cast<std::size_t>(v)] += 1;
        outdeg.push_back(0);
        walk(outdeg, n, j, prob * make_rational(w, gaps_total), law);
        outdeg.pop_back();
        outdeg[static_cast<std::size_t>(v)] -= 1;
    }
}

std::map<std::int64_t, Rational> brute_force_law(std::int64_t n, std::int64_t j) {
    std::vector<long> outdeg{0};
    std::map<std::int64_t, Rational> law;
    walk(outdeg, n, j, Rational(1), law);
    return law;
}

}  // namespace

TEST_CASE("recurrence agrees with brute-force enumeration") {
    for (std::int64_t n = 1; n <= 8; ++n) {
        for (std::int64_t j = 1; j <= n; ++j) {
            const auto law = brute_force_law(n, j);
            const auto exact = degree_pmf_recurrence_exact(n, j);
            CHECK(exact.total() == 1);
            for (std::int64_t d = 0; d <= n; ++d) {
                const auto it = law.find(d);
                const Rational expected = it == law.end() ? Rational(0) : it->second;
                CHECK(exact.at(d) == expected);
            }
        }
    }
}

TEST_CASE("frozen small laws") {
    const auto law = degree_pmf_recurrence_exact(4, 2);
    CHECK(law.min_degree == 1);
    REQUIRE(law.probs.size() == 3);
    CHECK(law.probs[0] == make_rational(8, 15));
    CHECK(law.probs[1] == make_rational(1, 3));
    CHECK(law.probs[2] == make_rational(2, 15));

    CHECK(root_pmf_exact(4, 1) == make_rational(1, 5));
    CHECK(root_pmf_exact(4, 2) == make_rational(2, 5));
    CHECK(root_pmf_exact(4, 3) == make_rational(2, 5));
    CHECK(root_pmf(4, 1) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(root_pmf(4, 0) == 0.0);
    CHECK(root_pmf(4, 4) == 0.0);

    CHECK(degree_pmf_closed({6, 3, 2}) == doctest::Approx(0.27619047619047619).epsilon(1e-12));
    CHECK(degree_pmf_closed_exact({6, 3, 2}) == make_rational(29, 105));
    CHECK(degree_pmf_closed({10, 4, 5}) == doctest::Approx(0.01237977708565944).epsilon(1e-10));

    const auto three = degree_pmf_recurrence_exact(3, 1);
    CHECK(three.mean() == make_rational(5, 3));
    CHECK(three.variance() == make_rational(2, 9));
}

TEST_CASE("the three routes agree exactly") {
    for (std::int64_t n = 2; n <= 24; ++n) {
        for (std::int64_t j = 2; j <= n; ++j) {
            const auto rec = degree_pmf_recurrence_exact(n, j);
            for (std::int64_t d = 1; d <= n - j + 1; ++d) {
                const DegreeQuery q{n, j, d};
                CHECK(degree_pmf_closed_exact(q) == rec.at(d));
                CHECK(degree_pmf_hypergeom_exact(q) == rec.at(d));
            }
        }
        const auto root = degree_pmf_recurrence_exact(n, 1);
        for (std::int64_t d = 1; d < n; ++d) {
            CHECK(root_pmf_exact(n, d) == root.at(d));
            CHECK(root_pmf_substituted(n, d) == root.at(d));
        }
    }
}

TEST_CASE("double routes stay close for small n") {
    for (std::int64_t n = 2; n <= 12; ++n) {
        for (std::int64_t j = 1; j <= n; ++j) {
            const auto rec = degree_pmf_recurrence(n, j);
            const auto closed = degree_law(n, j, PmfMethod::ClosedForm);
            const auto hyp = degree_law(n, j, PmfMethod::Hypergeometric);
            for (std::int64_t d = rec.min_degree; d <= rec.max_degree(); ++d) {
                CHECK(closed.at(d) == doctest::Approx(rec.at(d)).epsilon(1e-9));
                CHECK(hyp.at(d) == doctest::Approx(rec.at(d)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("recurrence in double matches exact arithmetic at moderate n") {
    for (const auto [n, j] : {std::pair<std::int64_t, std::int64_t>{200, 1}, {200, 7}, {200, 150}, {500, 250}}) {
        const auto exact = degree_pmf_recurrence_exact(n, j);
        const auto approx = degree_pmf_recurrence(n, j);
        REQUIRE(exact.probs.size() == approx.probs.size());
        for (std::size_t i = 0; i < exact.probs.size(); ++i) {
            CHECK(std::abs(approx.probs[i] - to_double(exact.probs[i])) < 1e-13);
        }
        CHECK(approx.total() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("support and argument checks") {
    CHECK(degree_support_min(5, 1) == 1);
    CHECK(degree_support_min(1, 1) == 0);
    CHECK(degree_support_min(5, 3) == 1);
    CHECK(degree_support_max(5, 1) == 4);
    CHECK(degree_support_max(5, 3) == 3);
    CHECK(degree_pmf_closed({6, 3, 0}) == 0.0);
    CHECK(degree_pmf_closed({6, 3, 5}) == 0.0);
    CHECK_THROWS_AS((void)degree_pmf_closed({6, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS((void)degree_pmf_recurrence(3, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)degree_pmf_recurrence(3, 0), std::invalid_argument);
}

TEST_CASE("mean and variance formulas against the exact law") {
    for (std::int64_t n = 2; n <= 40; n += 3) {
        for (std::int64_t j = 1; j <= n; j += 2) {
            const auto law = degree_pmf_recurrence_exact(n, j);
            CHECK(degree_mean(n, j) == doctest::Approx(to_double(law.mean())).epsilon(1e-12));
            CHECK(degree_variance(n, j) == doctest::Approx(to_double(law.variance())).epsilon(1e-9));
            const auto m = degree_moments_asymptotic(n, j, MomentRegime::Exact);
            CHECK(m.mean == doctest::Approx(degree_mean(n, j)));
        }
    }
}

TEST_CASE("asymptotic regimes approach the exact moments") {
    const auto fixed = degree_moments_asymptotic(1'000'000, 3, MomentRegime::FixedJ);
    CHECK(fixed.mean / degree_mean(1'000'000, 3) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(fixed.variance / degree_variance(1'000'000, 3) == doctest::Approx(1.0).epsilon(1e-2));

    const auto growing = degree_moments_asymptotic(10'000'000, 3000, MomentRegime::GrowingJ);
    CHECK(growing.mean / degree_mean(10'000'000, 3000) == doctest::Approx(1.0).epsilon(2e-2));

    const auto linear = degree_moments_asymptotic(1'000'000, 250'000, MomentRegime::LinearTheta);
    CHECK(linear.mean == doctest::Approx(2.0));
    CHECK(linear.variance == doctest::Approx(2.0));
    CHECK(degree_mean(1'000'000, 250'000) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(degree_variance(1'000'000, 250'000) == doctest::Approx(2.0).epsilon(1e-3));

    CHECK_THROWS_AS((void)degree_moments_asymptotic(100, 100, MomentRegime::LinearTheta), std::domain_error);
}

TEST_CASE("normalization holds far beyond the enumeration range") {
    for (const auto [n, j] : {std::pair<std::int64_t, std::int64_t>{500, 1}, {500, 2}, {500, 499}, {500, 500}}) {
        CHECK(degree_pmf_recurrence_exact(n, j).total() == 1);
    }
}
