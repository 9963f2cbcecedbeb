#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "portree/exact_zagreb.hpp"

using namespace portree;

namespace {

struct Expectations {
    Rational z;
    Rational y;
    Rational z2;
};

// Exhaustive walk over degree-proportional histories, summing Z, Y and Z²
// weighted by path probability.
void walk(std::vector<long>& degree, std::int64_t n, const Rational& prob, Expectations& acc) {
    const auto m = static_cast<std::int64_t>(degree.size());
    if (m == n) {
        long z = 0;
        long y = 0;
        for (const long d : degree) {
            z += d * d;
            y += d * d * d;
        }
        acc.z += prob * z;
        acc.y += prob * y;
        acc.z2 += prob * z * z;
        return;
    }
    for (std::int64_t v = 0; v < m; ++v) {
        const long w = m == 1 ? 1 : degree[static_cast<std::size_t>(v)];
        if (w == 0) continue;
        const Rational step = m == 1 ? Rational(1) : make_rational(w, 2 * (m - 1));
        degree[static_cast<std::size_t>(v)] += 1;
        degree.push_back(1);
        walk(degree, n, prob * step, acc);
        degree.pop_back();
        degree[static_cast<std::size_t>(v)] -= 1;
    }
}

Expectations brute_force(std::int64_t n) {
    std::vector<long> degree{0};
    Expectations acc{Rational(0), Rational(0), Rational(0)};
    walk(degree, n, Rational(1), acc);
    return acc;
}

Rational harmonic(std::int64_t k) {
    Rational h(0);
    for (std::int64_t i = 1; i <= k; ++i) h += make_rational(1, i);
    return h;
}

}  // namespace

TEST_CASE("recurrences agree with exhaustive enumeration") {
    const auto rows = zagreb_series_exact(8);
    REQUIRE(rows.size() == 8);
    for (std::int64_t n = 2; n <= 8; ++n) {
        const auto expected = brute_force(n);
        const auto& row = rows[static_cast<std::size_t>(n - 1)];
        CHECK(row.n == n);
        CHECK(row.mean_z == expected.z);
        CHECK(row.mean_y == expected.y);
        CHECK(row.second_z == expected.z2);
    }
}

TEST_CASE("frozen table for n = 3..8") {
    const auto rows = zagreb_series_exact(8);
    const std::vector<Rational> z{6, 11, make_rational(50, 3), make_rational(137, 6), make_rational(147, 5),
                                  make_rational(363, 10)};
    const std::vector<Rational> y{10, 24, make_rational(87, 2), make_rational(1089, 16), make_rational(15573, 160),
                                  make_rational(83849, 640)};
    const std::vector<Rational> z2{36, 122, 282, make_rational(6385, 12), make_rational(106289, 120),
                                   make_rational(1950671, 1440)};
    for (std::size_t k = 0; k < 6; ++k) {
        const auto& row = rows[k + 2];
        CHECK(row.mean_z == z[k]);
        CHECK(row.mean_y == y[k]);
        CHECK(row.second_z == z2[k]);
    }
    CHECK(rows[0].mean_z == 0);
    CHECK(rows[1].mean_z == 2);
    CHECK(rows[1].second_z == 4);
}

TEST_CASE("mean Zagreb index has the harmonic closed form") {
    for (std::int64_t n = 1; n <= 60; ++n) {
        CHECK(zagreb_mean(n) == 2 * (n - 1) * harmonic(n - 1));
    }
    const auto rows = zagreb_series_exact(60);
    for (const auto& row : rows) CHECK(row.mean_z == zagreb_mean(row.n));
}

TEST_CASE("cubic mean closed form matches the recurrence") {
    for (std::int64_t n = 2; n <= 300; n += 7) {
        CHECK(cubic_mean(n) == doctest::Approx(to_double(cubic_mean_exact(n))).epsilon(1e-11));
    }
    CHECK(cubic_mean(1) == 0.0);
}

TEST_CASE("floating series tracks the exact one") {
    const auto exact = zagreb_series_exact(2000);
    const auto approx = zagreb_series(2000);
    REQUIRE(exact.size() == approx.size());
    for (std::size_t i = 0; i < exact.size(); i += 37) {
        const ZagrebRow r = to_double(exact[i]);
        CHECK(approx[i].mean_z == doctest::Approx(r.mean_z).epsilon(1e-12));
        CHECK(approx[i].mean_y == doctest::Approx(r.mean_y).epsilon(1e-12));
        CHECK(approx[i].second_z == doctest::Approx(r.second_z).epsilon(1e-12));
    }
    CHECK(approx.back().var_z == doctest::Approx(to_double(exact.back().var_z())).epsilon(1e-8));
}

TEST_CASE("rational cap") {
    CHECK_THROWS_AS((void)zagreb_series_exact(101, 100), std::length_error);
    CHECK_NOTHROW((void)zagreb_series_exact(100, 100));
}

TEST_CASE("variance asymptotics") {
    CHECK(kZagrebVarianceCoefficient == doctest::Approx(16.0 - 2.0 * std::numbers::pi * std::numbers::pi / 3.0));
    CHECK(kMartingaleSecondMomentLimit == doctest::Approx(4.0 * kZagrebVarianceCoefficient));
    const auto a = zagreb_variance_asymptotic(10'000);
    CHECK(a.exact_ratio() == doctest::Approx(8.760327).epsilon(1e-6));
    CHECK(a.leading_variance == doctest::Approx(kZagrebVarianceCoefficient * 1e8));
    const auto b = zagreb_variance_asymptotic(10'000, 100);
    CHECK(b.exact_ratio() == doctest::Approx(a.exact_ratio()).epsilon(1e-9));
}

TEST_CASE("martingale values and transform") {
    // E[M_n] = 0 exactly, since E[Z_n] = 2(n-1)H_{n-1}
    for (std::int64_t n = 2; n <= 30; ++n) CHECK(martingale_value_exact(n, zagreb_mean(n)) == 0);
    CHECK(martingale_value(2, 2.0) == doctest::Approx(0.0));
    CHECK(martingale_value(4, 12.0) == doctest::Approx(8.0 - 22.0 / 3.0));

    const std::vector<double> z{2.0, 6.0, 10.0, 12.0};
    const auto trace = martingale_transform(z, 2);
    REQUIRE(trace.m_values.size() == 4);
    REQUIRE(trace.diffs.size() == 3);
    for (std::size_t k = 0; k < z.size(); ++k) {
        const auto n = static_cast<std::int64_t>(k + 2);
        CHECK(trace.m_values[k] == doctest::Approx(martingale_value(n, z[k])));
        CHECK(trace.alpha[k] == doctest::Approx(2.0 / static_cast<double>(n - 1)));
    }
    CHECK(trace.diffs[0] == doctest::Approx(trace.m_values[1] - trace.m_values[0]));
    CHECK_THROWS_AS((void)martingale_transform(std::vector<double>{}, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)martingale_transform(z, 1), std::invalid_argument);
}

TEST_CASE("martingale difference bound") {
    CHECK(martingale_diff_bound(3) == doctest::Approx(14.0));
    CHECK(martingale_diff_bound(4) == doctest::Approx(62.0 / 6.0));
    CHECK(martingale_diff_bound(1000) == doctest::Approx(6.0).epsilon(1e-2));
    CHECK_THROWS_AS((void)martingale_diff_bound(2), std::invalid_argument);
    const auto t = conditional_variance_targets();
    CHECK(t.m2_limit == doctest::Approx(kMartingaleSecondMomentLimit));
}
