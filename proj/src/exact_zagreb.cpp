#include "portree/exact_zagreb.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace portree {

namespace {

// One joint forward pass. The cubic recurrence is
//   E[Y_n] = (2n-1)/(2(n-2)) E[Y_{n-1}] + 3/(2(n-2)) E[Z_{n-1}] + 2
//          = (2n-1)/(2(n-2)) E[Y_{n-1}] + 3 H_{n-2} + 2.
void forward_exact(std::int64_t n_max, std::int64_t rational_cap,
                   const std::function<void(const ExactZagrebRow&)>& visit) {
    if (n_max < 1) throw std::invalid_argument("zagreb series needs n_max >= 1");
    if (n_max > rational_cap) {
        throw std::length_error("exact zagreb series capped at n = " + std::to_string(rational_cap));
    }
    ExactZagrebRow row{1, Rational(0), Rational(0), Rational(0)};
    visit(row);
    if (n_max == 1) return;
    row = {2, Rational(2), Rational(2), Rational(4)};
    visit(row);
    Rational harmonic{1};  // H_{n-2} for the step to n = 3
    for (std::int64_t n = 3; n <= n_max; ++n) {
        const Rational inv = make_rational(1, n - 2);
        Rational second = Rational(n) * inv * row.second_z + 2 * inv * row.mean_y +
                          Rational(4 * (n - 1)) * inv * row.mean_z + 4;
        Rational cubic = make_rational(2 * n - 1, 2 * (n - 2)) * row.mean_y + 3 * harmonic + 2;
        Rational mean = Rational(n - 1) * inv * row.mean_z + 2;
        row.n = n;
        row.second_z = std::move(second);
        row.mean_y = std::move(cubic);
        row.mean_z = std::move(mean);
        visit(row);
        harmonic += make_rational(1, n - 1);
    }
}

ExactZagrebRow last_exact_row(std::int64_t n, std::int64_t rational_cap) {
    ExactZagrebRow last;
    forward_exact(n, rational_cap, [&](const ExactZagrebRow& r) {
        if (r.n == n) last = r;
    });
    return last;
}

}  // namespace

std::vector<ExactZagrebRow> zagreb_series_exact(std::int64_t n_max, std::int64_t rational_cap) {
    std::vector<ExactZagrebRow> rows;
    forward_exact(n_max, rational_cap, [&](const ExactZagrebRow& r) { rows.push_back(r); });
    return rows;
}

std::vector<ZagrebRow> zagreb_series(std::int64_t n_max) {
    if (n_max < 1) throw std::invalid_argument("zagreb series needs n_max >= 1");
    std::vector<ZagrebRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    rows.push_back({1, 0.0, 0.0, 0.0, 0.0});
    if (n_max == 1) return rows;
    ZagrebRow row{2, 2.0, 2.0, 4.0, 0.0};
    rows.push_back(row);
    double harmonic = 1.0;
    double carry = 0.0;
    for (std::int64_t n = 3; n <= n_max; ++n) {
        const double nn = static_cast<double>(n);
        const double second = nn / (nn - 2.0) * row.second_z + 2.0 / (nn - 2.0) * row.mean_y +
                              4.0 * (nn - 1.0) / (nn - 2.0) * row.mean_z + 4.0;
        const double cubic = (2.0 * nn - 1.0) / (2.0 * (nn - 2.0)) * row.mean_y + 3.0 * harmonic + 2.0;
        const double mean = (nn - 1.0) / (nn - 2.0) * row.mean_z + 2.0;
        row = {n, mean, cubic, second, second - mean * mean};
        rows.push_back(row);
        const double y = 1.0 / (nn - 1.0) - carry;
        const double t = harmonic + y;
        carry = (t - harmonic) - y;
        harmonic = t;
    }
    return rows;
}

ZagrebRow to_double(const ExactZagrebRow& row) {
    return {row.n, row.mean_z.get_d(), row.mean_y.get_d(), row.second_z.get_d(), Rational(row.var_z()).get_d()};
}

Rational zagreb_mean(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("zagreb_mean requires n >= 1");
    return Rational(2 * (n - 1)) * digamma_plus_gamma(n);
}

double cubic_mean(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("cubic_mean requires n >= 1");
    if (n == 1) return 0.0;
    const double nn = static_cast<double>(n);
    const double lead = 32.0 * std::numbers::inv_sqrtpi * std::exp(log_gamma(nn + 0.5) - log_gamma(nn - 1.0));
    return lead - 6.0 * (nn - 1.0) * (digamma_plus_gamma_real(n) + 8.0 / 3.0);
}

Rational cubic_mean_exact(std::int64_t n) { return last_exact_row(n, kDefaultRationalCap).mean_y; }

Rational zagreb_second_moment(std::int64_t n) { return last_exact_row(n, kDefaultRationalCap).second_z; }

double ZagrebVarianceAsymptotics::exact_ratio() const {
    const double nn = static_cast<double>(n);
    return exact_variance / (nn * nn);
}

ZagrebVarianceAsymptotics zagreb_variance_asymptotic(std::int64_t n, std::int64_t rational_cap) {
    if (n < 2) throw std::invalid_argument("zagreb_variance_asymptotic requires n >= 2");
    ZagrebVarianceAsymptotics a;
    a.n = n;
    const double nn = static_cast<double>(n);
    const double log_n = std::log(nn);
    constexpr double euler = std::numbers::egamma;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    a.leading_variance = kZagrebVarianceCoefficient * nn * nn;
    a.leading_second_moment = 4.0 * (nn * log_n) * (nn * log_n) + 8.0 * euler * nn * nn * log_n +
                              (16.0 + 4.0 * euler * euler - 2.0 * pi2 / 3.0) * nn * nn;
    if (n <= rational_cap) {
        a.exact_variance = Rational(last_exact_row(n, rational_cap).var_z()).get_d();
    } else {
        a.exact_variance = zagreb_series(n).back().var_z;
    }
    return a;
}

double martingale_value(std::int64_t n, double z) {
    if (n < 2) throw std::invalid_argument("the martingale is defined for n >= 2");
    return 2.0 * z / static_cast<double>(n - 1) - 4.0 * digamma_plus_gamma_real(n);
}

Rational martingale_value_exact(std::int64_t n, const Rational& z) {
    if (n < 2) throw std::invalid_argument("the martingale is defined for n >= 2");
    Rational m = make_rational(2, n - 1) * z - 4 * digamma_plus_gamma(n);
    m.canonicalize();
    return m;
}

MartingaleTrace martingale_transform(std::span<const double> z_values, std::int64_t first_n) {
    if (z_values.empty()) throw std::invalid_argument("martingale_transform: empty trajectory");
    if (first_n < 2) throw std::invalid_argument("martingale_transform: trajectory must start at n >= 2");
    MartingaleTrace trace;
    trace.first_n = first_n;
    const std::size_t len = z_values.size();
    trace.alpha.reserve(len);
    trace.beta.reserve(len);
    trace.m_values.reserve(len);
    trace.diffs.reserve(len - 1);
    double harmonic = digamma_plus_gamma_real(first_n);
    for (std::size_t k = 0; k < len; ++k) {
        const auto n = first_n + static_cast<std::int64_t>(k);
        if (k > 0) harmonic += 1.0 / static_cast<double>(n - 1);
        const double alpha = 2.0 / static_cast<double>(n - 1);
        const double beta = -4.0 * harmonic;
        trace.alpha.push_back(alpha);
        trace.beta.push_back(beta);
        trace.m_values.push_back(alpha * z_values[k] + beta);
        if (k > 0) trace.diffs.push_back(trace.m_values[k] - trace.m_values[k - 1]);
    }
    return trace;
}

double martingale_diff_bound(std::int64_t j) {
    if (j < 3) throw std::invalid_argument("martingale_diff_bound requires j >= 3");
    const double x = static_cast<double>(j);
    return (6.0 * x * x - 8.0 * x - 2.0) / ((x - 1.0) * (x - 2.0));
}

ConditionalVarianceTargets conditional_variance_targets() {
    return {kMartingaleSecondMomentLimit, kMartingaleSecondMomentLimit};
}

}  // namespace portree
