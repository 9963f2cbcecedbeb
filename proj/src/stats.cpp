#include "portree/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace portree {

double Moments::standard_error() const {
    return count == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(count));
}

Moments describe(std::span<const double> sample) {
    if (sample.empty()) throw std::invalid_argument("describe: empty sample");
    Moments m;
    m.count = sample.size();
    const auto k = static_cast<double>(m.count);
    long double sum = 0.0L;
    m.min = sample.front();
    m.max = sample.front();
    for (const double x : sample) {
        sum += x;
        m.min = std::min(m.min, x);
        m.max = std::max(m.max, x);
    }
    m.mean = static_cast<double>(sum / m.count);
    long double c2 = 0.0L;
    long double c3 = 0.0L;
    long double c4 = 0.0L;
    for (const double x : sample) {
        const long double d = static_cast<long double>(x) - m.mean;
        const long double d2 = d * d;
        c2 += d2;
        c3 += d2 * d;
        c4 += d2 * d2;
    }
    m.variance = m.count > 1 ? static_cast<double>(c2 / (k - 1.0)) : 0.0;
    const double m2 = static_cast<double>(c2 / k);
    if (m2 > 0.0) {
        m.skewness = static_cast<double>(c3 / k) / std::pow(m2, 1.5);
        m.excess_kurtosis = static_cast<double>(c4 / k) / (m2 * m2) - 3.0;
    }
    return m;
}

JarqueBera jarque_bera(std::span<const double> sample) {
    if (sample.size() < 8) throw std::invalid_argument("jarque_bera: needs at least 8 observations");
    const Moments m = describe(sample);
    if (!(m.variance > 0.0)) throw std::invalid_argument("jarque_bera: sample has zero variance");
    const auto k = static_cast<double>(m.count);
    JarqueBera jb;
    jb.statistic = k / 6.0 * (m.skewness * m.skewness + m.excess_kurtosis * m.excess_kurtosis / 4.0);
    jb.pvalue = std::exp(-jb.statistic / 2.0);
    return jb;
}

double quantile(std::span<const double> sorted_sample, double q) {
    if (sorted_sample.empty()) throw std::invalid_argument("quantile: empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q must lie in [0, 1]");
    const double h = q * static_cast<double>(sorted_sample.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted_sample.size() - 1);
    return sorted_sample[lo] + (h - static_cast<double>(lo)) * (sorted_sample[hi] - sorted_sample[lo]);
}

Kde kde(std::span<const double> sample, std::size_t grid_size) {
    if (sample.size() < 2) throw std::invalid_argument("kde: needs at least 2 observations");
    if (grid_size < 2) throw std::invalid_argument("kde: grid needs at least 2 points");
    const Moments m = describe(sample);
    const double sd = std::sqrt(m.variance);
    if (!(sd > 0.0)) throw std::invalid_argument("kde: sample has zero variance");

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    const double k = static_cast<double>(sample.size());

    Kde out;
    out.bandwidth = 0.9 * spread * std::pow(k, -0.2);
    const double h = out.bandwidth;
    const double lo = std::min(m.mean - 4.0 * sd, m.min - 6.0 * h);
    const double hi = std::max(m.mean + 4.0 * sd, m.max + 6.0 * h);
    const double step = (hi - lo) / static_cast<double>(grid_size - 1);
    const double norm = 1.0 / (k * h * std::sqrt(2.0 * std::numbers::pi));

    out.grid.resize(grid_size);
    out.density.assign(grid_size, 0.0);
    for (std::size_t g = 0; g < grid_size; ++g) out.grid[g] = lo + step * static_cast<double>(g);
    for (std::size_t g = 0; g < grid_size; ++g) {
        const double x = out.grid[g];
        // only points within 10h contribute beyond double precision
        const auto first = std::lower_bound(sorted.begin(), sorted.end(), x - 10.0 * h);
        const auto last = std::upper_bound(first, sorted.end(), x + 10.0 * h);
        double acc = 0.0;
        for (auto it = first; it != last; ++it) {
            const double u = (x - *it) / h;
            acc += std::exp(-0.5 * u * u);
        }
        out.density[g] = acc * norm;
    }
    return out;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.2) return 1.0;  // the alternating series is 1 to double precision here
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const auto k = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        // step over ties so the empirical cdf is evaluated on both sides of each jump
        std::size_t next = i;
        while (next < sorted.size() && sorted[next] == sorted[i]) ++next;
        const double f = cdf(sorted[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / k));
        d = std::max(d, std::abs(static_cast<double>(next) / k - f));
        i = next;
    }
    const double sk = std::sqrt(k);
    return {d, kolmogorov_survival((sk + 0.12 + 0.11 / sk) * d)};
}

KsResult ks_exponential(std::span<const double> sample, double mean) {
    if (!(mean > 0.0)) throw std::invalid_argument("ks_exponential: mean must be positive");
    return ks_one_sample(sample, [mean](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x / mean); });
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const auto nx = static_cast<double>(x.size());
    const auto ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    const double ne = std::sqrt(nx * ny / (nx + ny));
    return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

ChiSquare chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                         int fitted_parameters) {
    if (observed.size() != probabilities.size() || observed.size() < 2) {
        throw std::invalid_argument("chi_square_gof: need matching cells, at least two");
    }
    double total = 0.0;
    for (const auto o : observed) total += static_cast<double>(o);
    if (!(total > 0.0)) throw std::invalid_argument("chi_square_gof: no observations");
    ChiSquare c;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = total * probabilities[i];
        if (!(expected > 0.0)) throw std::invalid_argument("chi_square_gof: cell with zero expectation");
        const double diff = static_cast<double>(observed[i]) - expected;
        c.statistic += diff * diff / expected;
    }
    c.dof = static_cast<double>(observed.size()) - 1.0 - fitted_parameters;
    if (!(c.dof > 0.0)) throw std::invalid_argument("chi_square_gof: no degrees of freedom left");
    c.pvalue = boost::math::gamma_q(c.dof / 2.0, c.statistic / 2.0);
    return c;
}

}  // namespace portree
