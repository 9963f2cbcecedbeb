#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace portree {

/// Sample summary. variance is the unbiased (k - 1) estimator; skewness and
/// excess kurtosis use population central moments, as in the Jarque–Bera statistic.
struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double min = 0.0;
    double max = 0.0;

    [[nodiscard]] double standard_error() const;
};

/// Throws std::invalid_argument on an empty sample. Skewness and kurtosis are
/// 0 for a constant sample.
[[nodiscard]] Moments describe(std::span<const double> sample);

struct JarqueBera {
    double statistic = 0.0;
    double pvalue = 1.0;  ///< chi-square(2) upper tail, exp(-JB/2)
};

/// JB = (k/6)(S² + K²/4). Requires k >= 8; a zero-variance sample is rejected
/// with std::invalid_argument.
[[nodiscard]] JarqueBera jarque_bera(std::span<const double> sample);

/// Linear-interpolation quantile (type 7), q in [0, 1].
[[nodiscard]] double quantile(std::span<const double> sorted_sample, double q);

struct Kde {
    double bandwidth = 0.0;
    std::vector<double> grid;
    std::vector<double> density;
};

/**
 * @brief Gaussian kernel density estimate with Silverman's bandwidth
 * 0.9·min(sd, IQR/1.34)·k^{-1/5} (sd alone when the IQR is 0).
 *
 * The equispaced grid spans mean ± 4 sd, widened where needed to
 * [min - 6h, max + 6h] so the estimate integrates to 1 on the grid.
 * Requires k >= 2, grid_size >= 2 and a non-constant sample.
 */
[[nodiscard]] Kde kde(std::span<const double> sample, std::size_t grid_size = 512);

/// Trapezoid rule over (x, y) pairs.
[[nodiscard]] double trapezoid(std::span<const double> x, std::span<const double> y);

/// P(K > lambda) for the Kolmogorov distribution.
[[nodiscard]] double kolmogorov_survival(double lambda);

struct KsResult {
    double distance = 0.0;
    double pvalue = 1.0;
};

/// One-sample KS distance sup|F_k - F| against a continuous cdf.
[[nodiscard]] KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);
/// Against the exponential law with the given mean.
[[nodiscard]] KsResult ks_exponential(std::span<const double> sample, double mean = 1.0);
/// Two-sample KS distance and asymptotic p-value (with Stephens' small-sample correction).
[[nodiscard]] KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct ChiSquare {
    double statistic = 0.0;
    double dof = 0.0;
    double pvalue = 1.0;
};

/// Pearson goodness of fit of binned counts against cell probabilities
/// (which must sum to 1). dof = cells - 1 - fitted_parameters.
[[nodiscard]] ChiSquare chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                                       int fitted_parameters = 0);

}  // namespace portree
