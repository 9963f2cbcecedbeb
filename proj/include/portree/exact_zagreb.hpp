#pragma once

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "portree/special_functions.hpp"

// Moments of the Zagreb index Z_n (sum of squared degrees) and the cubic
// index Y_n (sum of cubed degrees) under the degree-proportional kernel,
// together with the martingale M_n = 2 Z_n/(n-1) - 4(Ψ(n) + γ).

namespace portree {

/// Leading coefficient of Var[Z_n]/n².
inline constexpr double kZagrebVarianceCoefficient = 16.0 - 2.0 * std::numbers::pi * std::numbers::pi / 3.0;
/// Limit of E[M_n²]; also the slope of the conditional variance V_n in n.
inline constexpr double kMartingaleSecondMomentLimit = 4.0 * kZagrebVarianceCoefficient;
/// Z_n / (n log n) -> 2 in L1.
inline constexpr double kZagrebWeakLawLimit = 2.0;
/// Y_n / n^{3/2} -> 32/√π in L1.
inline constexpr double kCubicWeakLawLimit = 32.0 * std::numbers::inv_sqrtpi;

inline constexpr std::int64_t kDefaultRationalCap = 10'000;

struct ExactZagrebRow {
    std::int64_t n = 1;
    Rational mean_z;
    Rational mean_y;
    Rational second_z;
    [[nodiscard]] Rational var_z() const { return second_z - mean_z * mean_z; }
};

struct ZagrebRow {
    std::int64_t n = 1;
    double mean_z = 0.0;
    double mean_y = 0.0;
    double second_z = 0.0;
    double var_z = 0.0;
};

/**
 * @brief Rows n = 1 .. n_max of E[Z_n], E[Y_n], E[Z_n²] from one joint forward
 * pass of the three recurrences, in exact rational arithmetic.
 *
 * Throws std::length_error when n_max exceeds @p rational_cap.
 */
[[nodiscard]] std::vector<ExactZagrebRow> zagreb_series_exact(std::int64_t n_max,
                                                              std::int64_t rational_cap = kDefaultRationalCap);

/// The same forward pass in floating point (compensated harmonic sums).
[[nodiscard]] std::vector<ZagrebRow> zagreb_series(std::int64_t n_max);

[[nodiscard]] ZagrebRow to_double(const ExactZagrebRow& row);

/// 2(n-1) H_{n-1}, n >= 1.
[[nodiscard]] Rational zagreb_mean(std::int64_t n);

/// Closed form 32Γ(n+1/2)/(√π Γ(n-1)) - 6(n-1)(Ψ(n) + γ + 8/3); 0 at n = 1.
[[nodiscard]] double cubic_mean(std::int64_t n);
/// Exact value from the recurrence.
[[nodiscard]] Rational cubic_mean_exact(std::int64_t n);

/// E[Z_n²] from the recurrence, n >= 1.
[[nodiscard]] Rational zagreb_second_moment(std::int64_t n);

struct ZagrebVarianceAsymptotics {
    std::int64_t n = 0;
    double coefficient = kZagrebVarianceCoefficient;
    double leading_variance = 0.0;       ///< (16 - 2π²/3) n²
    double leading_second_moment = 0.0;  ///< 4(n log n)² + 8γ n² log n + (16 + 4γ² - 2π²/3) n²
    double exact_variance = 0.0;         ///< E[Z_n²] - E[Z_n]²
    [[nodiscard]] double exact_ratio() const;  ///< exact_variance / n²
};

/// Uses exact rationals up to @p rational_cap, the floating pass beyond it.
[[nodiscard]] ZagrebVarianceAsymptotics zagreb_variance_asymptotic(std::int64_t n,
                                                                   std::int64_t rational_cap = kDefaultRationalCap);

/// M_n for a single (n, Z_n) pair, n >= 2.
[[nodiscard]] double martingale_value(std::int64_t n, double z);
[[nodiscard]] Rational martingale_value_exact(std::int64_t n, const Rational& z);

struct MartingaleTrace {
    std::int64_t first_n = 2;
    std::vector<double> alpha;     ///< 2/(n-1)
    std::vector<double> beta;      ///< -4(Ψ(n) + γ)
    std::vector<double> m_values;  ///< alpha Z + beta
    std::vector<double> diffs;     ///< M_n - M_{n-1} for n = first_n + 1 ..
};

/// z_values[k] is Z at time first_n + k along one growing tree.
/// Throws std::invalid_argument for an empty trajectory or first_n < 2.
[[nodiscard]] MartingaleTrace martingale_transform(std::span<const double> z_values, std::int64_t first_n = 2);

/// (6j² - 8j - 2)/((j - 1)(j - 2)), j >= 3.
[[nodiscard]] double martingale_diff_bound(std::int64_t j);

struct ConditionalVarianceTargets {
    double m2_limit;
    double vn_slope;
};
[[nodiscard]] ConditionalVarianceTargets conditional_variance_targets();

}  // namespace portree
