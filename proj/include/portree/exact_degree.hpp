#pragma once

#include <cstdint>
#include <vector>

#include "portree/special_functions.hpp"

// Exact law of D(n, j), the degree of the node labelled j once the tree has n
// nodes, under the gap-oriented kernel. Three routes are provided:
//
//   ClosedForm      the alternating gamma sum,
//   Recurrence      the one-step dynamic programme (default; all weights >= 0),
//   Hypergeometric  the same sum split into two terminating 3F2 series.
//
// The closed and hypergeometric routes cancel catastrophically in double
// precision: they stay within 1e-9 relative of the recurrence only up to about
// n = 12 (absolute error stays below 1e-11 up to n = 30). Their *_exact
// variants evaluate the same formulas in rational arithmetic and are valid
// at every n.

namespace portree {

struct DegreeQuery {
    std::int64_t n = 1;
    std::int64_t j = 1;
    std::int64_t d = 1;
};

enum class PmfMethod { ClosedForm, Recurrence, Hypergeometric };

/// Smallest and largest possible degree of node j at time n.
[[nodiscard]] std::int64_t degree_support_min(std::int64_t n, std::int64_t j);
[[nodiscard]] std::int64_t degree_support_max(std::int64_t n, std::int64_t j);

/// Probability table over d = min_degree .. min_degree + probs.size() - 1.
template <class T>
struct BasicDegreeLaw {
    std::int64_t n = 1;
    std::int64_t j = 1;
    std::int64_t min_degree = 0;
    std::vector<T> probs;
    PmfMethod method = PmfMethod::Recurrence;

    [[nodiscard]] std::int64_t max_degree() const {
        return min_degree + static_cast<std::int64_t>(probs.size()) - 1;
    }
    /// 0 outside the support.
    [[nodiscard]] T at(std::int64_t d) const {
        if (d < min_degree || d > max_degree()) return T(0);
        return probs[static_cast<std::size_t>(d - min_degree)];
    }
    [[nodiscard]] T total() const {
        T s(0);
        for (const T& p : probs) s += p;
        return s;
    }
    [[nodiscard]] T moment(int order) const {
        T s(0);
        for (std::size_t i = 0; i < probs.size(); ++i) {
            T v(1);
            for (int k = 0; k < order; ++k) v *= T(min_degree + static_cast<std::int64_t>(i));
            s += v * probs[i];
        }
        return s;
    }
    [[nodiscard]] T mean() const { return moment(1); }
    [[nodiscard]] T variance() const {
        const T m = mean();
        return moment(2) - m * m;
    }
};

using DegreeLaw = BasicDegreeLaw<double>;
using ExactDegreeLaw = BasicDegreeLaw<Rational>;

/// Alternating-sum form, 2 <= j <= n. Out-of-support d gives 0; j = 1 throws
/// std::invalid_argument (the root has its own law, see root_pmf).
[[nodiscard]] double degree_pmf_closed(const DegreeQuery& q);
[[nodiscard]] Rational degree_pmf_closed_exact(const DegreeQuery& q);

/// Full law by dynamic programming from P(D(j, j) = 1) = 1 (or P(D(1, 1) = 0) = 1
/// for the root). Valid for 1 <= j <= n.
[[nodiscard]] DegreeLaw degree_pmf_recurrence(std::int64_t n, std::int64_t j);
[[nodiscard]] ExactDegreeLaw degree_pmf_recurrence_exact(std::int64_t n, std::int64_t j);

/// Closed-form law of the root degree, n >= 2; 0 outside 1..n-1.
[[nodiscard]] double root_pmf(std::int64_t n, std::int64_t d);
[[nodiscard]] Rational root_pmf_exact(std::int64_t n, std::int64_t d);

/// The alternating sum with j = 1 and d replaced by d + 1, evaluated exactly.
/// Agrees with root_pmf_exact; kept as an independent check on it.
[[nodiscard]] Rational root_pmf_substituted(std::int64_t n, std::int64_t d);

/// Two-3F2 form, 2 <= j <= n.
[[nodiscard]] double degree_pmf_hypergeom(const DegreeQuery& q);
[[nodiscard]] Rational degree_pmf_hypergeom_exact(const DegreeQuery& q);

/// Law assembled point by point with the chosen route. The closed and
/// hypergeometric routes use root_pmf for j = 1.
[[nodiscard]] DegreeLaw degree_law(std::int64_t n, std::int64_t j, PmfMethod method);
[[nodiscard]] ExactDegreeLaw degree_law_exact(std::int64_t n, std::int64_t j, PmfMethod method);

/// Γ(n)Γ(j - 1/2) / (Γ(n - 1/2)Γ(j)), through log-gamma differences.
[[nodiscard]] double degree_mean_factor(std::int64_t n, std::int64_t j);

[[nodiscard]] double degree_mean(std::int64_t n, std::int64_t j);
[[nodiscard]] double degree_variance(std::int64_t n, std::int64_t j);

enum class MomentRegime { Exact, FixedJ, GrowingJ, LinearTheta };

struct DegreeMoments {
    std::int64_t n = 0;
    std::int64_t j = 0;
    double mean = 0.0;
    double variance = 0.0;
    MomentRegime regime = MomentRegime::Exact;
};

/**
 * Large-n approximations of the mean and variance.
 *
 * FixedJ:      mean ~ Γ(j-1/2)/Γ(j) √n,  var ~ (4/(2j-1) - Γ²(j-1/2)/Γ²(j)) n
 * GrowingJ:    mean ~ √(n/j),             var ~ n/j
 * LinearTheta: θ = j/n in (0, 1), mean ~ 1/√θ, var ~ 1/θ - 1/√θ
 * Exact:       degree_mean / degree_variance
 *
 * LinearTheta throws std::domain_error when j/n is outside (0, 1).
 */
[[nodiscard]] DegreeMoments degree_moments_asymptotic(std::int64_t n, std::int64_t j, MomentRegime regime);

}  // namespace portree
