#include "portree/exact_degree.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace portree {

namespace {

void require_node(std::int64_t n, std::int64_t j) {
    if (n < 1 || j < 1 || j > n) {
        throw std::invalid_argument("degree query requires 1 <= j <= n (got n=" + std::to_string(n) +
                                    ", j=" + std::to_string(j) + ")");
    }
}

void require_non_root(const DegreeQuery& q) {
    require_node(q.n, q.j);
    if (q.j == 1) throw std::invalid_argument("the alternating-sum form needs j >= 2; use root_pmf for the root");
}

bool in_support(std::int64_t n, std::int64_t j, std::int64_t d) {
    return d >= degree_support_min(n, j) && d <= degree_support_max(n, j);
}

BigInt binomial(std::int64_t top, std::int64_t k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(k));
    return r;
}

BigInt factorial(std::int64_t k) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

template <class T>
BasicDegreeLaw<T> run_recurrence(std::int64_t n, std::int64_t j) {
    require_node(n, j);
    // probs indexed by degree, starting at 0 for the root and 1 otherwise
    const bool root = j == 1;
    const std::int64_t offset = root ? 0 : 1;
    std::vector<T> probs{T(1)};
    for (std::int64_t m = j + 1; m <= n; ++m) {
        const std::int64_t den = 2 * m - 3;
        std::vector<T> next(probs.size() + 1, T(0));
        for (std::size_t idx = 0; idx < next.size(); ++idx) {
            const std::int64_t d = static_cast<std::int64_t>(idx) + offset;
            // node j carries d - 1 gaps at degree d - 1 (d gaps for the root)
            const std::int64_t grow_weight = root ? d : d - 1;
            const std::int64_t stay_weight = root ? den - d - 1 : den - d;
            T value(0);
            if (idx >= 1 && grow_weight > 0) value += T(grow_weight) / T(den) * probs[idx - 1];
            if (idx < probs.size() && stay_weight > 0) value += T(stay_weight) / T(den) * probs[idx];
            next[idx] = value;
        }
        probs = std::move(next);
    }
    BasicDegreeLaw<T> law;
    law.n = n;
    law.j = j;
    law.method = PmfMethod::Recurrence;
    law.min_degree = offset;
    if (root && n >= 2) {
        probs.erase(probs.begin());  // the root always has a child once n >= 2
        law.min_degree = 1;
    }
    law.probs = std::move(probs);
    return law;
}

double log_double_factorial_odd(std::int64_t m) {
    // (2k - 1)!! = (2k)! / (2^k k!) with 2k - 1 = m
    const std::int64_t k = (m + 1) / 2;
    return log_gamma(static_cast<double>(2 * k + 1)) - static_cast<double>(k) * std::numbers::ln2 -
           log_gamma(static_cast<double>(k + 1));
}

}  // namespace

std::int64_t degree_support_min(std::int64_t n, std::int64_t j) {
    require_node(n, j);
    return (j == 1 && n == 1) ? 0 : 1;
}

std::int64_t degree_support_max(std::int64_t n, std::int64_t j) {
    require_node(n, j);
    if (j == 1) return n == 1 ? 0 : n - 1;
    return n - j + 1;
}

double degree_pmf_closed(const DegreeQuery& q) {
    require_non_root(q);
    const auto [n, j, d] = q;
    if (!in_support(n, j, d)) return 0.0;
    const double base = log_gamma(static_cast<double>(d)) + log_gamma(static_cast<double>(j) - 0.5) -
                        log_gamma(static_cast<double>(n) - 0.5);
    double sum = 0.0;
    for (std::int64_t i = 0; i < d; ++i) {
        const double half_i = static_cast<double>(i) / 2.0;
        const SignedLog rg = log_reciprocal_gamma(static_cast<double>(j - 1) - half_i);
        if (rg.sign == 0) continue;
        const double log_term = base + log_gamma(static_cast<double>(n - 1) - half_i) -
                                log_gamma(static_cast<double>(i + 1)) - log_gamma(static_cast<double>(d - i)) +
                                rg.log_abs;
        const int sign = (i % 2 == 0 ? 1 : -1) * rg.sign;
        sum += sign * std::exp(log_term);
    }
    return std::clamp(sum, 0.0, 1.0);
}

Rational degree_pmf_closed_exact(const DegreeQuery& q) {
    require_non_root(q);
    const auto [n, j, d] = q;
    if (!in_support(n, j, d)) return Rational(0);
    // Γ(d)/(Γ(i+1)Γ(d-i)) = C(d-1, i) and Γ(n-1-i/2)/Γ(j-1-i/2) = ⟨j-1-i/2⟩_{n-j},
    // which is 0 exactly when j-1-i/2 is a pole of Γ.
    Rational sum{0};
    for (std::int64_t i = 0; i < d; ++i) {
        const Rational ratio = gamma_ratio(HalfInt::halves(2 * (n - 1) - i), HalfInt::halves(2 * (j - 1) - i));
        Rational term = Rational(binomial(d - 1, i)) * ratio;
        if (i % 2 == 1) term = -term;
        sum += term;
    }
    return sum * gamma_ratio(HalfInt::halves(2 * j - 1), HalfInt::halves(2 * n - 1));
}

DegreeLaw degree_pmf_recurrence(std::int64_t n, std::int64_t j) { return run_recurrence<double>(n, j); }

ExactDegreeLaw degree_pmf_recurrence_exact(std::int64_t n, std::int64_t j) {
    auto law = run_recurrence<Rational>(n, j);
    for (auto& p : law.probs) p.canonicalize();
    return law;
}

double root_pmf(std::int64_t n, std::int64_t d) {
    if (n < 2) throw std::invalid_argument("root_pmf requires n >= 2");
    if (d < 1 || d > n - 1) return 0.0;
    const double log_p = std::log(static_cast<double>(d)) + log_gamma(static_cast<double>(2 * n - d - 2)) -
                         static_cast<double>(n - d - 1) * std::numbers::ln2 -
                         log_gamma(static_cast<double>(n - d)) - log_double_factorial_odd(2 * n - 3);
    return std::exp(log_p);
}

Rational root_pmf_exact(std::int64_t n, std::int64_t d) {
    if (n < 2) throw std::invalid_argument("root_pmf requires n >= 2");
    if (d < 1 || d > n - 1) return Rational(0);
    BigInt den = factorial(n - d - 1) * double_factorial_big(static_cast<std::uint64_t>(2 * n - 3));
    den <<= static_cast<mp_bitcnt_t>(n - d - 1);
    Rational p(BigInt(static_cast<long>(d)) * factorial(2 * n - d - 3), den);
    p.canonicalize();
    return p;
}

Rational root_pmf_substituted(std::int64_t n, std::int64_t d) {
    if (n < 2) throw std::invalid_argument("root_pmf requires n >= 2");
    if (d < 1 || d > n - 1) return Rational(0);
    // Γ(d+1)Γ(1/2)/Γ(n-1/2) Σ_{i=0}^{d} (-1)^i Γ(n-1-i/2) / (Γ(i+1)Γ(d+1-i)Γ(-i/2))
    Rational sum{0};
    for (std::int64_t i = 0; i <= d; ++i) {
        const Rational ratio = gamma_ratio(HalfInt::halves(2 * (n - 1) - i), HalfInt::halves(-i));
        Rational term = Rational(binomial(d, i)) * ratio;
        if (i % 2 == 1) term = -term;
        sum += term;
    }
    return sum * gamma_ratio(HalfInt::halves(1), HalfInt::halves(2 * n - 1));
}

namespace {

HypergeomSpec first_series(std::int64_t n, std::int64_t j, std::int64_t d) {
    return {{HalfInt::halves(2 - d), HalfInt::halves(1 - d), HalfInt::whole(2 - j)},
            {HalfInt::halves(1), HalfInt::whole(2 - n)},
            Rational(1)};
}

HypergeomSpec second_series(std::int64_t n, std::int64_t j, std::int64_t d) {
    return {{HalfInt::halves(3 - d), HalfInt::halves(2 - d), HalfInt::halves(5 - 2 * j)},
            {HalfInt::halves(3), HalfInt::halves(5 - 2 * n)},
            Rational(1)};
}

}  // namespace

double degree_pmf_hypergeom(const DegreeQuery& q) {
    require_non_root(q);
    const auto [n, j, d] = q;
    if (!in_support(n, j, d)) return 0.0;
    const auto lg = [](double x) { return log_gamma(x); };
    const double nn = static_cast<double>(n);
    const double jj = static_cast<double>(j);
    const double dd = static_cast<double>(d);
    const double first_coef = std::exp(lg(jj - 0.5) + lg(nn - 1.0) - lg(nn - 0.5) - lg(jj - 1.0));
    double value = first_coef * hypergeometric_pFq(first_series(n, j, d));
    if (d >= 2) {  // the second term carries 1/Γ(d-1), which vanishes at d = 1
        const double second_coef = std::exp(lg(dd) - lg(dd - 1.0) + lg(jj - 0.5) - lg(jj - 1.5) +
                                            lg(nn - 1.5) - lg(nn - 0.5));
        value -= second_coef * hypergeometric_pFq(second_series(n, j, d));
    }
    return std::clamp(value, 0.0, 1.0);
}

Rational degree_pmf_hypergeom_exact(const DegreeQuery& q) {
    require_non_root(q);
    const auto [n, j, d] = q;
    if (!in_support(n, j, d)) return Rational(0);
    const Rational first_coef = gamma_ratio(HalfInt::halves(2 * j - 1), HalfInt::halves(2 * n - 1)) *
                                gamma_ratio(HalfInt::whole(n - 1), HalfInt::whole(j - 1));
    Rational value = first_coef * hypergeometric_pFq_exact(first_series(n, j, d));
    if (d >= 2) {
        const Rational second_coef = Rational(d - 1) *
                                     gamma_ratio(HalfInt::halves(2 * j - 1), HalfInt::halves(2 * j - 3)) *
                                     gamma_ratio(HalfInt::halves(2 * n - 3), HalfInt::halves(2 * n - 1));
        value -= second_coef * hypergeometric_pFq_exact(second_series(n, j, d));
    }
    return value;
}

DegreeLaw degree_law(std::int64_t n, std::int64_t j, PmfMethod method) {
    if (method == PmfMethod::Recurrence) return degree_pmf_recurrence(n, j);
    DegreeLaw law;
    law.n = n;
    law.j = j;
    law.method = method;
    law.min_degree = degree_support_min(n, j);
    for (std::int64_t d = law.min_degree; d <= degree_support_max(n, j); ++d) {
        if (j == 1) {
            law.probs.push_back(n == 1 ? 1.0 : root_pmf(n, d));
        } else if (method == PmfMethod::ClosedForm) {
            law.probs.push_back(degree_pmf_closed({n, j, d}));
        } else {
            law.probs.push_back(degree_pmf_hypergeom({n, j, d}));
        }
    }
    return law;
}

ExactDegreeLaw degree_law_exact(std::int64_t n, std::int64_t j, PmfMethod method) {
    if (method == PmfMethod::Recurrence) return degree_pmf_recurrence_exact(n, j);
    ExactDegreeLaw law;
    law.n = n;
    law.j = j;
    law.method = method;
    law.min_degree = degree_support_min(n, j);
    for (std::int64_t d = law.min_degree; d <= degree_support_max(n, j); ++d) {
        if (j == 1) {
            law.probs.push_back(n == 1 ? Rational(1) : root_pmf_exact(n, d));
        } else if (method == PmfMethod::ClosedForm) {
            law.probs.push_back(degree_pmf_closed_exact({n, j, d}));
        } else {
            law.probs.push_back(degree_pmf_hypergeom_exact({n, j, d}));
        }
    }
    return law;
}

double degree_mean_factor(std::int64_t n, std::int64_t j) {
    require_node(n, j);
    if (n < 2) throw std::invalid_argument("degree moments require n >= 2");
    const double nn = static_cast<double>(n);
    const double jj = static_cast<double>(j);
    return std::exp(log_gamma(nn) + log_gamma(jj - 0.5) - log_gamma(nn - 0.5) - log_gamma(jj));
}

double degree_mean(std::int64_t n, std::int64_t j) {
    return degree_mean_factor(n, j) - (j == 1 ? 1.0 : 0.0);
}

double degree_variance(std::int64_t n, std::int64_t j) {
    const double a = degree_mean_factor(n, j);
    const double v = -a * a - a + static_cast<double>(4 * n - 2) / static_cast<double>(2 * j - 1);
    return std::max(v, 0.0);
}

DegreeMoments degree_moments_asymptotic(std::int64_t n, std::int64_t j, MomentRegime regime) {
    require_node(n, j);
    DegreeMoments m{n, j, 0.0, 0.0, regime};
    const double nn = static_cast<double>(n);
    const double jj = static_cast<double>(j);
    switch (regime) {
        case MomentRegime::Exact:
            m.mean = degree_mean(n, j);
            m.variance = degree_variance(n, j);
            break;
        case MomentRegime::FixedJ: {
            const double g = std::exp(log_gamma(jj - 0.5) - log_gamma(jj));
            m.mean = g * std::sqrt(nn);
            m.variance = (4.0 / (2.0 * jj - 1.0) - g * g) * nn;
            break;
        }
        case MomentRegime::GrowingJ:
            m.mean = std::sqrt(nn / jj);
            m.variance = nn / jj;
            break;
        case MomentRegime::LinearTheta: {
            const double theta = jj / nn;
            if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("linear phase needs 0 < j/n < 1");
            m.mean = 1.0 / std::sqrt(theta);
            m.variance = 1.0 / theta - 1.0 / std::sqrt(theta);
            break;
        }
    }
    return m;
}

}  // namespace portree
