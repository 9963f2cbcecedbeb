#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace portree {

using BigInt = mpz_class;
using Rational = mpq_class;

/// num/den in canonical form (mpq_class's two-argument constructor does not reduce).
[[nodiscard]] inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Nearest double to q (round half to even). mpq_class::get_d truncates instead.
[[nodiscard]] double to_double(const Rational& q);

/// Canonical "p/q" text ("p" when the denominator is 1).
[[nodiscard]] std::string to_string(const Rational& q);

/**
 * @brief An exact multiple of 1/2, stored as twice its value.
 *
 * Every argument that appears in the degree formulas (j - 1/2, n - 1 - i/2,
 * (2 - d)/2, ...) is a half-integer, so pole and termination tests can be
 * made with integer arithmetic instead of floating comparisons.
 */
class HalfInt {
public:
    constexpr HalfInt() = default;

    [[nodiscard]] static constexpr HalfInt whole(std::int64_t k) { return HalfInt{2 * k}; }
    /// k/2
    [[nodiscard]] static constexpr HalfInt halves(std::int64_t k) { return HalfInt{k}; }

    [[nodiscard]] constexpr std::int64_t twice() const { return twice_; }
    [[nodiscard]] constexpr bool is_integer() const { return twice_ % 2 == 0; }
    [[nodiscard]] constexpr bool is_nonpositive_integer() const { return is_integer() && twice_ <= 0; }
    [[nodiscard]] constexpr double value() const { return static_cast<double>(twice_) / 2.0; }
    [[nodiscard]] Rational to_rational() const { return make_rational(twice_, 2); }

    constexpr HalfInt operator+(HalfInt o) const { return HalfInt{twice_ + o.twice_}; }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt{twice_ - o.twice_}; }
    constexpr HalfInt operator+(std::int64_t k) const { return HalfInt{twice_ + 2 * k}; }
    constexpr HalfInt operator-(std::int64_t k) const { return HalfInt{twice_ - 2 * k}; }
    constexpr auto operator<=>(const HalfInt&) const = default;

private:
    constexpr explicit HalfInt(std::int64_t twice) : twice_(twice) {}
    std::int64_t twice_ = 0;
};

/// ln Γ(x) for x > 0. Throws std::domain_error otherwise.
[[nodiscard]] double log_gamma(double x);

/// 1/Γ(x) on the whole real line; exactly 0 at the poles x = 0, -1, -2, ...
[[nodiscard]] double reciprocal_gamma(double x);

/// 1/Γ(x) as (ln|1/Γ(x)|, sign). sign is 0 at poles, where log_abs is -inf.
struct SignedLog {
    double log_abs;
    int sign;
};
[[nodiscard]] SignedLog log_reciprocal_gamma(double x);

/// Ψ(n) + γ = H_{n-1}, exactly. Throws std::domain_error for n <= 0.
[[nodiscard]] Rational digamma_plus_gamma(std::int64_t n);

/// Floating H_{n-1} with compensated summation.
[[nodiscard]] double digamma_plus_gamma_real(std::int64_t n);

/// Rising factorial x(x+1)...(x+k-1); 1 for k = 0.
[[nodiscard]] double pochhammer(double x, std::uint64_t k);
[[nodiscard]] Rational pochhammer(const Rational& x, std::uint64_t k);

/// z!! in 64 bits; throws std::overflow_error when it does not fit.
[[nodiscard]] std::uint64_t double_factorial(std::uint64_t z);
[[nodiscard]] BigInt double_factorial_big(std::uint64_t z);

/**
 * @brief Γ(a)/Γ(b) exactly, for half-integers with a - b an integer.
 *
 * Equals ⟨b⟩_{a-b} when a >= b and 1/⟨a⟩_{b-a} otherwise. When b is a pole
 * and a is not, the ratio is 0 (1/Γ(b) = 0). Throws std::domain_error if a
 * is a pole, or if a - b is not an integer.
 */
[[nodiscard]] Rational gamma_ratio(HalfInt a, HalfInt b);

/// A terminating generalized hypergeometric series pFq(upper; lower; argument).
struct HypergeomSpec {
    std::vector<HalfInt> upper;
    std::vector<HalfInt> lower;
    Rational argument{1};
};

/**
 * Index of the last nonzero term: the smallest m with some upper parameter
 * equal to -m. Throws std::invalid_argument if no upper parameter is a
 * nonpositive integer, or if a lower Pochhammer vanishes at or before m.
 */
[[nodiscard]] std::uint64_t hypergeometric_last_term(const HypergeomSpec& spec);

[[nodiscard]] double hypergeometric_pFq(const HypergeomSpec& spec);
[[nodiscard]] Rational hypergeometric_pFq_exact(const HypergeomSpec& spec);

}  // namespace portree
