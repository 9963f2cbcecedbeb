#include "portree/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace portree {

namespace {

// sin(πx) with the argument reduced first, so half-integers give exactly ±1
// and integers exactly 0.
double sin_pi(double x) {
    const double r = std::fmod(x, 2.0);
    if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
    return std::sin(std::numbers::pi * r);
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) {
    const int sign = sgn(q);
    if (sign == 0) return 0.0;
    BigInt num = abs(q.get_num());
    BigInt den = q.get_den();
    // Scale so the integer quotient carries 55 significant bits, then round
    // the low two bits (plus the remainder as a sticky bit) to nearest-even.
    const long shift = 55 - static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) +
                       static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    if (shift > 0) {
        num <<= static_cast<mp_bitcnt_t>(shift);
    } else {
        den <<= static_cast<mp_bitcnt_t>(-shift);
    }
    BigInt quot;
    BigInt rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    // quot has 55 or 56 bits; keep 53
    const long extra = static_cast<long>(mpz_sizeinbase(quot.get_mpz_t(), 2)) - 53;
    const unsigned long low = mpz_get_ui(BigInt(quot & ((BigInt(1) << static_cast<mp_bitcnt_t>(extra)) - 1)).get_mpz_t());
    const unsigned long half = 1UL << (extra - 1);
    quot >>= static_cast<mp_bitcnt_t>(extra);
    const bool sticky = rem != 0 || (low & (half - 1)) != 0;
    if ((low & half) != 0 && (sticky || mpz_odd_p(quot.get_mpz_t()))) quot += 1;
    const double mantissa = quot.get_d();  // at most 2^53, exact
    return sign * std::ldexp(mantissa, static_cast<int>(extra - shift));
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);  // reentrant; std::lgamma writes the global signgam
#else
    return std::lgamma(x);
#endif
}

SignedLog log_reciprocal_gamma(double x) {
    if (x > 0.0) return {-log_gamma(x), 1};
    if (is_nonpositive_integer(x)) return {-std::numeric_limits<double>::infinity(), 0};
    // reflection: 1/Γ(x) = sin(πx) Γ(1 - x) / π
    const double s = sin_pi(x);
    return {log_gamma(1.0 - x) + std::log(std::abs(s)) - std::log(std::numbers::pi), s > 0.0 ? 1 : -1};
}

double reciprocal_gamma(double x) {
    const SignedLog r = log_reciprocal_gamma(x);
    if (r.sign == 0) return 0.0;
    return r.sign * std::exp(r.log_abs);
}

Rational digamma_plus_gamma(std::int64_t n) {
    if (n <= 0) throw std::domain_error("digamma_plus_gamma: n must be positive");
    Rational h{0};
    for (std::int64_t k = 1; k < n; ++k) h += make_rational(1, k);
    return h;
}

double digamma_plus_gamma_real(std::int64_t n) {
    if (n <= 0) throw std::domain_error("digamma_plus_gamma: n must be positive");
    double sum = 0.0;
    double carry = 0.0;
    for (std::int64_t k = n - 1; k >= 1; --k) {  // smallest terms first
        const double y = 1.0 / static_cast<double>(k) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double pochhammer(double x, std::uint64_t k) {
    double p = 1.0;
    for (std::uint64_t i = 0; i < k; ++i) p *= x + static_cast<double>(i);
    return p;
}

Rational pochhammer(const Rational& x, std::uint64_t k) {
    Rational p{1};
    Rational factor = x;
    for (std::uint64_t i = 0; i < k; ++i) {
        p *= factor;
        if (p == 0) break;
        factor += 1;
    }
    return p;
}

std::uint64_t double_factorial(std::uint64_t z) {
    std::uint64_t r = 1;
    for (std::uint64_t f = z; f >= 2; f -= 2) {
        if (__builtin_mul_overflow(r, f, &r)) {
            throw std::overflow_error("double_factorial: result exceeds 64 bits; use double_factorial_big");
        }
    }
    return r;
}

BigInt double_factorial_big(std::uint64_t z) {
    BigInt r{1};
    for (std::uint64_t f = z; f >= 2; f -= 2) r *= static_cast<unsigned long>(f);
    return r;
}

Rational gamma_ratio(HalfInt a, HalfInt b) {
    const HalfInt diff = a - b;
    if (!diff.is_integer()) throw std::domain_error("gamma_ratio: arguments must differ by an integer");
    if (a.is_nonpositive_integer()) throw std::domain_error("gamma_ratio: numerator argument is a pole of Γ");
    const std::int64_t steps = diff.twice() / 2;
    if (steps >= 0) return pochhammer(b.to_rational(), static_cast<std::uint64_t>(steps));
    return 1 / pochhammer(a.to_rational(), static_cast<std::uint64_t>(-steps));
}

std::uint64_t hypergeometric_last_term(const HypergeomSpec& spec) {
    bool terminates = false;
    std::uint64_t last = 0;
    for (const HalfInt a : spec.upper) {
        if (!a.is_nonpositive_integer()) continue;
        const auto m = static_cast<std::uint64_t>(-a.twice() / 2);
        last = terminates ? std::min(last, m) : m;
        terminates = true;
    }
    if (!terminates) throw std::invalid_argument("hypergeometric_pFq: series does not terminate");
    for (const HalfInt b : spec.lower) {
        // ⟨b⟩_s vanishes for s >= -b + 1 when b is a nonpositive integer
        if (b.is_nonpositive_integer() && static_cast<std::uint64_t>(-b.twice() / 2) < last) {
            throw std::invalid_argument("hypergeometric_pFq: lower parameter pole before termination");
        }
    }
    return last;
}

double hypergeometric_pFq(const HypergeomSpec& spec) {
    const std::uint64_t last = hypergeometric_last_term(spec);
    const double z = spec.argument.get_d();
    double sum = 0.0;
    double term = 1.0;
    for (std::uint64_t s = 0;; ++s) {
        sum += term;
        if (s == last) break;
        const double k = static_cast<double>(s);
        for (const HalfInt a : spec.upper) term *= a.value() + k;
        for (const HalfInt b : spec.lower) term /= b.value() + k;
        term *= z / (k + 1.0);
    }
    return sum;
}

Rational hypergeometric_pFq_exact(const HypergeomSpec& spec) {
    const std::uint64_t last = hypergeometric_last_term(spec);
    Rational sum{0};
    Rational term{1};
    for (std::uint64_t s = 0;; ++s) {
        sum += term;
        if (s == last) break;
        const Rational k(static_cast<long>(s));
        for (const HalfInt a : spec.upper) term *= a.to_rational() + k;
        for (const HalfInt b : spec.lower) term /= b.to_rational() + k;
        term *= spec.argument / (k + 1);
    }
    return sum;
}

}  // namespace portree
