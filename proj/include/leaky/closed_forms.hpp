#ifndef LEAKY_CLOSED_FORMS_HPP
#define LEAKY_CLOSED_FORMS_HPP

#include <cstddef>
#include <vector>

#include "leaky/rational.hpp"
#include "leaky/series.hpp"

namespace leaky {
namespace detail {

// Dense univariate polynomial over Q, used to take the polynomial limit of
// the J^m_{0,e1} formula where its written denominator vanishes.
using UniPoly = std::vector<Rational>;  // coefficient of x^i at index i

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    UniPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Exact division by (x - root); the remainder must vanish.
inline UniPoly uni_divide_by_linear(const UniPoly& p, const Rational& root) {
    UniPoly q(p.size() - 1, Rational(0));
    Rational carry = 0;
    for (std::size_t i = p.size(); i-- > 1;) {
        carry = p[i] + root * carry;
        q[i - 1] = carry;
    }
    const Rational remainder = p[0] + root * carry;
    if (remainder != 0) throw DomainError("uni_divide_by_linear: non-zero remainder");
    return q;
}

inline Rational uni_eval(const UniPoly& p, const Rational& x) {
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

}  // namespace detail

// J^m_{e0,0} = (m-1)!/(e0+1)! * prod_{j=e0+1}^{m-2} (d - j k/2).
inline Rational j_e0_0(long m, long e0, const Rational& d, const Rational& k) {
    if (m < 2) throw DomainError("j_e0_0: m must be >= 2");
    if (e0 < 0 || e0 > m - 2) throw DomainError("j_e0_0: e0 out of range [0, m-2]");
    Rational value = Rational(factorial(m - 1)) / Rational(factorial(e0 + 1));
    for (long j = e0 + 1; j <= m - 2; ++j) value *= d - Rational(j) * k / 2;
    return value;
}

// J^m_{0,e1}. The written denominator -nu1 - e1 k/2 divides the bracket
// exactly as a polynomial; when it vanishes numerically the value is the
// polynomial limit, obtained by exact univariate division in nu1.
inline Rational j_0_e1(long m, long e1, const Rational& d, const Rational& nu1, const Rational& k) {
    if (m < 3) throw DomainError("j_0_e1: m must be >= 3");
    if (e1 < 1 || e1 > m - 2) throw DomainError("j_0_e1: e1 out of range [1, m-2]");
    const Rational prefactor = Rational(factorial(m - 2)) / Rational(factorial(e1 + 1));
    const Rational denom = -nu1 - Rational(e1) * k / 2;

    Rational tail = Rational(m - e1 - 1);
    for (long j = 1; j <= m - e1 - 2; ++j) tail *= d - Rational(j) * k / 2;

    Rational prod_plain = 1;
    for (long j = 1; j <= m - e1 - 1; ++j) prod_plain *= d - Rational(j) * k / 2;

    if (denom != 0) {
        Rational prod_shift = 1;
        for (long j = e1 + 1; j <= m - 1; ++j) prod_shift *= d - nu1 - Rational(j) * k / 2;
        return prefactor * (Rational(e1) * (prod_shift - prod_plain) / denom + tail);
    }

    // polynomial limit: treat the bracket as a polynomial in x = nu1 and
    // divide by -(x + e1 k/2)
    detail::UniPoly shift{Rational(1)};
    for (long j = e1 + 1; j <= m - 1; ++j)
        shift = detail::uni_mul(shift, detail::UniPoly{d - Rational(j) * k / 2, Rational(-1)});
    shift[0] -= prod_plain;
    detail::UniPoly quotient = detail::uni_divide_by_linear(shift, -Rational(e1) * k / 2);
    for (Rational& coeff : quotient) coeff = -coeff;  // divisor is -(x - root)
    return prefactor * (Rational(e1) * detail::uni_eval(quotient, nu1) + tail);
}

// k = 0 specialization of J^m_{0,e1} (requires nu1 != 0).
inline Rational j_0_e1_k0(long m, long e1, const Rational& d, const Rational& nu1) {
    if (m < 3) throw DomainError("j_0_e1_k0: m must be >= 3");
    if (e1 < 1 || e1 > m - 2) throw DomainError("j_0_e1_k0: e1 out of range [1, m-2]");
    if (nu1 == 0) throw DomainError("j_0_e1_k0: nu1 must be non-zero");
    const Rational prefactor = Rational(factorial(m - 2)) / Rational(factorial(e1 + 1));
    const Rational diff = rational_pow(d, m - 1 - e1) - rational_pow(d - nu1, m - 1 - e1);
    return prefactor * (Rational(e1) * diff / nu1 + Rational(m - 1 - e1) * rational_pow(d, m - 2 - e1));
}

// nu1 = 0 specialization of J^m_{0,e1}.
inline Rational j_0_e1_nu10(long m, long e1, const Rational& d, const Rational& k) {
    if (m < 3) throw DomainError("j_0_e1_nu10: m must be >= 3");
    if (e1 < 1 || e1 > m - 2) throw DomainError("j_0_e1_nu10: e1 out of range [1, m-2]");
    const Rational prefactor = Rational(factorial(m - 2)) / Rational(factorial(e1 + 1));
    Rational sum = 0;
    for (long i = 1; i <= e1 + 1; ++i) {
        Rational prod = 1;
        for (long j = 0; j <= m - e1 - 3; ++j) prod *= d - Rational(i + j) * k / 2;
        sum += prod;
    }
    return prefactor * Rational(m - 1 - e1) * sum;
}

// H_0(d, nu) base case: (m-1)! * prod_{j=1}^{m-2} (d - j k/2).
inline Rational h0_base(long m, const Rational& d, const Rational& k) {
    if (m < 1) throw DomainError("h0_base: m must be >= 1");
    Rational value = Rational(factorial(m - 1));
    for (long j = 1; j <= m - 2; ++j) value *= d - Rational(j) * k / 2;
    return value;
}

// H_1((d,-nu), 0) as printed:
// (m+1)!/24 * prod_{j=2}^m (d - j k/2)
//   * [ (d-k)^3 - (d-k/2)(1 + 2 sum_{s<t} (nu_s+k)(nu_t+k)) ].
inline Rational h1_formula(const Rational& d, const std::vector<Rational>& nu, const Rational& k) {
    const long m = static_cast<long>(nu.size());
    if (m < 1) throw DomainError("h1_formula: need at least one negative end");
    Rational value = Rational(factorial(m + 1)) / 24;
    for (long j = 2; j <= m; ++j) value *= d - Rational(j) * k / 2;
    Rational sigma2 = 0;
    for (long s = 0; s < m; ++s)
        for (long t = s + 1; t < m; ++t)
            sigma2 += (nu[static_cast<std::size_t>(s)] + k) * (nu[static_cast<std::size_t>(t)] + k);
    const Rational bracket =
        rational_pow(d - k, 3) - (d - k / 2) * (1 + 2 * sigma2);
    return value * bracket;
}

// The alternate symmetric-function form of the genus-1 formula:
// (m+1)!/24 * ( (sum (nu_i+k)^2 - 1) prod_{j=1}^m (d - j k/2)
//               - k (d-k)^2 / 2 * prod_{j=2}^m (d - j k/2) ).
inline Rational h1_formula_alt(const Rational& d, const std::vector<Rational>& nu, const Rational& k) {
    const long m = static_cast<long>(nu.size());
    if (m < 1) throw DomainError("h1_formula_alt: need at least one negative end");
    Rational sq = 0;
    for (const Rational& v : nu) sq += rational_pow(v + k, 2);
    Rational prod_full = 1;
    for (long j = 1; j <= m; ++j) prod_full *= d - Rational(j) * k / 2;
    Rational prod_tail = 1;
    for (long j = 2; j <= m; ++j) prod_tail *= d - Rational(j) * k / 2;
    return Rational(factorial(m + 1)) / 24 *
           ((sq - 1) * prod_full - k * rational_pow(d - k, 2) / 2 * prod_tail);
}

// H_g((d,-nu), (e0,0,...,0)) at k = 0:
// (2g-1+m)!/(e0+1)! * d^(2g-2+m-e0) * [z^(2g)] prod_j S(nu_j z) / S(z).
inline Rational hg_k0_descendant(long g, long e0, const Rational& d, const std::vector<Rational>& nu) {
    const long m = static_cast<long>(nu.size());
    if (g < 0) throw DomainError("hg_k0_descendant: genus must be non-negative");
    if (2 * g - 1 + m <= 0) throw DomainError("hg_k0_descendant: 2g - 1 + m must be positive");
    if (e0 < 0 || e0 > 2 * g - 2 + m) throw DomainError("hg_k0_descendant: e0 out of range");
    Rational nu_sum = 0;
    for (const Rational& v : nu) nu_sum += v;
    if (nu_sum != d) throw DomainError("hg_k0_descendant: derived leak is non-zero (requires d = sum nu)");

    const std::size_t order = static_cast<std::size_t>(2 * g + 1);
    const TruncatedSeries base = s_series(order);
    TruncatedSeries prod(std::vector<Rational>(order, Rational(0)));
    prod.set_coeff(0, 1);
    for (const Rational& v : nu) prod = series_mul(prod, series_scale_arg(base, v));
    const TruncatedSeries quotient = series_div(prod, base);
    return Rational(factorial(2 * g - 1 + m)) / Rational(factorial(e0 + 1)) *
           rational_pow(d, 2 * g - 2 + m - e0) * quotient.coeff(static_cast<std::size_t>(2 * g));
}

}  // namespace leaky

#endif  // LEAKY_CLOSED_FORMS_HPP
