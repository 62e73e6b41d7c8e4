#ifndef LEAKY_SERIES_HPP
#define LEAKY_SERIES_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "leaky/rational.hpp"

namespace leaky {

// Formal power series over Q truncated at a fixed exclusive order:
// coefficients[i] is the coefficient of z^i, i < order().
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order) : coeffs_(order, Rational(0)) {
        if (order == 0) throw DomainError("TruncatedSeries: order must be >= 1");
    }
    explicit TruncatedSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw DomainError("TruncatedSeries: order must be >= 1");
    }

    std::size_t order() const { return coeffs_.size(); }

    const Rational& coeff(std::size_t i) const {
        if (i >= coeffs_.size()) throw DomainError("TruncatedSeries: coefficient index beyond truncation order");
        return coeffs_[i];
    }
    void set_coeff(std::size_t i, Rational v) {
        if (i >= coeffs_.size()) throw DomainError("TruncatedSeries: coefficient index beyond truncation order");
        coeffs_[i] = std::move(v);
    }

    const std::vector<Rational>& coefficients() const { return coeffs_; }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<Rational> coeffs_;
};

// Cauchy product to the common truncation order.
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) throw DomainError("series_mul: operands must share the truncation order");
    const std::size_t n = a.order();
    TruncatedSeries r(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j <= i; ++j) s += a.coeff(j) * b.coeff(i - j);
        r.set_coeff(i, s);
    }
    return r;
}

// Formal quotient a/b; b must have a nonzero constant term.
inline TruncatedSeries series_div(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) throw DomainError("series_div: operands must share the truncation order");
    if (b.coeff(0) == 0) throw DomainError("series_div: divisor has zero constant term");
    const std::size_t n = a.order();
    TruncatedSeries q(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational s = a.coeff(i);
        for (std::size_t j = 0; j < i; ++j) s -= q.coeff(j) * b.coeff(i - j);
        q.set_coeff(i, s / b.coeff(0));
    }
    return q;
}

// s(c*z): coefficient i picks up a factor c^i.
inline TruncatedSeries series_scale_arg(const TruncatedSeries& s, const Rational& c) {
    TruncatedSeries r(s.order());
    Rational p = 1;
    for (std::size_t i = 0; i < s.order(); ++i) {
        r.set_coeff(i, p * s.coeff(i));
        p *= c;
    }
    return r;
}

inline Rational series_coeff(const TruncatedSeries& s, std::size_t i) { return s.coeff(i); }

// S(z) = sinh(z/2)/(z/2): coefficient of z^(2k) is 1/(2^(2k) (2k+1)!).
inline TruncatedSeries s_series(std::size_t order) {
    TruncatedSeries s(order);
    Int two_pow = 1;     // 2^(2k)
    Int odd_fact = 1;    // (2k+1)!
    for (std::size_t i = 0; i < order; i += 2) {
        s.set_coeff(i, Rational(1, two_pow * odd_fact));
        two_pow *= 4;
        odd_fact *= Int(i + 2) * Int(i + 3);
    }
    return s;
}

}  // namespace leaky

#endif  // LEAKY_SERIES_HPP
