#ifndef LEAKY_RATIONAL_HPP
#define LEAKY_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace leaky {

// All arithmetic in this library is exact. Int is an arbitrary-precision
// integer, Rational an arbitrary-precision fraction kept in lowest terms
// with positive denominator (canonical form is maintained by boost).
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// Thrown when an operation is called outside its mathematical domain
// (invalid parameter ranges, division by a non-unit constant term, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by profile validation; distinct from DomainError so the CLI can
// map it to its own exit code.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

inline Int factorial(long n) {
    if (n < 0) throw DomainError("factorial: negative argument");
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;  // exact at every step
    }
    return r;
}

// top! / (parts[0]! ... parts[r]! (top - sum parts)!)
inline Int multinomial(long top, const std::vector<long>& parts) {
    if (top < 0) throw DomainError("multinomial: negative top");
    long sum = 0;
    for (long p : parts) {
        if (p < 0) throw DomainError("multinomial: negative part");
        sum += p;
    }
    if (sum > top) throw DomainError("multinomial: parts exceed top");
    Int r = 1;
    long used = 0;
    for (long p : parts) {
        for (long i = 1; i <= p; ++i) {
            r *= (used + i);
            r /= i;
        }
        used += p;
    }
    // the implicit last part (top - sum) contributes binomial(top, used) steps
    for (long i = 1; i <= top - sum; ++i) {
        r *= (used + i);
        r /= i;
    }
    return r;
}

inline Rational rational_pow(const Rational& base, long exp) {
    if (exp < 0) {
        if (base == 0) throw DomainError("rational_pow: 0 to negative power");
        return 1 / rational_pow(base, -exp);
    }
    Rational r = 1, b = base;
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

inline std::string to_fraction_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace leaky

#endif  // LEAKY_RATIONAL_HPP
