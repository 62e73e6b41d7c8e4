#ifndef LEAKY_POLY_HPP
#define LEAKY_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leaky/rational.hpp"
#include "leaky/recursions.hpp"

namespace leaky {

// Exact multivariate polynomial with named variables and dense exponent
// vectors. Zero coefficients are never stored, so structural equality of
// the term maps is polynomial equality.
class MultivariatePolynomial {
public:
    explicit MultivariatePolynomial(std::vector<std::string> variables)
        : vars_(std::move(variables)) {}

    const std::vector<std::string>& variables() const { return vars_; }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

    void add_term(std::vector<int> exponents, const Rational& coeff) {
        if (exponents.size() != vars_.size())
            throw DomainError("MultivariatePolynomial: exponent vector length mismatch");
        auto it = terms_.find(exponents);
        if (it == terms_.end()) {
            if (coeff != 0) terms_.emplace(std::move(exponents), coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    bool is_zero() const { return terms_.empty(); }

    long total_degree() const {
        long deg = 0;
        for (const auto& [exp, coeff] : terms_)
            deg = std::max(deg, static_cast<long>(std::accumulate(exp.begin(), exp.end(), 0)));
        return deg;
    }

    Rational eval(const std::vector<Rational>& point) const {
        if (point.size() != vars_.size())
            throw DomainError("MultivariatePolynomial: evaluation point length mismatch");
        Rational r = 0;
        for (const auto& [exp, coeff] : terms_) {
            Rational t = coeff;
            for (std::size_t i = 0; i < exp.size(); ++i)
                t *= rational_pow(point[i], exp[static_cast<std::size_t>(i)]);
            r += t;
        }
        return r;
    }

    MultivariatePolynomial operator+(const MultivariatePolynomial& o) const {
        MultivariatePolynomial r = *this;
        for (const auto& [exp, coeff] : o.terms_) r.add_term(exp, coeff);
        return r;
    }
    MultivariatePolynomial operator-(const MultivariatePolynomial& o) const {
        MultivariatePolynomial r = *this;
        for (const auto& [exp, coeff] : o.terms_) r.add_term(exp, -coeff);
        return r;
    }
    MultivariatePolynomial operator*(const MultivariatePolynomial& o) const {
        MultivariatePolynomial r(vars_);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                std::vector<int> exp(ea.size());
                for (std::size_t i = 0; i < exp.size(); ++i) exp[i] = ea[i] + eb[i];
                r.add_term(std::move(exp), ca * cb);
            }
        }
        return r;
    }
    MultivariatePolynomial operator*(const Rational& c) const {
        MultivariatePolynomial r(vars_);
        for (const auto& [exp, coeff] : terms_) r.add_term(exp, coeff * c);
        return r;
    }

    friend bool operator==(const MultivariatePolynomial& a, const MultivariatePolynomial& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    static MultivariatePolynomial constant(std::vector<std::string> variables, const Rational& c) {
        MultivariatePolynomial p(std::move(variables));
        p.add_term(std::vector<int>(p.vars_.size(), 0), c);
        return p;
    }
    static MultivariatePolynomial variable(std::vector<std::string> variables, std::size_t index) {
        MultivariatePolynomial p(std::move(variables));
        std::vector<int> exp(p.vars_.size(), 0);
        exp.at(index) = 1;
        p.add_term(std::move(exp), 1);
        return p;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // print highest total degree first
        std::vector<const std::pair<const std::vector<int>, Rational>*> sorted;
        for (const auto& t : terms_) sorted.push_back(&t);
        std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
            const int da = std::accumulate(a->first.begin(), a->first.end(), 0);
            const int db = std::accumulate(b->first.begin(), b->first.end(), 0);
            if (da != db) return da > db;
            return a->first > b->first;  // earlier variables first within a degree
        });
        for (auto* t : sorted) {
            const auto& [exp, coeff] = *t;
            Rational c = coeff;
            if (!first) {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            } else if (c < 0) {
                os << "-";
                c = -c;
            }
            first = false;
            const bool has_vars = std::accumulate(exp.begin(), exp.end(), 0) > 0;
            const bool unit = (c == 1);
            if (!unit || !has_vars) {
                if (denominator(c) == 1) os << numerator(c);
                else os << numerator(c) << "/" << denominator(c);
                if (has_vars) os << "*";
            }
            bool firstv = true;
            for (std::size_t i = 0; i < exp.size(); ++i) {
                if (exp[i] == 0) continue;
                if (!firstv) os << "*";
                firstv = false;
                os << vars_[i];
                if (exp[i] > 1) os << "^" << exp[i];
            }
        }
        return os.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [exp, coeff] : terms_)
            terms.push_back(nlohmann::json{{"exponents", exp},
                                           {"num", numerator(coeff).str()},
                                           {"den", denominator(coeff).str()}});
        return nlohmann::json{{"variables", vars_}, {"terms", terms}};
    }

private:
    std::vector<std::string> vars_;
    std::map<std::vector<int>, Rational> terms_;
};

inline bool assert_degree_bound(const MultivariatePolynomial& p, long c) {
    return p.total_degree() <= c;
}

namespace detail {

// Exponent vectors (equivalently principal-lattice points) of total degree
// <= deg in `vars` variables, in lexicographic order.
inline std::vector<std::vector<int>> lattice_points(std::size_t vars, long deg) {
    std::vector<std::vector<int>> pts;
    std::vector<int> cur(vars, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i == vars) {
            pts.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[i] = v;
            rec(i + 1, left - v);
        }
        cur[i] = 0;
    };
    rec(0, deg);
    return pts;
}

// Solves the square system A x = b by exact Gaussian elimination.
inline std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a,
                                          std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) throw DomainError("solve_linear: singular system");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) continue;
            const Rational f = a[row][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t row = n; row-- > 0;) {
        Rational s = b[row];
        for (std::size_t j = row + 1; j < n; ++j) s -= a[row][j] * x[j];
        x[row] = s / a[row][row];
    }
    return x;
}

}  // namespace detail

// Reconstructs H_0((d,-nu), e) as the polynomial of total degree <= c in
// (d, k, nu_1..nu_u) by exact interpolation on a principal lattice of
// admissible profiles (c = m-2-|e|, u = number of psi-carrying nu-ends).
// Sampling follows a fixed rule: lattice coordinates (k, nu_1..nu_u, R)
// with base point (grid_offset, 1+grid_offset, ..., m-u+grid_offset),
// d = k(m-1) + sum nu_i + R, the residual R distributed over the psi-free
// ends as (R-(m-u-1), 1, ..., 1). Disjoint grids (different offsets) must
// reproduce the same polynomial.
inline MultivariatePolynomial interpolate_h0(long m, const std::vector<long>& psi,
                                             long grid_offset = 0, MemoCache* cache = nullptr) {
    if (m < 2) throw DomainError("interpolate_h0: m must be >= 2");
    if (psi.size() != static_cast<std::size_t>(m + 1))
        throw DomainError("interpolate_h0: psi must have length m + 1");
    long e_total = 0;
    for (long v : psi) {
        if (v < 0) throw DomainError("interpolate_h0: psi entries must be non-negative");
        e_total += v;
    }
    const long c = m - 2 - e_total;
    if (c < 0) throw DomainError("interpolate_h0: |psi| exceeds m - 2");
    if (grid_offset < 0) throw DomainError("interpolate_h0: grid offset must be non-negative");

    std::vector<long> carrying;  // psi-carrying nu-positions, in given order
    for (long i = 1; i <= m; ++i)
        if (psi[static_cast<std::size_t>(i)] > 0) carrying.push_back(i);
    const long u = static_cast<long>(carrying.size());

    std::vector<std::string> vars{"d", "k"};
    for (long i = 1; i <= u; ++i) vars.push_back("nu" + std::to_string(i));

    const auto monomials = detail::lattice_points(vars.size(), c);
    const auto alphas = detail::lattice_points(static_cast<std::size_t>(u) + 2, c);
    const std::size_t n = monomials.size();

    MemoCache local;
    if (!cache) cache = &local;

    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    std::vector<Rational> b(n);
    for (std::size_t row = 0; row < n; ++row) {
        const auto& alpha = alphas[row];
        const Int k = grid_offset + alpha[0];
        std::vector<Int> nu(static_cast<std::size_t>(m));
        for (long i = 0; i < u; ++i) nu[static_cast<std::size_t>(i)] = 1 + grid_offset + alpha[static_cast<std::size_t>(i) + 1];
        // c >= 0 forces m - u >= 2, so there is always a psi-free end to
        // absorb the residual
        const Int residual = (m - u) + grid_offset + alpha[static_cast<std::size_t>(u) + 1];
        nu[static_cast<std::size_t>(u)] = residual - (m - u - 1);
        for (long i = u + 1; i < m; ++i) nu[static_cast<std::size_t>(i)] = 1;
        Int nu_sum = 0;
        for (const Int& v : nu) nu_sum += v;
        const Int d = k * (m - 1) + nu_sum;

        std::vector<long> sample_psi(static_cast<std::size_t>(m + 1), 0);
        sample_psi[0] = psi[0];
        for (long i = 0; i < u; ++i)
            sample_psi[static_cast<std::size_t>(i) + 1] = psi[static_cast<std::size_t>(carrying[static_cast<std::size_t>(i)])];

        b[row] = h0_rec(d, nu, sample_psi, cache);

        std::vector<Rational> point{Rational(d), Rational(k)};
        for (long i = 0; i < u; ++i) point.push_back(Rational(nu[static_cast<std::size_t>(i)]));
        for (std::size_t col = 0; col < n; ++col) {
            Rational t = 1;
            for (std::size_t i = 0; i < vars.size(); ++i)
                t *= rational_pow(point[i], monomials[col][i]);
            a[row][col] = t;
        }
    }

    const std::vector<Rational> coeffs = detail::solve_linear(std::move(a), std::move(b));
    MultivariatePolynomial p(vars);
    for (std::size_t i = 0; i < n; ++i) p.add_term(monomials[i], coeffs[i]);
    return p;
}

// Exact polynomial identity testing by deterministic dense sampling: two
// polynomial expressions of total degree <= degree_bound in nvars
// variables agree everywhere iff they agree on a principal lattice of that
// degree (offset shifts the lattice away from degenerate points).
using PolyFunc = std::function<Rational(const std::vector<Rational>&)>;

inline bool identity_check(const PolyFunc& lhs, const PolyFunc& rhs, std::size_t nvars,
                           long degree_bound, long offset = 0) {
    for (const auto& alpha : detail::lattice_points(nvars, degree_bound)) {
        std::vector<Rational> point(nvars);
        for (std::size_t i = 0; i < nvars; ++i) point[i] = Rational(alpha[i] + offset);
        if (lhs(point) != rhs(point)) return false;
    }
    return true;
}

}  // namespace leaky

#endif  // LEAKY_POLY_HPP
