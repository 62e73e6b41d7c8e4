#include <doctest.h>

#include <vector>

#include "leaky/closed_forms.hpp"
#include "leaky/recursions.hpp"
#include "leaky/trop_enum.hpp"

using namespace leaky;

TEST_CASE("j_e0_0 closed form") {
    // reference value
    CHECK(j_e0_0(4, 1, Rational(10), Rational(0)) == 30);
    // agrees with the recursion over a rational grid
    for (long m = 2; m <= 7; ++m)
        for (long e0 = 0; e0 <= m - 2; ++e0)
            for (int di = 1; di <= 3; ++di)
                for (int ki = -2; ki <= 2; ++ki) {
                    const Rational d(2 * di + 1, 2);
                    const Rational k(ki, 3);
                    CAPTURE(m); CAPTURE(e0);
                    CHECK(j_e0_0(m, e0, d, k) == j_rec(m, e0, 0, d, Rational(0), k));
                }
    CHECK_THROWS_AS(j_e0_0(1, 0, Rational(2), Rational(0)), DomainError);
    CHECK_THROWS_AS(j_e0_0(4, 3, Rational(2), Rational(0)), DomainError);
}

TEST_CASE("j_0_e1 closed form") {
    // agrees with the recursion over a rational grid, including points where
    // the written denominator -nu1 - e1 k / 2 vanishes
    for (long m = 3; m <= 6; ++m)
        for (long e1 = 1; e1 <= m - 2; ++e1)
            for (int di = 1; di <= 2; ++di)
                for (int ni = -2; ni <= 2; ++ni)
                    for (int ki = -2; ki <= 2; ++ki) {
                        const Rational d(3 * di + 1, 2);
                        const Rational nu1(ni);
                        const Rational k(ki);
                        CAPTURE(m); CAPTURE(e1); CAPTURE(ni); CAPTURE(ki);
                        CHECK(j_0_e1(m, e1, d, nu1, k) == j_rec(m, 0, e1, d, nu1, k));
                    }
    // the singular point exercised explicitly: denominator -1 - 2*(-1)/2 = 0
    CHECK(-Rational(1) - Rational(2) * Rational(-1) / 2 == 0);
    CHECK(j_0_e1(4, 2, Rational(7), Rational(1), Rational(-1)) ==
          j_rec(4, 0, 2, Rational(7), Rational(1), Rational(-1)));
    CHECK_THROWS_AS(j_0_e1(2, 1, Rational(3), Rational(1), Rational(0)), DomainError);
    CHECK_THROWS_AS(j_0_e1(4, 0, Rational(3), Rational(1), Rational(0)), DomainError);
}

TEST_CASE("j_0_e1 specializations") {
    for (long m = 3; m <= 6; ++m)
        for (long e1 = 1; e1 <= m - 2; ++e1)
            for (int di = 1; di <= 3; ++di) {
                const Rational d(4 * di + 1, 3);
                for (int ni = 1; ni <= 3; ++ni)
                    CHECK(j_0_e1_k0(m, e1, d, Rational(ni, 2)) ==
                          j_0_e1(m, e1, d, Rational(ni, 2), Rational(0)));
                for (int ki = -2; ki <= 2; ++ki)
                    CHECK(j_0_e1_nu10(m, e1, d, Rational(ki, 2)) ==
                          j_0_e1(m, e1, d, Rational(0), Rational(ki, 2)));
            }
    CHECK_THROWS_AS(j_0_e1_k0(4, 1, Rational(3), Rational(0)), DomainError);
}

TEST_CASE("h0_base closed form") {
    CHECK(h0_base(3, Rational(6), Rational(1)) == 11);
    const Profile p = validate(0, 10, {2, 3, 2, 3}, {0, 0, 0, 0, 0});
    CHECK(h0_base(4, Rational(10), Rational(0)) == tropical_count(p));
    const Profile q = validate(0, 9, {1, 1, 1}, {0, 0, 0, 0});
    CHECK(h0_base(3, Rational(9), Rational(3)) == tropical_count(q));
    CHECK_THROWS_AS(h0_base(0, Rational(3), Rational(0)), DomainError);
}

TEST_CASE("genus one closed form") {
    // reference value: d = 3, nu = (1), k = 1
    CHECK(h1_formula(Rational(3), {Rational(1)}, Rational(1)) == Rational(11, 24));
    CHECK(h1_formula_alt(Rational(3), {Rational(1)}, Rational(1)) == Rational(11, 24));
    CHECK(hg_onepart_rec(1, 3, {1}) == Rational(11, 24));

    // the two printed forms agree wherever the balancing condition
    // d = sum nu + k(m+1) holds, including non-integer data
    for (int m = 1; m <= 4; ++m)
        for (int shift = 0; shift <= 2; ++shift)
            for (int ki = -2; ki <= 2; ++ki) {
                std::vector<Rational> nu;
                Rational s = 0;
                for (int i = 0; i < m; ++i) {
                    nu.emplace_back(2 * i + 1 + 2 * shift, 3);
                    s += nu.back();
                }
                const Rational k(ki, 2);
                const Rational d = s + k * (m + 1);
                CHECK(h1_formula(d, nu, k) == h1_formula_alt(d, nu, k));
            }

    // against the recursion on integer profiles (k derived from balancing)
    const std::vector<std::pair<Int, std::vector<Int>>> cases = {
        {4, {2, 2}}, {7, {2, 2}}, {5, {1, 2, 2}}, {9, {1, 2, 2}}, {7, {7}},
    };
    for (const auto& [d, nu] : cases) {
        Int s = 0;
        for (const Int& v : nu) s += v;
        const Int k = (d - s) / Int(static_cast<long>(nu.size()) + 1);
        std::vector<Rational> nur(nu.begin(), nu.end());
        CAPTURE(d.str());
        CHECK(h1_formula(Rational(d), nur, Rational(k)) == hg_onepart_rec(1, d, nu));
    }
}

TEST_CASE("k = 0 descendant formula") {
    // reference value: g = 1, d = 2, nu = (2), e0 = 0
    CHECK(hg_k0_descendant(1, 0, Rational(2), {Rational(2)}) == Rational(1, 2));

    // genus 0 collapses to the polynomial closed form
    CHECK(hg_k0_descendant(0, 1, Rational(10), {Rational(2), Rational(3), Rational(2), Rational(3)}) == 30);
    CHECK(hg_k0_descendant(0, 0, Rational(7), {Rational(3), Rational(4)}) ==
          j_e0_0(2, 0, Rational(7), Rational(0)));

    // against the recursion at k = 0 (d = sum nu)
    const std::vector<std::pair<long, std::vector<Int>>> cases = {
        {1, {2}}, {1, {1, 3}}, {1, {2, 2, 1}}, {2, {3}}, {2, {2, 2}}, {3, {4}},
    };
    for (const auto& [g, nu] : cases) {
        Int d = 0;
        for (const Int& v : nu) d += v;
        std::vector<Rational> nur(nu.begin(), nu.end());
        CAPTURE(g);
        CHECK(hg_k0_descendant(g, 0, Rational(d), nur) == hg_onepart_rec(g, d, nu));
    }

    // and against the genus-1 closed form with descendants off
    CHECK(hg_k0_descendant(1, 0, Rational(6), {Rational(2), Rational(4)}) ==
          h1_formula(Rational(6), {Rational(2), Rational(4)}, Rational(0)));

    CHECK_THROWS_AS(hg_k0_descendant(1, 0, Rational(3), {Rational(1)}), DomainError);
    CHECK_THROWS_AS(hg_k0_descendant(1, 3, Rational(2), {Rational(2)}), DomainError);
    CHECK_THROWS_AS(hg_k0_descendant(-1, 0, Rational(2), {Rational(2)}), DomainError);
}

TEST_CASE("univariate helper division") {
    using detail::UniPoly;
    // (x - 2)(x + 3) = x^2 + x - 6
    const UniPoly p{-6, 1, 1};
    const UniPoly q = detail::uni_divide_by_linear(p, Rational(2));
    CHECK(q == UniPoly{3, 1});
    CHECK(detail::uni_eval(q, Rational(5)) == 8);
    CHECK_THROWS_AS(detail::uni_divide_by_linear(p, Rational(1)), DomainError);
}
