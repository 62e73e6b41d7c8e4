#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <vector>

#include "leaky/recursions.hpp"
#include "leaky/trop_enum.hpp"

using namespace leaky;

TEST_CASE("j recursion, no insertion at the negative ends") {
    // m = 2 base: a single vertex, value 1 regardless of d and k
    CHECK(j_rec(2, 0, 0, Rational(7), Rational(0), Rational(3)) == 1);
    // closed check by hand: J^3_{0,0} = 2(d - k/2)
    CHECK(j_rec(3, 0, 0, Rational(5), Rational(0), Rational(2)) == 8);
    // J^4_{1,0} at d = 10, k = 0 equals the reference invariant 30
    CHECK(j_rec(4, 1, 0, Rational(10), Rational(0), Rational(0)) == 30);
    // e0 = m - 2 ends the recursion at the seed
    CHECK(j_rec(5, 3, 0, Rational(9), Rational(0), Rational(4)) == 1);
}

TEST_CASE("j recursion against tropical enumeration") {
    // one psi-insertion at the first negative end; the count only sees
    // d, k and nu_1, so both nu-tails below must agree
    const Profile a = validate(0, 10, {2, 3, 1, 1}, {0, 1, 0, 0, 0});
    const Profile b = validate(0, 10, {2, 2, 2, 1}, {0, 1, 0, 0, 0});
    CHECK(a.k == 1);
    CHECK(b.k == 1);
    const Rational expected = j_rec(4, 0, 1, Rational(10), Rational(2), Rational(1));
    CHECK(tropical_count(a) == expected);
    CHECK(tropical_count(b) == expected);

    // insertions at both the positive end and a negative end
    const Profile c = validate(0, 10, {2, 3, 2, 3}, {1, 1, 0, 0, 0});
    CHECK(tropical_count(c) == j_rec(4, 1, 1, Rational(10), Rational(2), Rational(0)));

    // no insertions at all reduces to J^m_{0,0}
    const Profile e = validate(0, 6, {1, 1, 2}, {0, 0, 0, 0});
    CHECK(tropical_count(e) == j_rec(3, 0, 0, Rational(6), Rational(1), Rational(1)));
}

TEST_CASE("j recursion domain errors") {
    CHECK_THROWS_AS(j_rec(1, 0, 0, Rational(3), Rational(0), Rational(0)), DomainError);
    CHECK_THROWS_AS(j_rec(4, -1, 0, Rational(3), Rational(0), Rational(0)), DomainError);
    CHECK_THROWS_AS(j_rec(4, 2, 1, Rational(3), Rational(1), Rational(0)), DomainError);
    CHECK_THROWS_AS(j_rec(2, 0, 1, Rational(3), Rational(1), Rational(0)), DomainError);
}

TEST_CASE("h0 cut recursion against tropical enumeration") {
    CHECK(h0_rec(10, {2, 3, 2, 3}, {1, 0, 0, 0, 0}) == 30);
    CHECK(h0_rec(6, {1, 1, 2}, {0, 0, 0, 0}) == 11);

    const std::vector<std::pair<Profile, const char*>> cases = {
        {validate(0, 10, {2, 3, 2, 3}, {0, 1, 1, 0, 0}), "two insertions"},
        {validate(0, 7, {1, 1, 1, 1}, {0, 0, 1, 0, 0}), "k = 1"},
        {validate(0, 12, {1, 2, 3, 3}, {1, 0, 0, 1, 0}), "mixed insertions"},
        {validate(0, 3, {2, 3, 2}, {0, 0, 0, 0}), "negative leak"},
    };
    for (const auto& [p, label] : cases) {
        CAPTURE(label);
        CHECK(h0_rec(p.d, p.nu, p.psi) == tropical_count(p));
    }
}

TEST_CASE("h0 recursion errors") {
    // non-integral leak
    CHECK_THROWS_AS(h0_rec(6, {1, 1, 1}, {0, 0, 0, 0}), DomainError);
    // psi length mismatch
    CHECK_THROWS_AS(h0_rec(6, {1, 1, 2}, {0, 0, 0}), DomainError);
    // m < 2
    CHECK_THROWS_AS(h0_rec(3, {1}, {0, 0}), DomainError);
    // |psi| too large
    CHECK_THROWS_AS(h0_rec(10, {2, 3, 2, 3}, {2, 1, 0, 0, 0}), DomainError);
}

TEST_CASE("higher genus recursion") {
    // reference value: genus 1, d = 3, nu = (1), k = 1
    CHECK(hg_onepart_rec(1, 3, {1}) == Rational(11, 24));
    // genus 0 falls through to the closed base case
    CHECK(hg_onepart_rec(0, 6, {1, 1, 2}) == 11);
    CHECK(hg_onepart_rec(0, 10, {2, 3, 2, 3}) == tropical_count(validate(0, 10, {2, 3, 2, 3}, {0, 0, 0, 0, 0})));
    // k < 0 with positive genus is outside the supported domain
    CHECK_THROWS_AS(hg_onepart_rec(1, 1, {3}), DomainError);
    CHECK_THROWS_AS(hg_onepart_rec(2, 1, {5}), DomainError);
    // non-integral leak
    CHECK_THROWS_AS(hg_onepart_rec(1, 4, {1}), DomainError);
}

TEST_CASE("memo key canonicalization") {
    const MemoKey a = make_memo_key(0, 9, 1, {3, 1, 2}, {0, 2, 1});
    const MemoKey b = make_memo_key(0, 9, 1, {1, 2, 3}, {2, 1, 0});
    CHECK(a.canonical_text() == b.canonical_text());
    CHECK(!(a < b));
    CHECK(!(b < a));
    CHECK(a.canonical_text() == "g=0;d=9;e0=1;ends=1:2,2:1,3:0");
}

TEST_CASE("results do not depend on the cache") {
    MemoCache cache;
    const Rational plain = h0_rec(10, {2, 3, 2, 3}, {0, 1, 0, 0, 0});
    CHECK(h0_rec(10, {2, 3, 2, 3}, {0, 1, 0, 0, 0}, &cache) == plain);
    CHECK(cache.size() > 0);
    // warm-cache rerun
    CHECK(h0_rec(10, {2, 3, 2, 3}, {0, 1, 0, 0, 0}, &cache) == plain);

    MemoCache hcache;
    const Rational h = hg_onepart_rec(2, 9, {2, 2});
    CHECK(hg_onepart_rec(2, 9, {2, 2}, &hcache) == h);
    CHECK(hg_onepart_rec(2, 9, {2, 2}, &hcache) == h);
}

TEST_CASE("cache file round trip") {
    const std::string path = "memo_cache_roundtrip.txt";
    MemoCache cache;
    hg_onepart_rec(1, 3, {1}, &cache);
    h0_rec(6, {1, 1, 2}, {0, 0, 0, 0}, &cache);
    const std::size_t n = cache.size();
    CHECK(n > 0);
    REQUIRE(cache.save_file(path));

    MemoCache loaded;
    REQUIRE(loaded.load_file(path));
    CHECK(loaded.size() == n);
    CHECK(loaded.lookup(make_memo_key(1, 3, 0, {1}, {})).value() == Rational(11, 24));
    CHECK(hg_onepart_rec(1, 3, {1}, &loaded) == Rational(11, 24));
    std::remove(path.c_str());
}

TEST_CASE("stale cache versions are ignored") {
    const std::string path = "memo_cache_stale.txt";
    {
        std::ofstream out(path);
        out << "leaky-memo-cache v0\n";
        out << "g=1;d=3;e0=0;ends=1:0\t99\t1\n";
    }
    MemoCache cache;
    CHECK_FALSE(cache.load_file(path));
    CHECK(cache.size() == 0);
    CHECK_FALSE(cache.load_file("does-not-exist-anywhere.txt"));
    std::remove(path.c_str());
}

TEST_CASE("malformed cache lines are skipped") {
    const std::string path = "memo_cache_malformed.txt";
    {
        std::ofstream out(path);
        out << MemoCache::kFileHeader << "\n";
        out << "not a record\n";
        out << "g=1;d=3;e0=0;ends=1:0\t11\t24\n";
        out << "g=1;d=3;e0=0;ends=1:0\t5\t0\n";  // zero denominator
    }
    MemoCache cache;
    REQUIRE(cache.load_file(path));
    CHECK(cache.size() == 1);
    CHECK(cache.lookup(make_memo_key(1, 3, 0, {1}, {})).value() == Rational(11, 24));
    std::remove(path.c_str());
}
