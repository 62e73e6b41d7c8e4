#ifndef LEAKY_RECURSIONS_HPP
#define LEAKY_RECURSIONS_HPP

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "leaky/rational.hpp"

namespace leaky {

// Canonical memo key: the (nu, e) pairs at the negative ends are sorted so
// permutation-equivalent profiles collide.
struct MemoKey {
    long genus = 0;
    Int d;
    long e0 = 0;
    std::vector<std::pair<Int, long>> ends;  // sorted (nu_i, e_i)

    friend bool operator<(const MemoKey& a, const MemoKey& b) {
        return std::tie(a.genus, a.d, a.e0, a.ends) < std::tie(b.genus, b.d, b.e0, b.ends);
    }

    std::string canonical_text() const {
        std::ostringstream os;
        os << "g=" << genus << ";d=" << d << ";e0=" << e0 << ";ends=";
        for (std::size_t i = 0; i < ends.size(); ++i) {
            if (i) os << ",";
            os << ends[i].first << ":" << ends[i].second;
        }
        return os.str();
    }
};

inline MemoKey make_memo_key(long genus, const Int& d, long e0,
                             const std::vector<Int>& nu, const std::vector<long>& psi_tail) {
    MemoKey key;
    key.genus = genus;
    key.d = d;
    key.e0 = e0;
    key.ends.reserve(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i)
        key.ends.emplace_back(nu[i], psi_tail.empty() ? 0L : psi_tail[i]);
    std::sort(key.ends.begin(), key.ends.end());
    return key;
}

// Thread-safe memo cache with an optional versioned on-disk format:
//   line 1: "leaky-memo-cache v1"
//   then one record per line: canonical key <TAB> numerator <TAB> denominator
// Files with a different version line are ignored, never migrated.
class MemoCache {
public:
    static constexpr const char* kFileHeader = "leaky-memo-cache v1";

    std::optional<Rational> lookup(const MemoKey& key) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

    void store(const MemoKey& key, const Rational& value) {
        std::lock_guard<std::mutex> lock(mutex_);
        values_[key] = value;  // idempotent: values are deterministic
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return values_.size();
    }

    // Returns false when the file is absent or carries a stale version.
    bool load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) return false;
        std::string header;
        if (!std::getline(in, header) || header != kFileHeader) return false;
        std::string line;
        std::lock_guard<std::mutex> lock(mutex_);
        while (std::getline(in, line)) {
            const auto t1 = line.find('\t');
            const auto t2 = line.find('\t', t1 + 1);
            if (t1 == std::string::npos || t2 == std::string::npos) continue;
            MemoKey key;
            if (!parse_key(line.substr(0, t1), key)) continue;
            const Int num(line.substr(t1 + 1, t2 - t1 - 1));
            const Int den(line.substr(t2 + 1));
            if (den == 0) continue;
            values_[key] = Rational(num, den);
        }
        return true;
    }

    bool save_file(const std::string& path) const {
        std::ofstream out(path, std::ios::trunc);
        if (!out) return false;
        out << kFileHeader << "\n";
        std::lock_guard<std::mutex> lock(mutex_);
        for (const auto& [key, value] : values_)
            out << key.canonical_text() << "\t" << numerator(value) << "\t" << denominator(value) << "\n";
        return bool(out);
    }

private:
    static bool parse_key(const std::string& text, MemoKey& key) {
        // g=<g>;d=<d>;e0=<e0>;ends=<nu>:<e>,...
        std::istringstream is(text);
        std::string field;
        int seen = 0;
        while (std::getline(is, field, ';')) {
            const auto eq = field.find('=');
            if (eq == std::string::npos) return false;
            const std::string name = field.substr(0, eq);
            const std::string value = field.substr(eq + 1);
            try {
                if (name == "g") { key.genus = std::stol(value); ++seen; }
                else if (name == "d") { key.d = Int(value); ++seen; }
                else if (name == "e0") { key.e0 = std::stol(value); ++seen; }
                else if (name == "ends") {
                    ++seen;
                    if (value.empty()) continue;
                    std::istringstream es(value);
                    std::string pair;
                    while (std::getline(es, pair, ',')) {
                        const auto colon = pair.find(':');
                        if (colon == std::string::npos) return false;
                        key.ends.emplace_back(Int(pair.substr(0, colon)),
                                              std::stol(pair.substr(colon + 1)));
                    }
                } else return false;
            } catch (const std::exception&) {
                return false;
            }
        }
        return seen == 4;
    }

    mutable std::mutex mutex_;
    std::map<MemoKey, Rational> values_;
};

namespace detail {

// J^m_{e0,0} by the three-point recursion; out-of-range parameters stand
// for empty families and return 0.
inline Rational j00(long m, long e0, const Rational& d, const Rational& k) {
    if (e0 < 0 || m < 2 || e0 > m - 2) return 0;
    Rational value = Rational(m - 1) * (d - Rational(m - 2) * k / 2) * j00(m - 1, e0, d, k);
    if (m - 2 == e0) value += 1;  // Kronecker-delta seed
    return value;
}

inline Rational je0e1(long m, long e0, long e1, const Rational& d, const Rational& nu1,
                      const Rational& k) {
    if (e0 < 0 || e1 <= 0 || m < 3 || e0 + e1 > m - 2) return 0;
    const Rational tail = d - nu1 - k * Rational(m - 1);
    Rational value = (Rational(binomial(m - 1, e1 + 1)) * (k * Rational(e1 + 1) + nu1) +
                      Rational(binomial(m - 2, e1)) * tail) *
                     j00(m - e1 - 1, e0, d, k);
    value += (Rational(binomial(m - 1, 2)) * k + Rational(m - 2) * tail) *
             je0e1(m - 1, e0, e1, d, nu1, k);
    if (m - 2 == e0 + e1) value += Rational(binomial(m - 2, e0));
    return value;
}

}  // namespace detail

// J^m_{e0,e1}(k, d, nu1): the genus-0 invariants with psi-insertions at the
// d-end and at most one nu-end, evaluated by their cut recursions. The
// arguments d, nu1, k may be arbitrary rationals (polynomial evaluation).
inline Rational j_rec(long m, long e0, long e1, const Rational& d, const Rational& nu1,
                      const Rational& k) {
    if (m < 2) throw DomainError("j_rec: m must be >= 2");
    if (e0 < 0 || e1 < 0) throw DomainError("j_rec: psi exponents must be non-negative");
    if (e0 + e1 > m - 2) throw DomainError("j_rec: e0 + e1 must be <= m - 2");
    if (e1 > 0 && m < 3) throw DomainError("j_rec: e1 > 0 requires m >= 3");
    if (e1 == 0) return detail::j00(m, e0, d, k);
    return detail::je0e1(m, e0, e1, d, nu1, k);
}

namespace detail {

Rational h0_rec_impl(const Int& d, const Int& k, const std::vector<Int>& nu,
                     const std::vector<long>& psi, MemoCache* cache);

// One cut step: remove the ends listed in `cut` (indices into nu/psi tail),
// append the replacement end of weight w with no psi-insertion.
inline Rational h0_cut_call(const Int& d, const Int& k, const std::vector<Int>& nu,
                            const std::vector<long>& psi, const std::vector<std::size_t>& cut,
                            const Int& w, MemoCache* cache) {
    if (w <= 0)
        throw DomainError("h0_rec: cut produced a non-positive replacement end weight (k < 0 regime)");
    std::vector<Int> nnu;
    std::vector<long> npsi{psi[0]};
    nnu.reserve(nu.size() - cut.size() + 1);
    for (std::size_t i = 0; i < nu.size(); ++i) {
        if (std::find(cut.begin(), cut.end(), i) != cut.end()) continue;
        nnu.push_back(nu[i]);
        npsi.push_back(psi[i + 1]);
    }
    nnu.push_back(w);
    npsi.push_back(0);
    return h0_rec_impl(d, k, nnu, npsi, cache);
}

inline Rational h0_rec_impl(const Int& d, const Int& k, const std::vector<Int>& nu,
                            const std::vector<long>& psi, MemoCache* cache) {
    const long m = static_cast<long>(nu.size());
    long e_total = 0;
    for (long v : psi) e_total += v;
    const long c = m - 2 - e_total;
    if (c < 0) throw DomainError("h0_rec: |psi| exceeds m - 2");

    if (c == 0) {
        std::vector<long> parts(psi.begin(), psi.end());
        return Rational(multinomial(m - 2, parts));
    }

    MemoKey key;
    if (cache) {
        key = make_memo_key(0, d, psi[0], nu, std::vector<long>(psi.begin() + 1, psi.end()));
        if (auto hit = cache->lookup(key)) return *hit;
    }

    std::vector<std::size_t> carrying, free_ends;
    for (std::size_t i = 0; i < nu.size(); ++i)
        (psi[i + 1] > 0 ? carrying : free_ends).push_back(i);

    Rational total = 0;
    const std::size_t uc = carrying.size();
    for (unsigned mask = 0; mask < (1u << uc); ++mask) {
        std::vector<std::size_t> I;
        long eI = 0;
        Int nuI = 0;
        std::vector<long> eparts;
        for (std::size_t b = 0; b < uc; ++b) {
            if (mask & (1u << b)) {
                I.push_back(carrying[b]);
                eI += psi[carrying[b] + 1];
                eparts.push_back(psi[carrying[b] + 1]);
                nuI += nu[carrying[b]];
            }
        }
        const long jsize = eI + 2 - static_cast<long>(I.size());
        if (jsize < 0 || jsize > static_cast<long>(free_ends.size())) continue;
        const Int mult = multinomial(eI, eparts);

        // iterate over J subsets of the psi-free ends of the required size
        std::vector<std::size_t> pick(static_cast<std::size_t>(jsize));
        std::function<void(std::size_t, std::size_t, Int)> choose =
            [&](std::size_t start, std::size_t depth, Int nuJ) {
                if (depth == pick.size()) {
                    const Int w = nuI + nuJ + Int(eI + 1) * k;
                    std::vector<std::size_t> cut = I;
                    cut.insert(cut.end(), pick.begin(), pick.end());
                    total += Rational(mult) * Rational(w) *
                             h0_cut_call(d, k, nu, psi, cut, w, cache);
                    return;
                }
                for (std::size_t i = start; i < free_ends.size(); ++i) {
                    pick[depth] = free_ends[i];
                    choose(i + 1, depth + 1, nuJ + nu[free_ends[i]]);
                }
            };
        choose(0, 0, Int(0));
    }

    if (cache) cache->store(key, total);
    return total;
}

}  // namespace detail

// H_0((d, -nu), e) by the cut recursion over pairs (I, J) at the last
// vertex; the base case (branch degree 0) is the multinomial coefficient.
// psi has length m + 1 with e_0 first. The leak k is derived from balancing.
inline Rational h0_rec(const Int& d, const std::vector<Int>& nu, const std::vector<long>& psi,
                       MemoCache* cache = nullptr) {
    const long m = static_cast<long>(nu.size());
    if (psi.size() != static_cast<std::size_t>(m + 1))
        throw DomainError("h0_rec: psi must have length m + 1");
    if (m < 2) throw DomainError("h0_rec: need at least two negative ends in genus 0");
    Int nu_sum = 0;
    for (const Int& v : nu) nu_sum += v;
    if ((d - nu_sum) % (m - 1) != 0) throw DomainError("h0_rec: leak is not integral");
    const Int k = (d - nu_sum) / (m - 1);
    return detail::h0_rec_impl(d, k, nu, psi, cache);
}

namespace detail {

inline Rational hg_impl(long g, const Int& d, const Int& k, std::vector<Int> nu, MemoCache* cache) {
    const long m = static_cast<long>(nu.size());

    if (g == 0) {
        // closed-form base case (m-1)! * prod_{j=1}^{m-2} (d - j k/2)
        Rational value = Rational(factorial(m - 1));
        for (long j = 1; j <= m - 2; ++j) value *= Rational(d) - Rational(j) * Rational(k) / 2;
        return value;
    }
    if (k < 0)
        throw DomainError("hg_onepart_rec: k < 0 is outside the supported domain for genus >= 1");

    MemoKey key;
    if (cache) {
        key = make_memo_key(g, d, 0, nu, {});
        if (auto hit = cache->lookup(key)) return *hit;
    }

    Rational total = 0;

    // (1) last vertex carries two markings, edge weight nu_i + nu_j + k
    for (long i = 0; i < m; ++i) {
        for (long j = i + 1; j < m; ++j) {
            const Int w = nu[static_cast<std::size_t>(i)] + nu[static_cast<std::size_t>(j)] + k;
            std::vector<Int> nnu;
            nnu.reserve(nu.size() - 1);
            for (long t = 0; t < m; ++t)
                if (t != i && t != j) nnu.push_back(nu[static_cast<std::size_t>(t)]);
            nnu.push_back(w);
            total += Rational(w) * hg_impl(g, d, k, std::move(nnu), cache);
        }
    }

    // (2) last vertex carries one marking, genus drops by one; the two cut
    // edges have weights a + b = nu_i + k (positive parts; zero parts
    // vanish through the a*b factor)
    for (long i = 0; i < m; ++i) {
        const Int s = nu[static_cast<std::size_t>(i)] + k;
        Rational part = 0;
        for (Int a = 1; a < s; ++a) {
            const Int b = s - a;
            std::vector<Int> nnu;
            nnu.reserve(nu.size() + 1);
            for (long t = 0; t < m; ++t)
                if (t != i) nnu.push_back(nu[static_cast<std::size_t>(t)]);
            nnu.push_back(a);
            nnu.push_back(b);
            part += Rational(a * b) * hg_impl(g - 1, d, k, std::move(nnu), cache);
        }
        total += part / 2;
    }

    // (3) cul-de-sac: local factor -1/24, new end of weight k
    if (k >= 1) {
        std::vector<Int> nnu = nu;
        nnu.push_back(k);
        total -= Rational(k) / 24 * hg_impl(g - 1, d, k, std::move(nnu), cache);
    }

    // (4) three cut edges, genus drops by two; a + b + c = k
    if (g >= 2) {
        for (Int a = 1; a < k; ++a) {
            for (Int b = 1; a + b < k; ++b) {
                const Int c = k - a - b;
                std::vector<Int> nnu = nu;
                nnu.push_back(a);
                nnu.push_back(b);
                nnu.push_back(c);
                total += Rational(a * b * c) / 6 * hg_impl(g - 2, d, k, std::move(nnu), cache);
            }
        }
    }

    if (cache) cache->store(key, total);
    return total;
}

}  // namespace detail

// H_g(d, nu) for one-part profiles without psi-insertions, by the
// four-term cut recursion on 2g - 1 + m. Requires k >= 0 when g >= 1.
inline Rational hg_onepart_rec(long g, const Int& d, const std::vector<Int>& nu,
                               MemoCache* cache = nullptr) {
    if (g < 0) throw DomainError("hg_onepart_rec: genus must be non-negative");
    const long m = static_cast<long>(nu.size());
    const long chi = 2 * g - 1 + m;
    if (chi <= 0) throw DomainError("hg_onepart_rec: 2g - 2 + n must be positive");
    Int nu_sum = 0;
    for (const Int& v : nu) nu_sum += v;
    if ((d - nu_sum) % chi != 0) throw DomainError("hg_onepart_rec: leak is not integral");
    const Int k = (d - nu_sum) / chi;
    return detail::hg_impl(g, d, k, nu, cache);
}

}  // namespace leaky

#endif  // LEAKY_RECURSIONS_HPP
