#ifndef LEAKY_PROFILE_HPP
#define LEAKY_PROFILE_HPP

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leaky/rational.hpp"

namespace leaky {

// The discrete data of a one-part invariant: genus g, the unique positive
// ramification d, negative ramification magnitudes nu_1..nu_m and the
// psi-exponent vector (e_0 at the d-end, e_1..e_m at the nu-ends).
// The leak k is derived from the balancing condition
//   d - sum(nu) = k * (2g - 2 + n),  n = m + 1,
// and is never user supplied.
struct Profile {
    long genus = 0;
    Int d;
    std::vector<Int> nu;
    std::vector<long> psi;  // length m + 1
    Int k;

    std::size_t m() const { return nu.size(); }
    std::size_t n() const { return nu.size() + 1; }
    long psi_total() const { return std::accumulate(psi.begin(), psi.end(), 0L); }
};

struct BranchDegree {
    long value = 0;  // 2g - 3 + n - |e|, always >= 0 for a valid profile
};

inline Profile validate(long genus, Int d, std::vector<Int> nu, std::vector<long> psi) {
    if (genus < 0) throw ValidationError("genus must be non-negative");
    if (d <= 0) throw ValidationError("d must be positive");
    for (const Int& v : nu)
        if (v <= 0) throw ValidationError("every nu entry must be positive");
    const long m = static_cast<long>(nu.size());
    const long n = m + 1;
    if (psi.size() != static_cast<std::size_t>(n))
        throw ValidationError("psi vector must have length m + 1 = " + std::to_string(n));
    long e = 0;
    for (long v : psi) {
        if (v < 0) throw ValidationError("psi entries must be non-negative");
        e += v;
    }
    const long chi = 2 * genus - 2 + n;
    if (chi <= 0) throw ValidationError("2g - 2 + n must be positive");
    if (e > 2 * genus - 3 + n)
        throw ValidationError("|psi| = " + std::to_string(e) + " exceeds 2g - 3 + n = " +
                              std::to_string(2 * genus - 3 + n));
    Int nu_sum = 0;
    for (const Int& v : nu) nu_sum += v;
    const Int imbalance = d - nu_sum;
    if (imbalance % chi != 0)
        throw ValidationError("leak " + imbalance.str() + "/" + std::to_string(chi) + " is not integral");
    Profile p;
    p.genus = genus;
    p.d = std::move(d);
    p.nu = std::move(nu);
    p.psi = std::move(psi);
    p.k = imbalance / chi;
    return p;
}

inline BranchDegree branch_degree(const Profile& p) {
    return BranchDegree{2 * p.genus - 3 + static_cast<long>(p.n()) - p.psi_total()};
}

inline nlohmann::json to_json(const Profile& p) {
    nlohmann::json nus = nlohmann::json::array();
    for (const Int& v : p.nu) nus.push_back(v.str());
    return nlohmann::json{{"genus", p.genus},
                          {"d", p.d.str()},
                          {"nu", nus},
                          {"psi", p.psi},
                          {"k", p.k.str()}};
}

}  // namespace leaky

#endif  // LEAKY_PROFILE_HPP
