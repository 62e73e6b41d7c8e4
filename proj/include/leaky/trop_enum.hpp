#ifndef LEAKY_TROP_ENUM_HPP
#define LEAKY_TROP_ENUM_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leaky/profile.hpp"
#include "leaky/rational.hpp"

namespace leaky {

// A genus-0 one-part cover tree. Internal vertices are indexed 0..V-1 with
// vertex 0 the root; the root's entering edge is the d-end (label 0), every
// other vertex has an entering internal edge from its parent. `ends` holds
// the nu-end labels (1..m) attached at each vertex.
struct CoverTree {
    struct Vertex {
        std::vector<int> ends;
        std::vector<int> children;
        int parent = -1;
    };
    std::vector<Vertex> vertices;

    std::size_t size() const { return vertices.size(); }
};

// A cover is a tree together with a linear extension of its root-to-leaf
// partial order: the positions of the internal vertices along the line.
struct TropicalCover {
    CoverTree tree;
    std::vector<int> order;  // order[i] = vertex placed at position i
};

struct CoverMultiplicity {
    Int edge_product;        // product of internal edge weights
    Rational vertex_product; // product of (val(v)-3)!/prod e_i!
    Rational total;          // edge_product * vertex_product (Aut is trivial)
};

namespace detail {

// Sum of nu over the ends in the subtree rooted at v, and their count.
inline void subtree_ends(const CoverTree& t, int v, Int& nu_sum, long& count,
                         const std::vector<Int>& nu) {
    for (int e : t.vertices[v].ends) {
        nu_sum += nu[static_cast<std::size_t>(e) - 1];
        ++count;
    }
    for (int c : t.vertices[v].children) subtree_ends(t, c, nu_sum, count, nu);
}

}  // namespace detail

// Weight of the entering edge of vertex v: sum of the nu over the ends in
// the subtree below plus k*(L-1) where L is the number of such ends. For
// the root this reproduces d itself. May be non-positive; the enumerator
// filters trees containing such an edge.
inline Int edge_weight(const CoverTree& t, int v, const Profile& p) {
    Int nu_sum = 0;
    long count = 0;
    detail::subtree_ends(t, v, nu_sum, count, p.nu);
    return nu_sum + p.k * (count - 1);
}

// Weights of all internal edges, indexed by the non-root vertex they enter.
inline std::vector<Int> internal_edge_weights(const CoverTree& t, const Profile& p) {
    std::vector<Int> w(t.size());
    for (std::size_t v = 1; v < t.size(); ++v) w[v] = edge_weight(t, static_cast<int>(v), p);
    return w;
}

inline long vertex_valency(const CoverTree& t, int v) {
    // one entering edge (the d-end for the root), attached ends, children
    return 1 + static_cast<long>(t.vertices[v].ends.size()) +
           static_cast<long>(t.vertices[v].children.size());
}

inline CoverMultiplicity cover_multiplicity(const CoverTree& t, const Profile& p) {
    CoverMultiplicity m;
    m.edge_product = 1;
    for (std::size_t v = 1; v < t.size(); ++v) m.edge_product *= edge_weight(t, static_cast<int>(v), p);
    m.vertex_product = 1;
    for (std::size_t v = 0; v < t.size(); ++v) {
        Rational f = Rational(factorial(vertex_valency(t, static_cast<int>(v)) - 3));
        if (v == 0) f /= factorial(p.psi[0]);
        for (int e : t.vertices[v].ends) f /= factorial(p.psi[static_cast<std::size_t>(e)]);
        m.vertex_product *= f;
    }
    m.total = Rational(m.edge_product) * m.vertex_product;
    return m;
}

inline CoverMultiplicity cover_multiplicity(const TropicalCover& c, const Profile& p) {
    return cover_multiplicity(c.tree, p);
}

namespace detail {

// Fragment of a cover tree rooted at local index 0.
using Fragment = CoverTree;

inline Fragment graft(std::vector<int> root_ends, const std::vector<Fragment>& subtrees) {
    Fragment f;
    f.vertices.push_back({std::move(root_ends), {}, -1});
    for (const Fragment& s : subtrees) {
        const int offset = static_cast<int>(f.vertices.size());
        f.vertices[0].children.push_back(offset);
        for (const auto& v : s.vertices) {
            CoverTree::Vertex w = v;
            for (int& c : w.children) c += offset;
            w.parent = (v.parent == -1) ? 0 : v.parent + offset;
            f.vertices.push_back(std::move(w));
        }
    }
    return f;
}

// Partitions of `items` into exactly `blocks` unordered non-empty blocks
// (restricted-growth enumeration, each set partition produced once).
inline void for_each_set_partition(const std::vector<int>& items, int blocks,
                                   const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    const int n = static_cast<int>(items.size());
    if (blocks == 0) {
        if (n == 0) fn({});
        return;
    }
    if (n < blocks) return;
    std::vector<std::vector<int>> part;
    std::function<void(int)> rec = [&](int i) {
        if (n - i < blocks - static_cast<int>(part.size())) return;  // not enough items left
        if (i == n) {
            if (static_cast<int>(part.size()) == blocks) fn(part);
            return;
        }
        const std::size_t open = part.size();  // part grows and shrinks in recursion
        for (std::size_t b = 0; b < open; ++b) {
            part[b].push_back(items[i]);
            rec(i + 1);
            part[b].pop_back();
        }
        if (static_cast<int>(part.size()) < blocks) {
            part.push_back({items[i]});
            rec(i + 1);
            part.pop_back();
        }
    };
    rec(0);
    (void)n;
}

// All fragments whose root is entered from the left and whose end set is
// exactly `ends`; `extra_psi` is e_0 when the fragment root is the global
// root (the d-end counts into its psi-condition).
inline std::vector<Fragment> enumerate_fragments(const std::vector<int>& ends, const Profile& p,
                                                 long extra_psi) {
    std::vector<Fragment> result;
    const int n = static_cast<int>(ends.size());
    // choose the subset of `ends` attached directly at the root vertex
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> here;
        std::vector<int> below;
        long psi_here = extra_psi;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                here.push_back(ends[static_cast<std::size_t>(i)]);
                psi_here += p.psi[static_cast<std::size_t>(ends[static_cast<std::size_t>(i)])];
            } else {
                below.push_back(ends[static_cast<std::size_t>(i)]);
            }
        }
        // psi-condition fixes the number of children:
        //   val = 1 + |here| + children,  sum psi = val - 3
        const long children = 2 + psi_here - static_cast<long>(here.size());
        if (children < 0) continue;
        if (children == 0) {
            if (below.empty()) result.push_back(graft(here, {}));
            continue;
        }
        if (below.empty()) continue;  // each subtree must carry at least one end
        for_each_set_partition(below, static_cast<int>(children),
                               [&](const std::vector<std::vector<int>>& blocks) {
            // cartesian product of the fragment choices per block
            std::vector<std::vector<Fragment>> choices;
            choices.reserve(blocks.size());
            for (const auto& b : blocks) {
                choices.push_back(enumerate_fragments(b, p, 0));
                if (choices.back().empty()) return;
            }
            std::vector<std::size_t> idx(blocks.size(), 0);
            for (;;) {
                std::vector<Fragment> pick;
                pick.reserve(blocks.size());
                for (std::size_t j = 0; j < blocks.size(); ++j) pick.push_back(choices[j][idx[j]]);
                result.push_back(graft(here, pick));
                std::size_t j = 0;
                while (j < blocks.size() && ++idx[j] == choices[j].size()) idx[j++] = 0;
                if (j == blocks.size()) break;
            }
        });
    }
    return result;
}

inline Int subtree_size(const CoverTree& t, int v) {
    Int s = 1;
    for (int c : t.vertices[v].children) s += subtree_size(t, c);
    return s;
}

}  // namespace detail

// All cover trees for a validated genus-0 profile, positive-weight filtered.
// Trees whose psi-conditions cannot be met yield an empty list.
inline std::vector<CoverTree> enumerate_trees(const Profile& p) {
    if (p.genus != 0) throw DomainError("enumerate_trees: genus must be 0");
    std::vector<int> ends(p.m());
    std::iota(ends.begin(), ends.end(), 1);
    std::vector<CoverTree> trees = detail::enumerate_fragments(ends, p, p.psi[0]);
    std::vector<CoverTree> kept;
    for (CoverTree& t : trees) {
        bool positive = true;
        for (std::size_t v = 1; v < t.size() && positive; ++v)
            positive = edge_weight(t, static_cast<int>(v), p) > 0;
        if (!positive) continue;
        // every child subtree carries at least one labeled end, so sibling
        // subtrees are distinct and Aut(pi) is trivial
#ifndef NDEBUG
        for (std::size_t v = 1; v < t.size(); ++v) {
            Int s = 0;
            long cnt = 0;
            detail::subtree_ends(t, static_cast<int>(v), s, cnt, p.nu);
            assert(cnt >= 1);
        }
#endif
        kept.push_back(std::move(t));
    }
    return kept;
}

// Number of linear extensions of the rooted-forest order: V! / prod of
// subtree sizes (the hook-length formula for forests).
inline Int linear_extension_count(const CoverTree& t) {
    Int num = factorial(static_cast<long>(t.size()));
    for (std::size_t v = 0; v < t.size(); ++v) num /= detail::subtree_size(t, static_cast<int>(v));
    return num;
}

// Streams every linear extension (vertex placed only after its parent).
inline void for_each_linear_extension(const CoverTree& t,
                                      const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> order;
    std::vector<int> available{0};
    std::function<void()> rec = [&]() {
        if (order.size() == t.size()) {
            fn(order);
            return;
        }
        for (std::size_t i = 0; i < available.size(); ++i) {
            const int v = available[static_cast<std::size_t>(i)];
            std::vector<int> next = available;
            next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
            for (int c : t.vertices[static_cast<std::size_t>(v)].children) next.push_back(c);
            order.push_back(v);
            std::swap(available, next);
            rec();
            std::swap(available, next);
            order.pop_back();
        }
    };
    rec();
}

// Streams every cover (tree, extension) of the profile, one at a time.
inline void for_each_cover(const Profile& p, const std::function<void(const TropicalCover&)>& fn) {
    for (const CoverTree& t : enumerate_trees(p)) {
        for_each_linear_extension(t, [&](const std::vector<int>& order) {
            fn(TropicalCover{t, order});
        });
    }
}

// H_0((d,-nu), e) as the weighted count of tropical covers. Multiplicity is
// extension-independent, so the sum is factorized over trees.
inline Rational tropical_count(const Profile& p) {
    if (p.genus != 0) throw DomainError("tropical_count: genus must be 0");
    Rational total = 0;
    for (const CoverTree& t : enumerate_trees(p))
        total += Rational(linear_extension_count(t)) * cover_multiplicity(t, p).total;
    return total;
}

inline nlohmann::json to_json(const TropicalCover& c, const Profile& p) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : c.tree.vertices)
        verts.push_back(nlohmann::json{{"ends", v.ends}, {"children", v.children}});
    nlohmann::json weights = nlohmann::json::array();
    for (std::size_t v = 1; v < c.tree.size(); ++v)
        weights.push_back(nlohmann::json{{"vertex", v},
                                         {"weight", edge_weight(c.tree, static_cast<int>(v), p).str()}});
    const CoverMultiplicity m = cover_multiplicity(c.tree, p);
    return nlohmann::json{{"tree", verts},
                          {"order", c.order},
                          {"edgeWeights", weights},
                          {"multiplicity", {{"num", numerator(m.total).str()},
                                            {"den", denominator(m.total).str()}}}};
}

inline std::string to_dot(const TropicalCover& c, const Profile& p) {
    std::string out = "digraph cover {\n  rankdir=LR;\n";
    for (std::size_t v = 0; v < c.tree.size(); ++v) {
        std::string label = "v" + std::to_string(v) + " [";
        if (v == 0) label += "d";
        for (int e : c.tree.vertices[v].ends) {
            if (label.back() != '[') label += ",";
            label += "nu" + std::to_string(e);
        }
        label += "]";
        out += "  v" + std::to_string(v) + " [label=\"" + label + "\"];\n";
    }
    for (std::size_t v = 1; v < c.tree.size(); ++v)
        out += "  v" + std::to_string(static_cast<std::size_t>(c.tree.vertices[v].parent)) + " -> v" +
               std::to_string(v) + " [label=\"" + edge_weight(c.tree, static_cast<int>(v), p).str() +
               "\"];\n";
    out += "}\n";
    return out;
}

}  // namespace leaky

#endif  // LEAKY_TROP_ENUM_HPP
