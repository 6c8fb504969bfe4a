#include "core/isomorphism.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace exg {

namespace {

constexpr int kMaxVertices = 16;

// Degree together with the sorted degrees of the neighborhood; invariant
// under isomorphism, so mismatched profiles prune candidate pairs early.
std::vector<std::vector<int>> degree_profiles(const ExclusivityGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
    std::vector<std::vector<int>> prof(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        auto& p = prof[static_cast<std::size_t>(v)];
        p.push_back(deg[static_cast<std::size_t>(v)]);
        for (int u = 0; u < n; ++u) {
            if (u != v && g.adjacent(u, v)) p.push_back(deg[static_cast<std::size_t>(u)]);
        }
        std::sort(p.begin() + 1, p.end());
    }
    return prof;
}

struct Matcher {
    const ExclusivityGraph& g1;
    const ExclusivityGraph& g2;
    std::vector<std::vector<int>> prof1, prof2;
    std::vector<int> order;    // vertices of g1, most-constrained first
    std::vector<int> mapping;  // g1 vertex -> g2 vertex, -1 while unassigned
    std::vector<bool> used;    // g2 vertices already taken

    bool extend(std::size_t pos) {
        if (pos == order.size()) return true;
        const int u = order[pos];
        for (int v = 0; v < g2.vertex_count(); ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            if (prof1[static_cast<std::size_t>(u)] != prof2[static_cast<std::size_t>(v)]) {
                continue;
            }
            bool ok = true;
            for (std::size_t prev = 0; prev < pos; ++prev) {
                const int pu = order[prev];
                if (g1.adjacent(u, pu) !=
                    g2.adjacent(v, mapping[static_cast<std::size_t>(pu)])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            mapping[static_cast<std::size_t>(u)] = v;
            used[static_cast<std::size_t>(v)] = true;
            if (extend(pos + 1)) return true;
            mapping[static_cast<std::size_t>(u)] = -1;
            used[static_cast<std::size_t>(v)] = false;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<int>> find_isomorphism(const ExclusivityGraph& g1,
                                                 const ExclusivityGraph& g2) {
    require(g1.vertex_count() <= kMaxVertices && g2.vertex_count() <= kMaxVertices,
            ErrorCode::cap_exceeded,
            "exhaustive isomorphism supports at most 16 vertices");
    const int n = g1.vertex_count();
    if (n != g2.vertex_count() || g1.edge_count() != g2.edge_count()) {
        return std::nullopt;
    }
    if (n == 0) return std::vector<int>{};

    Matcher m{g1, g2, degree_profiles(g1), degree_profiles(g2), {}, {}, {}};
    {
        auto s1 = m.prof1;
        auto s2 = m.prof2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return std::nullopt;
    }

    m.order.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) m.order[static_cast<std::size_t>(v)] = v;
    std::sort(m.order.begin(), m.order.end(), [&](int a, int b) {
        const int da = g1.degree(a);
        const int db = g1.degree(b);
        if (da != db) return da > db;
        return a < b;
    });
    m.mapping.assign(static_cast<std::size_t>(n), -1);
    m.used.assign(static_cast<std::size_t>(n), false);

    if (m.extend(0)) return m.mapping;
    return std::nullopt;
}

bool are_isomorphic(const ExclusivityGraph& g1, const ExclusivityGraph& g2) {
    return find_isomorphism(g1, g2).has_value();
}

} // namespace exg
