#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tautcalc {

// Dual graph of a boundary stratum.  Vertices carry a geometric genus >= 0.
// Edges are unordered pairs of vertex indices (loops repeat the index);
// parallel edges are listed with multiplicity.  Marking labels are 1-based:
// label i+1 sits at vertex leg[i].  Total (arithmetic) genus is
// sum(genus) + #edges - #vertices + 1, and codimension equals #edges.
struct StableGraph {
    std::vector<int> genus;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> leg;

    int num_vertices() const { return static_cast<int>(genus.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_legs() const { return static_cast<int>(leg.size()); }

    // Edge pairs stored with first <= second, list sorted lexicographically.
    void normalize() {
        for (auto& e : edges)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(edges.begin(), edges.end());
    }

    int loops_at(int v) const {
        int c = 0;
        for (const auto& e : edges)
            if (e.first == v && e.second == v) ++c;
        return c;
    }

    // Legs plus edge ends; a loop contributes two.
    int valence(int v) const {
        int c = 0;
        for (int l : leg)
            if (l == v) ++c;
        for (const auto& e : edges) {
            if (e.first == v) ++c;
            if (e.second == v) ++c;
        }
        return c;
    }

    int total_genus() const {
        int s = 0;
        for (int gv : genus) s += gv;
        return s + num_edges() - num_vertices() + 1;
    }

    bool operator==(const StableGraph&) const = default;
};

struct StratumStats {
    int codimension = 0;
    int dimension = 0;
    int genus_zero_count = 0;
};

namespace detail {
struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
    int components() {
        int c = 0;
        for (int i = 0; i < static_cast<int>(p.size()); ++i)
            if (find(i) == i) ++c;
        return c;
    }
};
}  // namespace detail

inline bool is_connected(const StableGraph& G) {
    int V = G.num_vertices();
    if (V == 0) return false;
    detail::Dsu dsu(V);
    for (const auto& e : G.edges) dsu.unite(e.first, e.second);
    return dsu.components() == 1;
}

// Collects every violated invariant of G as a stratum graph for the ambient
// space with the given genus and marking count.  Empty result means valid.
inline std::vector<std::string> validate(const StableGraph& G, int g, int n) {
    std::vector<std::string> errs;
    std::ostringstream os;
    auto emit = [&](const std::ostringstream& m) { errs.push_back(m.str()); };

    int V = G.num_vertices();
    if (V == 0) {
        errs.push_back("graph has no vertices");
        return errs;
    }
    bool structural_ok = true;
    for (int v = 0; v < V; ++v) {
        if (G.genus[v] < 0) {
            std::ostringstream m;
            m << "vertex " << v << " has negative genus " << G.genus[v];
            emit(m);
        }
    }
    for (const auto& e : G.edges) {
        if (e.first < 0 || e.first >= V || e.second < 0 || e.second >= V) {
            std::ostringstream m;
            m << "edge (" << e.first << "," << e.second << ") references an invalid vertex";
            emit(m);
            structural_ok = false;
        }
    }
    if (G.num_legs() != n) {
        std::ostringstream m;
        m << "expected " << n << " legs, found " << G.num_legs();
        emit(m);
    }
    for (int i = 0; i < G.num_legs(); ++i) {
        if (G.leg[i] < 0 || G.leg[i] >= V) {
            std::ostringstream m;
            m << "leg " << (i + 1) << " attached to invalid vertex " << G.leg[i];
            emit(m);
            structural_ok = false;
        }
    }
    if (!structural_ok) return errs;

    if (!is_connected(G)) errs.push_back("graph is disconnected");
    for (int v = 0; v < V; ++v) {
        int val = G.valence(v);
        if (2 * G.genus[v] - 2 + val <= 0) {
            std::ostringstream m;
            m << "unstable vertex " << v << " (genus " << G.genus[v] << ", valence " << val
              << ")";
            emit(m);
        }
    }
    if (G.total_genus() != g) {
        std::ostringstream m;
        m << "genus mismatch: graph has total genus " << G.total_genus()
          << ", ambient genus is " << g;
        emit(m);
    }
    (void)os;
    return errs;
}

inline bool is_valid(const StableGraph& G, int g, int n) { return validate(G, g, n).empty(); }

inline StratumStats stratum_stats(const StableGraph& G, int g, int n) {
    StratumStats s;
    s.codimension = G.num_edges();
    s.dimension = 3 * g - 3 + n - G.num_edges();
    s.genus_zero_count = static_cast<int>(std::count(G.genus.begin(), G.genus.end(), 0));
    return s;
}

}  // namespace tautcalc
