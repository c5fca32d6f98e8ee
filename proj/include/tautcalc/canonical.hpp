#pragma once

#include "tautcalc/rational.hpp"
#include "tautcalc/stable_graph.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace tautcalc {

namespace detail {

struct CanonContext {
    int V = 0;
    std::vector<int> genus;
    std::vector<std::vector<int>> mult;     // V x V; [v][v] counts loops once
    std::vector<std::vector<int>> legs_at;  // sorted labels per vertex
    std::vector<int> seed_order;            // heuristic candidate ordering
};

inline CanonContext make_canon_context(const StableGraph& G) {
    CanonContext C;
    C.V = G.num_vertices();
    C.genus = G.genus;
    C.mult.assign(C.V, std::vector<int>(C.V, 0));
    for (const auto& e : G.edges) {
        if (e.first == e.second)
            ++C.mult[e.first][e.first];
        else {
            ++C.mult[e.first][e.second];
            ++C.mult[e.second][e.first];
        }
    }
    C.legs_at.assign(C.V, {});
    for (int i = 0; i < G.num_legs(); ++i) C.legs_at[G.leg[i]].push_back(i + 1);
    C.seed_order.resize(C.V);
    for (int v = 0; v < C.V; ++v) C.seed_order[v] = v;
    std::sort(C.seed_order.begin(), C.seed_order.end(), [&](int a, int b) {
        if (C.genus[a] != C.genus[b]) return C.genus[a] < C.genus[b];
        if (C.legs_at[a].size() != C.legs_at[b].size())
            return C.legs_at[a].size() < C.legs_at[b].size();
        if (C.legs_at[a] != C.legs_at[b]) return C.legs_at[a] < C.legs_at[b];
        return a < b;
    });
    return C;
}

// Finds the vertex ordering minimizing the flattened record stream
//   record(u at position p) = [genus, #legs, legs..., loops,
//                              mult(u, order[0]), ..., mult(u, order[p-1])].
// Records are self-delimiting (counts precede variable parts), so streams of
// equal prefixes align and elementwise comparison is well defined.
struct CanonSearch {
    const CanonContext& C;
    std::vector<int> order, best_order;
    std::vector<int> stream, best;
    std::vector<char> used;
    bool have_best = false;

    explicit CanonSearch(const CanonContext& c) : C(c), used(c.V, 0) {
        order.reserve(c.V);
        stream.reserve(16 * (c.V + 1));
    }

    void append_record(int u) {
        stream.push_back(C.genus[u]);
        stream.push_back(static_cast<int>(C.legs_at[u].size()));
        for (int l : C.legs_at[u]) stream.push_back(l);
        stream.push_back(C.mult[u][u]);
        for (int q : order) stream.push_back(C.mult[u][q]);
    }

    void dfs(int pos, bool strictly_less) {
        if (pos == C.V) {
            // Full comparison: the prefix flag alone can be stale once best
            // has been replaced by another leaf of the same subtree.
            if (!have_best || std::lexicographical_compare(stream.begin(), stream.end(),
                                                           best.begin(), best.end())) {
                best = stream;
                best_order = order;
                have_best = true;
            }
            return;
        }
        for (int idx = 0; idx < C.V; ++idx) {
            int u = C.seed_order[idx];
            if (used[u]) continue;
            size_t base = stream.size();
            append_record(u);
            bool next_less = strictly_less;
            if (have_best && !strictly_less) {
                int cmp = 0;
                for (size_t i = base; i < stream.size(); ++i) {
                    int b = (i < best.size()) ? best[i] : -1;
                    if (stream[i] != b) {
                        cmp = (stream[i] < b) ? -1 : 1;
                        break;
                    }
                }
                if (cmp > 0) {
                    stream.resize(base);
                    continue;
                }
                if (cmp < 0) next_less = true;
            }
            used[u] = 1;
            order.push_back(u);
            dfs(pos + 1, next_less);
            order.pop_back();
            used[u] = 0;
            stream.resize(base);
        }
    }
};

}  // namespace detail

// Rewrites G with vertices renumbered so that order[p] becomes vertex p.
inline StableGraph apply_vertex_order(const StableGraph& G, const std::vector<int>& order) {
    int V = G.num_vertices();
    std::vector<int> pos(V, 0);
    for (int p = 0; p < V; ++p) pos[order[p]] = p;
    StableGraph H;
    H.genus.resize(V);
    for (int v = 0; v < V; ++v) H.genus[pos[v]] = G.genus[v];
    H.edges.reserve(G.edges.size());
    for (const auto& e : G.edges) H.edges.emplace_back(pos[e.first], pos[e.second]);
    H.leg.reserve(G.leg.size());
    for (int l : G.leg) H.leg.push_back(pos[l]);
    H.normalize();
    return H;
}

// Test helper: perm[old] = new vertex index.
inline StableGraph relabel_vertices(const StableGraph& G, const std::vector<int>& perm) {
    std::vector<int> order(G.num_vertices());
    for (int v = 0; v < G.num_vertices(); ++v) order[perm[v]] = v;
    return apply_vertex_order(G, order);
}

// Isomorphism-invariant representative: equal for relabeled copies of the
// same stratum, distinct otherwise.
inline StableGraph canonical_form(const StableGraph& G) {
    detail::CanonContext C = detail::make_canon_context(G);
    detail::CanonSearch S(C);
    S.dfs(0, false);
    return apply_vertex_order(G, S.best_order);
}

// Renders the key of a graph already in canonical form (no search).
inline std::string key_of_canonical(const StableGraph& H) {
    std::ostringstream os;
    os << H.total_genus() << ";" << H.num_legs() << ";V=(";
    for (int v = 0; v < H.num_vertices(); ++v) {
        if (v) os << ",";
        os << H.genus[v];
    }
    os << ");E=(";
    for (size_t i = 0; i < H.edges.size(); ++i) {
        if (i) os << ",";
        os << H.edges[i].first << "-" << H.edges[i].second;
    }
    os << ");L=(";
    for (int i = 0; i < H.num_legs(); ++i) {
        if (i) os << ",";
        os << (i + 1) << ":" << H.leg[i];
    }
    os << ")";
    return os.str();
}

// "g;n;V=(g_0,...);E=(a-b,...);L=(1:v,...)" rendered from the canonical form.
inline std::string canonical_key(const StableGraph& G) {
    return key_of_canonical(canonical_form(G));
}

// Automorphisms in the half-edge sense, with legs fixed pointwise:
//   (#genus/leg/adjacency preserving vertex permutations)
//   * prod_{u<v} mult(u,v)!  * prod_v 2^{loops_v} loops_v!.
inline Int automorphism_count(const StableGraph& G) {
    detail::CanonContext C = detail::make_canon_context(G);
    int V = C.V;
    std::vector<int> img(V, -1);
    std::vector<char> used(V, 0);
    long long nperm = 0;
    auto dfs = [&](auto&& self, int v) -> void {
        if (v == V) {
            ++nperm;
            return;
        }
        for (int w = 0; w < V; ++w) {
            if (used[w]) continue;
            if (C.genus[w] != C.genus[v]) continue;
            if (C.legs_at[w] != C.legs_at[v]) continue;
            if (C.mult[w][w] != C.mult[v][v]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (C.mult[w][img[u]] != C.mult[v][u]) ok = false;
            if (!ok) continue;
            img[v] = w;
            used[w] = 1;
            self(self, v + 1);
            used[w] = 0;
            img[v] = -1;
        }
    };
    dfs(dfs, 0);
    Int total = nperm;
    for (int u = 0; u < V; ++u)
        for (int v = u + 1; v < V; ++v) total *= factorial(C.mult[u][v]);
    for (int v = 0; v < V; ++v)
        total *= factorial(C.mult[v][v]) * int_pow(2, C.mult[v][v]);
    return total;
}

}  // namespace tautcalc
