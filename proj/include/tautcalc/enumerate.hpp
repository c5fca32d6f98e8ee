#pragma once

#include "tautcalc/canonical.hpp"
#include "tautcalc/stable_graph.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace tautcalc {

namespace detail {

// Incidence item at a vertex: either a leg or one end of an edge.
struct IncidenceItem {
    bool is_leg = false;
    int index = 0;  // leg index or edge index
    int end = 0;    // 0/1, which end of the edge
};

inline std::vector<IncidenceItem> incidences_at(const StableGraph& G, int v) {
    std::vector<IncidenceItem> items;
    for (int i = 0; i < G.num_legs(); ++i)
        if (G.leg[i] == v) items.push_back({true, i, 0});
    for (int e = 0; e < G.num_edges(); ++e) {
        if (G.edges[e].first == v) items.push_back({false, e, 0});
        if (G.edges[e].second == v) items.push_back({false, e, 1});
    }
    return items;
}

}  // namespace detail

// All one-edge degenerations of G, deduplicated by canonical key.  Two moves:
//   - drop one from a positive-genus vertex and add a loop there;
//   - split a vertex into two joined by a new edge, distributing its genus,
//     legs and edge ends over the two halves (only stable results are kept).
inline std::map<std::string, StableGraph> one_step_degenerations(const StableGraph& G) {
    std::map<std::string, StableGraph> out;
    int V = G.num_vertices();
    for (int v = 0; v < V; ++v) {
        if (G.genus[v] >= 1) {
            StableGraph H = G;
            --H.genus[v];
            H.edges.emplace_back(v, v);
            H.normalize();
            StableGraph cf = canonical_form(H);
            std::string key = key_of_canonical(cf);
            out.emplace(std::move(key), std::move(cf));
        }

        auto items = detail::incidences_at(G, v);
        int k = static_cast<int>(items.size());
        int gv = G.genus[v];
        for (int g1 = 0; 2 * g1 <= gv; ++g1) {
            int g2 = gv - g1;
            for (unsigned mask = 0; mask < (1u << k); ++mask) {
                // bit set = item moves to the new vertex (genus g2)
                if (g1 == g2 && k > 0 && (mask & 1u)) continue;  // halve the mirror pairs
                int s2 = __builtin_popcount(mask);
                int s1 = k - s2;
                if (2 * g1 - 2 + s1 + 1 <= 0) continue;
                if (2 * g2 - 2 + s2 + 1 <= 0) continue;

                StableGraph H = G;
                H.genus[v] = g1;
                H.genus.push_back(g2);
                int v2 = V;
                for (int t = 0; t < k; ++t) {
                    if (!((mask >> t) & 1u)) continue;
                    const auto& it = items[t];
                    if (it.is_leg) {
                        H.leg[it.index] = v2;
                    } else {
                        auto& e = H.edges[it.index];
                        if (it.end == 0)
                            e.first = v2;
                        else
                            e.second = v2;
                    }
                }
                H.edges.emplace_back(v, v2);
                H.normalize();
                StableGraph cf = canonical_form(H);
                std::string key = key_of_canonical(cf);
                out.emplace(std::move(key), std::move(cf));
            }
        }
    }
    return out;
}

// Closure of the open stratum under one_step_degenerations, with the cover
// relation recorded.  Strata are indexed in (codimension, key) order, so a
// codimension cap always selects a prefix.
struct StrataUniverse {
    int g = 0;
    int n = 0;
    int built_codim = 0;
    std::vector<StableGraph> graphs;
    std::vector<std::string> keys;
    std::vector<StratumStats> stats;
    std::vector<std::vector<int>> parents;  // indices one codimension up the closure
    std::unordered_map<std::string, int> index;
};

namespace detail {

inline std::shared_ptr<StrataUniverse> build_universe(int g, int n, int cap) {
    auto U = std::make_shared<StrataUniverse>();
    U->g = g;
    U->n = n;
    U->built_codim = cap;

    StableGraph open;
    open.genus = {g};
    open.leg.assign(n, 0);
    std::string okey = canonical_key(open);
    U->graphs.push_back(canonical_form(open));
    U->keys.push_back(okey);
    U->stats.push_back(stratum_stats(open, g, n));
    U->parents.emplace_back();
    U->index.emplace(okey, 0);

    std::vector<int> level{0};
    for (int c = 0; c < cap && !level.empty(); ++c) {
        std::map<std::string, std::pair<StableGraph, std::vector<int>>> next;
        for (int idx : level) {
            for (auto& [key, child] : one_step_degenerations(U->graphs[idx])) {
                auto it = next.find(key);
                if (it == next.end())
                    next.emplace(key, std::make_pair(child, std::vector<int>{idx}));
                else
                    it->second.second.push_back(idx);
            }
        }
        std::vector<int> newlevel;
        newlevel.reserve(next.size());
        for (auto& [key, payload] : next) {
            int id = static_cast<int>(U->graphs.size());
            U->graphs.push_back(std::move(payload.first));
            U->keys.push_back(key);
            U->stats.push_back(stratum_stats(U->graphs.back(), g, n));
            U->parents.push_back(std::move(payload.second));
            U->index.emplace(key, id);
            newlevel.push_back(id);
        }
        level = std::move(newlevel);
    }
    return U;
}

}  // namespace detail

// Memoized universe for a stable (g, n).  max_codim < 0 means the full
// closure (codimension can never exceed 3g-3+n).
inline std::shared_ptr<const StrataUniverse> strata_universe(int g, int n, int max_codim = -1) {
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) {
        std::ostringstream os;
        os << "unstable (g,n) = (" << g << "," << n << ")";
        throw std::invalid_argument(os.str());
    }
    int full = 3 * g - 3 + n;
    int cap = (max_codim < 0) ? full : std::min(max_codim, full);

    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<StrataUniverse>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({g, n});
    if (it == memo.end() || it->second->built_codim < cap) {
        auto built = detail::build_universe(g, n, cap);
        memo[{g, n}] = built;
        return built;
    }
    return it->second;
}

// All strata of codimension <= max_codim (default: everything), in
// (codimension, canonical key) order.
inline std::vector<StableGraph> enumerate_strata(int g, int n,
                                                 std::optional<int> max_codim = std::nullopt) {
    int cap = max_codim ? *max_codim : -1;
    if (max_codim && *max_codim < 0)
        throw std::invalid_argument("enumerate_strata: negative max_codim");
    auto U = strata_universe(g, n, cap);
    std::vector<StableGraph> out;
    int limit = (cap < 0) ? 3 * g - 3 + n : std::min(cap, 3 * g - 3 + n);
    for (size_t i = 0; i < U->graphs.size(); ++i)
        if (U->stats[i].codimension <= limit) out.push_back(U->graphs[i]);
    return out;
}

}  // namespace tautcalc
