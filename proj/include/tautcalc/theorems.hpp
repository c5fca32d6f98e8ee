#pragma once

#include "tautcalc/enumerate.hpp"
#include "tautcalc/intersection.hpp"
#include "tautcalc/stable_graph.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tautcalc {

// Strata whose classes can support a class of codimension i: those with at
// least i - g + 1 genus-zero vertices.  When the threshold is <= 0 every
// stratum qualifies.  A qualifying stratum is flagged maximal when none of
// its one-edge undegenerations qualifies.
struct SupportStratum {
    StableGraph graph;
    bool maximal = false;
};

inline std::vector<SupportStratum> theorem_star_support(int g, int n, int i) {
    if (i < 0) throw std::invalid_argument("theorem_star_support: negative codimension");
    auto U = strata_universe(g, n);
    int threshold = i - g + 1;
    std::vector<char> qualifies(U->graphs.size(), 0);
    for (size_t s = 0; s < U->graphs.size(); ++s)
        qualifies[s] = (U->stats[s].genus_zero_count >= threshold) ? 1 : 0;
    std::vector<SupportStratum> out;
    for (size_t s = 0; s < U->graphs.size(); ++s) {
        if (!qualifies[s]) continue;
        bool maximal = true;
        for (int p : U->parents[s])
            if (qualifies[p]) {
                maximal = false;
                break;
            }
        out.push_back({U->graphs[s], maximal});
    }
    return out;
}

// Two-sided dimension band: strata that can carry a nonzero piece in
// dimension j.  With per-vertex contributions over the stratum's vertices,
//   sum_k (2 g_k - 2 + n_k - [g_k = 0])  <=  j  <=  stratum dimension.
inline std::vector<StableGraph> impcor_band(int g, int n, int j) {
    if (j < 0 || j > 3 * g - 3 + n)
        throw std::invalid_argument("impcor_band: dimension out of range 0..3g-3+n");
    auto U = strata_universe(g, n);
    std::vector<StableGraph> out;
    for (size_t s = 0; s < U->graphs.size(); ++s) {
        const StableGraph& G = U->graphs[s];
        if (U->stats[s].dimension < j) continue;
        long lower = 0;
        for (int v = 0; v < G.num_vertices(); ++v) {
            int gv = G.genus[v];
            lower += 2 * gv - 2 + G.valence(v) - (gv == 0 ? 1 : 0);
        }
        if (lower <= j) out.push_back(G);
    }
    return out;
}

enum class SocleVariant { full, compact_type, rational_tails };

inline SocleVariant parse_socle_variant(const std::string& s) {
    if (s == "full") return SocleVariant::full;
    if (s == "compact_type") return SocleVariant::compact_type;
    if (s == "rational_tails") return SocleVariant::rational_tails;
    throw std::invalid_argument("unknown socle variant '" + s + "'");
}

// Strata generating the top nonvanishing graded piece:
//   full:           dimension-0 strata (2g-2+n trivalent genus-0 vertices);
//   compact_type:   loop-free, g genus-1 leaves on a trivalent genus-0 tree;
//   rational_tails: one genus-g vertex of valence 1 on a trivalent genus-0
//                   tree carrying all the legs (g >= 1).
inline std::vector<StableGraph> socle_strata(SocleVariant variant, int g, int n) {
    if (variant == SocleVariant::rational_tails && g < 1)
        throw std::invalid_argument("socle_strata: rational_tails needs g >= 1");
    auto U = strata_universe(g, n);
    std::vector<StableGraph> out;
    for (size_t s = 0; s < U->graphs.size(); ++s) {
        const StableGraph& G = U->graphs[s];
        bool keep = false;
        switch (variant) {
            case SocleVariant::full:
                keep = (U->stats[s].dimension == 0);
                break;
            case SocleVariant::compact_type: {
                if (G.num_edges() != G.num_vertices() - 1) break;  // loop-free tree
                int g0 = 0, g1 = 0;
                bool ok = true;
                for (int v = 0; v < G.num_vertices() && ok; ++v) {
                    int gv = G.genus[v];
                    int val = G.valence(v);
                    if (gv == 0) {
                        ++g0;
                        ok = (val == 3);
                    } else if (gv == 1) {
                        ++g1;
                        ok = (val == 1);
                    } else {
                        ok = false;
                    }
                }
                keep = ok && g1 == g && g0 == g - 2 + n;
                break;
            }
            case SocleVariant::rational_tails: {
                if (G.num_edges() != G.num_vertices() - 1) break;
                int gcount = 0, g0 = 0;
                bool ok = true;
                for (int v = 0; v < G.num_vertices() && ok; ++v) {
                    int gv = G.genus[v];
                    int val = G.valence(v);
                    if (gv == g) {
                        ++gcount;
                        ok = (val == 1);
                    } else if (gv == 0) {
                        ++g0;
                        ok = (val == 3);
                    } else {
                        ok = false;
                    }
                }
                keep = ok && gcount == 1;
                break;
            }
        }
        if (keep) out.push_back(G);
    }
    return out;
}

// Evaluation of the compact-type socle: the product of g one-point genus-1
// integrals, (1/24)^g.
inline Rational socle_integral_ct(int g) {
    if (g < 0) throw std::invalid_argument("socle_integral_ct: negative genus");
    Rational r = 1;
    for (int i = 0; i < g; ++i) r *= Rational(1, 24);
    return r;
}

enum class GeneratorKind { boundary_stratum, psi1_on_factor, unknown_flag };

inline const char* generator_kind_name(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::boundary_stratum: return "boundary_stratum";
        case GeneratorKind::psi1_on_factor: return "psi1_on_factor";
        case GeneratorKind::unknown_flag: return "unknown_flag";
    }
    return "?";
}

struct GeneratorDescriptor {
    GeneratorKind kind = GeneratorKind::boundary_stratum;
    StableGraph stratum;
    std::optional<int> decorated_vertex;
    std::string note;
};

// Generating set for the dimension-j graded piece, valid for j <= 6:
//   - every band stratum as a boundary generator;
//   - for j in {3,4,5}, one psi_1 decoration on each genus-2 vertex of
//     valence 1 occurring in a band stratum;
//   - for j = 6, an unknown flag whenever a band stratum has a genus-3
//     vertex of valence 2 (that graded piece is not fully computed).
inline std::vector<GeneratorDescriptor> lowdim_generators(int g, int n, int j) {
    if (j > 6)
        throw std::domain_error(
            "lowdim_generators: no generator classification available for dimension > 6");
    auto band = impcor_band(g, n, j);
    std::vector<GeneratorDescriptor> out;
    for (const auto& G : band) {
        GeneratorDescriptor d;
        d.kind = GeneratorKind::boundary_stratum;
        d.stratum = G;
        if (j == 2) {
            for (int v = 0; v < G.num_vertices(); ++v)
                if (G.genus[v] == 2) {
                    d.note = "divisor classes on a genus-2 factor reduce to boundary classes";
                    break;
                }
        }
        out.push_back(std::move(d));
    }
    if (j >= 3 && j <= 5) {
        for (const auto& G : band) {
            for (int v = 0; v < G.num_vertices(); ++v) {
                if (G.genus[v] == 2 && G.valence(v) == 1) {
                    GeneratorDescriptor d;
                    d.kind = GeneratorKind::psi1_on_factor;
                    d.stratum = G;
                    d.decorated_vertex = v;
                    d.note = "nonboundary generator: psi_1 on the genus-2 factor";
                    out.push_back(std::move(d));
                }
            }
        }
    }
    if (j == 6) {
        for (const auto& G : band) {
            for (int v = 0; v < G.num_vertices(); ++v) {
                if (G.genus[v] == 3 && G.valence(v) == 2) {
                    GeneratorDescriptor d;
                    d.kind = GeneratorKind::unknown_flag;
                    d.stratum = G;
                    d.note = "A^2(Mbar_{3,2}) has not yet been computed";
                    out.push_back(std::move(d));
                    break;
                }
            }
        }
    }
    return out;
}

enum class DiazVariant { s_leq_s, rational_tails, compact_type };

inline DiazVariant parse_diaz_variant(const std::string& s) {
    if (s == "s_leq_s" || s == "S_leq_s") return DiazVariant::s_leq_s;
    if (s == "rational_tails") return DiazVariant::rational_tails;
    if (s == "compact_type") return DiazVariant::compact_type;
    throw std::invalid_argument("unknown diaz variant '" + s + "'");
}

// Upper bounds for the dimension of a complete subvariety:
//   s_leq_s:        s + g - 1   (inside the locus of at most s branch values)
//   rational_tails: g - 2 + n   (n >= 1)
//   compact_type:   2g - 3 + n
inline long diaz_bound(DiazVariant variant, int g, int n, std::optional<int> s) {
    if (g < 0) throw std::invalid_argument("diaz_bound: negative genus");
    switch (variant) {
        case DiazVariant::s_leq_s:
            if (!s) throw std::invalid_argument("diaz_bound: variant s_leq_s needs s");
            if (*s < 0) throw std::invalid_argument("diaz_bound: negative s");
            return static_cast<long>(*s) + g - 1;
        case DiazVariant::rational_tails:
            if (n < 1) throw std::invalid_argument("diaz_bound: rational_tails needs n >= 1");
            return static_cast<long>(g) - 2 + n;
        case DiazVariant::compact_type:
            return 2L * g - 3 + n;
    }
    throw std::invalid_argument("diaz_bound: bad variant");
}

}  // namespace tautcalc
