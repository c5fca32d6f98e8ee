#pragma once

#include "tautcalc/memo.hpp"
#include "tautcalc/rational.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tautcalc {

// Weakly decreasing positive parts.
struct PartitionShape {
    std::vector<int> parts;

    PartitionShape() = default;
    explicit PartitionShape(std::vector<int> p) : parts(std::move(p)) {
        for (int x : parts)
            if (x < 1) throw std::invalid_argument("PartitionShape: parts must be >= 1");
        std::sort(parts.begin(), parts.end(), std::greater<int>());
    }

    int total() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int length() const { return static_cast<int>(parts.size()); }

    // part value -> multiplicity
    std::map<int, int> multiplicities() const {
        std::map<int, int> m;
        for (int x : parts) ++m[x];
        return m;
    }
};

// prod_k m_k! over the multiplicities of the parts.
inline Int part_multiplicity_factor(const std::vector<int>& parts) {
    std::map<int, int> m;
    for (int x : parts) ++m[x];
    Int r = 1;
    for (const auto& [v, c] : m) {
        (void)v;
        r *= factorial(c);
    }
    return r;
}

// z_mu = prod_k k^{m_k} m_k!
inline Int z_value(const PartitionShape& mu) {
    Int r = 1;
    for (const auto& [v, c] : mu.multiplicities()) r *= int_pow(v, c) * factorial(c);
    return r;
}

inline Int conjugacy_class_size(const PartitionShape& mu) {
    return factorial(mu.total()) / z_value(mu);
}

// Partitions of d in descending lexicographic order, each weakly decreasing.
inline std::vector<std::vector<int>> partitions_of(int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int maxpart) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, d, d);
    return out;
}

namespace detail {

// Murnaghan-Nakayama via beta numbers: removing a border strip of size t
// means lowering one beta number by t while keeping them distinct; the sign
// is (-1)^(number of beta numbers jumped over).
inline Int mn_char_impl(const std::vector<int>& lam, const std::vector<int>& mu);

inline Int mn_char_memo(std::vector<int> lam, std::vector<int> mu) {
    while (!lam.empty() && lam.back() == 0) lam.pop_back();
    if (mu.empty()) return lam.empty() ? Int(1) : Int(0);
    return Caches::instance().chi.get_or_compute({lam, mu},
                                                 [&] { return mn_char_impl(lam, mu); });
}

inline Int mn_char_impl(const std::vector<int>& lam, const std::vector<int>& mu) {
    int t = mu[0];
    std::vector<int> rest(mu.begin() + 1, mu.end());
    int L = static_cast<int>(lam.size());
    std::vector<int> betas(L);
    for (int i = 0; i < L; ++i) betas[i] = lam[i] + (L - 1 - i);
    Int acc = 0;
    for (int i = 0; i < L; ++i) {
        int nb = betas[i] - t;
        if (nb < 0) continue;
        bool clash = false;
        int height = 0;
        for (int j = 0; j < L; ++j) {
            if (j == i) continue;
            if (betas[j] == nb) clash = true;
            if (betas[j] > nb && betas[j] < betas[i]) ++height;
        }
        if (clash) continue;
        std::vector<int> nbetas = betas;
        nbetas[i] = nb;
        std::sort(nbetas.begin(), nbetas.end(), std::greater<int>());
        std::vector<int> nlam(L);
        for (int j = 0; j < L; ++j) nlam[j] = nbetas[j] - (L - 1 - j);
        Int sub = mn_char_memo(std::move(nlam), rest);
        acc += (height % 2 == 0) ? sub : -sub;
    }
    return acc;
}

}  // namespace detail

// Irreducible character chi^lambda evaluated on the class of cycle type mu.
inline Int mn_character(const PartitionShape& lambda, const PartitionShape& mu) {
    if (lambda.total() != mu.total())
        throw std::invalid_argument("mn_character: |lambda| != |mu|");
    return detail::mn_char_memo(lambda.parts, mu.parts);
}

// Branched covers of the line: degree d = |alpha|, profile alpha over one
// fixed point (and beta over a second when present), r simple branch points.
// Parts are labeled: permuting equal parts of the input does not change the
// count, and each count carries the 1/d! weight of the labeled convention.
struct HurwitzSpec {
    int genus = 0;
    std::vector<int> alpha;
    std::optional<std::vector<int>> beta;
    bool connected = true;
};

inline void validate_spec(const HurwitzSpec& s) {
    if (s.alpha.empty()) throw std::invalid_argument("HurwitzSpec: alpha is empty");
    for (int x : s.alpha)
        if (x < 1) throw std::invalid_argument("HurwitzSpec: alpha parts must be >= 1");
    if (s.beta) {
        if (s.beta->empty()) throw std::invalid_argument("HurwitzSpec: beta is empty");
        for (int x : *s.beta)
            if (x < 1) throw std::invalid_argument("HurwitzSpec: beta parts must be >= 1");
        int da = std::accumulate(s.alpha.begin(), s.alpha.end(), 0);
        int db = std::accumulate(s.beta->begin(), s.beta->end(), 0);
        if (da != db) throw std::invalid_argument("HurwitzSpec: |alpha| != |beta|");
    }
}

// Riemann-Hurwitz count of simple branch points; may be negative for
// inconsistent data (methods treat that as an empty count).
inline long hurwitz_r_value(const HurwitzSpec& s) {
    long d = std::accumulate(s.alpha.begin(), s.alpha.end(), 0L);
    if (s.beta)
        return 2L * s.genus - 2 + static_cast<long>(s.alpha.size()) +
               static_cast<long>(s.beta->size());
    return d + static_cast<long>(s.alpha.size()) + 2L * s.genus - 2;
}

inline long transposition_count(const HurwitzSpec& s) {
    validate_spec(s);
    long r = hurwitz_r_value(s);
    if (r < 0) {
        std::ostringstream os;
        os << "no such cover count: required simple branch points " << r << " is negative";
        throw std::invalid_argument(os.str());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Character (Frobenius) method
// ---------------------------------------------------------------------------

namespace detail {

// Labeled disconnected count via the Frobenius formula.  alpha/beta in any
// order; r >= 0.
inline Rational character_disconnected(const std::vector<int>& alpha,
                                       const std::optional<std::vector<int>>& beta, long r) {
    if (r < 0) return 0;
    int d = std::accumulate(alpha.begin(), alpha.end(), 0);
    if (d == 1) return (r == 0) ? Rational(1) : Rational(0);

    PartitionShape sa(alpha);
    std::optional<PartitionShape> sb;
    if (beta) sb.emplace(*beta);

    std::vector<int> tau_parts{2};
    tau_parts.insert(tau_parts.end(), d - 2, 1);
    PartitionShape tau(tau_parts);
    std::vector<int> ones(d, 1);
    PartitionShape id_class(ones);

    Rational sum = 0;
    for (const auto& lam : partitions_of(d)) {
        PartitionShape L(lam);
        Int chi_a = mn_character(L, sa);
        if (chi_a == 0) continue;
        Int chi_b = 1;
        if (sb) {
            chi_b = mn_character(L, *sb);
            if (chi_b == 0) continue;
        }
        Int chi_t = mn_character(L, tau);
        Int f = mn_character(L, id_class);
        long expo = beta ? r : r - 1;
        Int numer = chi_a * chi_b * int_pow(chi_t, r);
        if (expo >= 0)
            sum += Rational(numer, int_pow(f, expo));
        else
            sum += Rational(numer * f);
    }
    Rational N = Rational(conjugacy_class_size(sa), factorial(d));
    if (sb) N *= Rational(conjugacy_class_size(*sb));
    N *= Rational(int_pow(Int(d) * (d - 1) / 2, r));
    N *= sum;
    Rational H = N * Rational(part_multiplicity_factor(alpha), factorial(d));
    if (beta) H *= Rational(part_multiplicity_factor(*beta));
    return H;
}

// Connected counts by convolution over the component containing the first
// part: H_conn(S) = H_disc(S) - sum over proper sub-blocks B (containing the
// first part, with matching branch point subsets) of
//   C(r, r_B) H_conn(B, r_B) H_disc(S \ B, r - r_B).
class ConnectedSingle {
public:
    using Disc = std::function<Rational(const std::vector<int>&, long)>;
    explicit ConnectedSingle(Disc d) : disc_(std::move(d)) {}

    Rational operator()(std::vector<int> parts, long r) {
        if (r < 0) return 0;
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        auto key = std::make_pair(parts, r);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Rational H = disc_(parts, r);
        int n = static_cast<int>(parts.size());
        if (n > 1) {
            unsigned full = (1u << (n - 1)) - 1;
            for (unsigned mask = 0; mask < full; ++mask) {
                std::vector<int> block{parts[0]}, restp;
                for (int t = 0; t < n - 1; ++t)
                    (((mask >> t) & 1u) ? block : restp).push_back(parts[t + 1]);
                for (long rb = 0; rb <= r; ++rb) {
                    Rational hc = (*this)(block, rb);
                    if (hc == 0) continue;
                    Rational hd = disc_(restp, r - rb);
                    if (hd == 0) continue;
                    H -= Rational(binomial(r, rb)) * hc * hd;
                }
            }
        }
        memo_.emplace(std::move(key), H);
        return H;
    }

private:
    Disc disc_;
    std::map<std::pair<std::vector<int>, long>, Rational> memo_;
};

class ConnectedDouble {
public:
    using Disc =
        std::function<Rational(const std::vector<int>&, const std::vector<int>&, long)>;
    explicit ConnectedDouble(Disc d) : disc_(std::move(d)) {}

    Rational operator()(std::vector<int> av, std::vector<int> bv, long r) {
        if (r < 0) return 0;
        std::sort(av.begin(), av.end(), std::greater<int>());
        std::sort(bv.begin(), bv.end(), std::greater<int>());
        auto key = std::make_tuple(av, bv, r);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Rational H = disc_(av, bv, r);
        int na = static_cast<int>(av.size());
        int nb = static_cast<int>(bv.size());
        unsigned fa = (1u << (na - 1)) - 1;
        unsigned fb = (1u << nb) - 1;
        for (unsigned ma = 0; ma <= fa; ++ma) {
            std::vector<int> ablock{av[0]}, arest;
            for (int t = 0; t < na - 1; ++t)
                (((ma >> t) & 1u) ? ablock : arest).push_back(av[t + 1]);
            int wa = std::accumulate(ablock.begin(), ablock.end(), 0);
            for (unsigned mb = 0; mb <= fb; ++mb) {
                if (ma == fa && mb == fb) continue;  // the whole cover
                std::vector<int> bblock, brest;
                for (int t = 0; t < nb; ++t)
                    (((mb >> t) & 1u) ? bblock : brest).push_back(bv[t]);
                if (bblock.empty()) continue;  // every component meets both fibers
                if (std::accumulate(bblock.begin(), bblock.end(), 0) != wa) continue;
                for (long rb = 0; rb <= r; ++rb) {
                    Rational hc = (*this)(ablock, bblock, rb);
                    if (hc == 0) continue;
                    Rational hd = arest.empty() ? Rational(r - rb == 0 ? 1 : 0)
                                                : disc_(arest, brest, r - rb);
                    if (hd == 0) continue;
                    H -= Rational(binomial(r, rb)) * hc * hd;
                }
            }
        }
        memo_.emplace(std::move(key), H);
        return H;
    }

private:
    Disc disc_;
    std::map<std::tuple<std::vector<int>, std::vector<int>, long>, Rational> memo_;
};

}  // namespace detail

// Frobenius-formula evaluation.  Soft degree cap keeps character tables small.
inline Rational hurwitz_character(const HurwitzSpec& spec, int degree_cap = 8) {
    validate_spec(spec);
    int d = std::accumulate(spec.alpha.begin(), spec.alpha.end(), 0);
    if (d > degree_cap) {
        std::ostringstream os;
        os << "character method degree cap exceeded: d = " << d << " > " << degree_cap;
        throw std::domain_error(os.str());
    }
    long r = hurwitz_r_value(spec);
    if (r < 0) return 0;
    if (!spec.connected)
        return detail::character_disconnected(spec.alpha, spec.beta, r);
    if (!spec.beta) {
        detail::ConnectedSingle conn([](const std::vector<int>& p, long rr) {
            return detail::character_disconnected(p, std::nullopt, rr);
        });
        return conn(spec.alpha, r);
    }
    detail::ConnectedDouble conn(
        [](const std::vector<int>& p, const std::vector<int>& q, long rr) {
            return detail::character_disconnected(p, std::optional<std::vector<int>>(q), rr);
        });
    return conn(spec.alpha, *spec.beta, r);
}

// ---------------------------------------------------------------------------
// Cut-and-join method (single profiles only)
// ---------------------------------------------------------------------------

namespace detail {

// Labeled disconnected single Hurwitz numbers by the cut-and-join recursion:
//   H(alpha, r) = sum_{i<j} (a_i+a_j) H(join_ij, r-1)
//              + sum_i sum_{u+v=a_i, u<=v} w(u,v) H(cut_i^{u,v}, r-1),
// with w = uv for u != v and uv/2 for u = v; H(alpha, 0) = [alpha = (1,...,1)].
inline Rational cut_join_disconnected(std::vector<int> parts, long r) {
    if (r < 0) return 0;
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    static std::mutex mu;
    static std::map<std::pair<std::vector<int>, long>, Rational> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({parts, r});
        if (it != memo.end()) return it->second;
    }
    Rational H = 0;
    if (r == 0) {
        H = std::all_of(parts.begin(), parts.end(), [](int x) { return x == 1; }) ? 1 : 0;
    } else {
        int n = static_cast<int>(parts.size());
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                std::vector<int> joined;
                joined.reserve(n - 1);
                for (int t = 0; t < n; ++t)
                    if (t != i && t != j) joined.push_back(parts[t]);
                joined.push_back(parts[i] + parts[j]);
                H += Rational(parts[i] + parts[j]) * cut_join_disconnected(std::move(joined), r - 1);
            }
            for (int u = 1; 2 * u <= parts[i]; ++u) {
                int v = parts[i] - u;
                std::vector<int> cut;
                cut.reserve(n + 1);
                for (int t = 0; t < n; ++t)
                    if (t != i) cut.push_back(parts[t]);
                cut.push_back(u);
                cut.push_back(v);
                Rational w = (u == v) ? Rational(Int(u) * v, 2) : Rational(Int(u) * v);
                H += w * cut_join_disconnected(std::move(cut), r - 1);
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(std::make_pair(std::move(parts), r), H);
    return H;
}

}  // namespace detail

inline Rational cut_and_join(const HurwitzSpec& spec, int degree_cap = 8) {
    validate_spec(spec);
    if (spec.beta) throw std::invalid_argument("cut_and_join: single Hurwitz only");
    int d = std::accumulate(spec.alpha.begin(), spec.alpha.end(), 0);
    if (d > degree_cap) {
        std::ostringstream os;
        os << "cut-and-join degree cap exceeded: d = " << d << " > " << degree_cap;
        throw std::domain_error(os.str());
    }
    long r = hurwitz_r_value(spec);
    if (r < 0) return 0;
    if (!spec.connected) return detail::cut_join_disconnected(spec.alpha, r);
    detail::ConnectedSingle conn(
        [](const std::vector<int>& p, long rr) { return detail::cut_join_disconnected(p, rr); });
    return conn(spec.alpha, r);
}

// ---------------------------------------------------------------------------
// Brute-force method
// ---------------------------------------------------------------------------

struct BruteForceCaps {
    int max_degree = 4;
    int max_transpositions = 8;
};

namespace detail {

constexpr int kMaxBrute = 8;
using SmallPerm = std::array<int, kMaxBrute>;

inline SmallPerm identity_perm(int d) {
    SmallPerm p{};
    for (int i = 0; i < d; ++i) p[i] = i;
    return p;
}

inline int cycle_count(const SmallPerm& p, int d) {
    std::array<char, kMaxBrute> seen{};
    int c = 0;
    for (int i = 0; i < d; ++i) {
        if (seen[i]) continue;
        ++c;
        for (int j = i; !seen[j]; j = p[j]) seen[j] = 1;
    }
    return c;
}

inline std::vector<int> cycle_type(const SmallPerm& p, int d) {
    std::array<char, kMaxBrute> seen{};
    std::vector<int> type;
    for (int i = 0; i < d; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.begin(), type.end(), std::greater<int>());
    return type;
}

// compose(a, b)(x) = a(b(x))
inline SmallPerm compose(const SmallPerm& a, const SmallPerm& b, int d) {
    SmallPerm r{};
    for (int i = 0; i < d; ++i) r[i] = a[b[i]];
    return r;
}

inline SmallPerm inverse_perm(const SmallPerm& p, int d) {
    SmallPerm r{};
    for (int i = 0; i < d; ++i) r[p[i]] = i;
    return r;
}

struct BruteDsu {
    std::array<int, kMaxBrute> p{};
    void init(int d) {
        for (int i = 0; i < d; ++i) p[i] = i;
    }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
    int components(int d) {
        int c = 0;
        for (int i = 0; i < d; ++i)
            if (find(i) == i) ++c;
        return c;
    }
};

struct BruteCounter {
    int d = 0;
    long r = 0;
    bool need_transitive = false;
    std::vector<std::pair<int, int>> transpositions;

    // remaining: the product still required from the unchosen transpositions.
    long long dfs(long k, const SmallPerm& remaining, const BruteDsu& dsu) {
        int dist = d - cycle_count(remaining, d);
        long rem = r - k;
        if (dist > rem || ((rem - dist) & 1L)) return 0;
        if (need_transitive) {
            BruteDsu tmp = dsu;
            if (tmp.components(d) - 1 > rem) return 0;
        }
        if (k == r) {
            if (need_transitive) {
                BruteDsu tmp = dsu;
                if (tmp.components(d) != 1) return 0;
            }
            return 1;
        }
        long long acc = 0;
        for (const auto& [a, b] : transpositions) {
            SmallPerm next = remaining;
            for (int i = 0; i < d; ++i) {
                if (next[i] == a)
                    next[i] = b;
                else if (next[i] == b)
                    next[i] = a;
            }
            BruteDsu ndsu = dsu;
            ndsu.unite(a, b);
            acc += dfs(k + 1, next, ndsu);
        }
        return acc;
    }
};

inline std::vector<SmallPerm> perms_with_type(int d, const std::vector<int>& shape) {
    std::vector<SmallPerm> out;
    std::vector<int> img(d);
    std::iota(img.begin(), img.end(), 0);
    do {
        SmallPerm p{};
        for (int i = 0; i < d; ++i) p[i] = img[i];
        if (cycle_type(p, d) == shape) out.push_back(p);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

}  // namespace detail

// Direct count over tuples: eta with cycle type alpha (labeled cycles),
// r transpositions, optionally eta' with type beta, product the identity,
// transitive when a connected count is requested; weight 1/d!.  The labeled
// cycle assignments contribute prod m_k! per profile and are counted once
// per permutation representative.
inline Rational hurwitz_bruteforce(const HurwitzSpec& spec, const BruteForceCaps& caps = {}) {
    validate_spec(spec);
    int d = std::accumulate(spec.alpha.begin(), spec.alpha.end(), 0);
    long r = hurwitz_r_value(spec);
    if (r < 0) return 0;
    if (d > caps.max_degree || d > detail::kMaxBrute) {
        std::ostringstream os;
        os << "bruteforce cap exceeded: degree " << d << " > " << caps.max_degree;
        throw std::domain_error(os.str());
    }
    if (r > caps.max_transpositions) {
        std::ostringstream os;
        os << "bruteforce cap exceeded: transpositions " << r << " > "
           << caps.max_transpositions;
        throw std::domain_error(os.str());
    }

    std::vector<int> shape_a = spec.alpha;
    std::sort(shape_a.begin(), shape_a.end(), std::greater<int>());
    auto etas = detail::perms_with_type(d, shape_a);
    std::vector<detail::SmallPerm> etas2;
    if (spec.beta) {
        std::vector<int> shape_b = *spec.beta;
        std::sort(shape_b.begin(), shape_b.end(), std::greater<int>());
        etas2 = detail::perms_with_type(d, shape_b);
    } else {
        etas2.push_back(detail::identity_perm(d));
    }

    std::vector<std::pair<int, int>> trans;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) trans.emplace_back(a, b);

    long long tuples = 0;
    for (const auto& eta : etas) {
        detail::SmallPerm inv_eta = detail::inverse_perm(eta, d);
        for (const auto& eta2 : etas2) {
            detail::SmallPerm target =
                detail::compose(inv_eta, detail::inverse_perm(eta2, d), d);
            detail::BruteDsu dsu;
            dsu.init(d);
            for (int i = 0; i < d; ++i) {
                dsu.unite(i, eta[i]);
                dsu.unite(i, eta2[i]);
            }
            detail::BruteCounter counter;
            counter.d = d;
            counter.r = r;
            counter.need_transitive = spec.connected;
            counter.transpositions = trans;
            tuples += counter.dfs(0, target, dsu);
        }
    }
    Int labeled = Int(tuples) * part_multiplicity_factor(spec.alpha);
    if (spec.beta) labeled *= part_multiplicity_factor(*spec.beta);
    return Rational(labeled, factorial(d));
}

}  // namespace tautcalc
