#pragma once

#include "tautcalc/hurwitz.hpp"
#include "tautcalc/intersection.hpp"
#include "tautcalc/rational.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tautcalc {

// Fixed-locus class of the simple torus action, expanded symbolically:
//   [ (1 - lambda_1 + ... +- lambda_g) / prod_i (1 - alpha_i psi_i) ]
// restricted to its dimension-j part.  The coefficient of psi^a lambda_k is
// (-1)^k prod_i alpha_i^{a_i} with k + sum a_i = j.
struct SimpleLocusSpec {
    int genus = 0;
    std::vector<int> alpha;
    int dim = 0;
};

inline FormalTautClass simple_locus_class(const SimpleLocusSpec& spec) {
    int g = spec.genus;
    int n = static_cast<int>(spec.alpha.size());
    if (g < 0) throw std::invalid_argument("simple_locus_class: negative genus");
    for (int x : spec.alpha)
        if (x < 1) throw std::invalid_argument("simple_locus_class: alpha parts must be >= 1");
    if (2 * g - 2 + n <= 0) {
        std::ostringstream os;
        os << "simple_locus_class: unstable (g,n) = (" << g << "," << n << ")";
        throw std::invalid_argument(os.str());
    }
    if (spec.dim < 0 || spec.dim > 3 * g - 3 + n)
        throw std::invalid_argument("simple_locus_class: dim out of range 0..3g-3+n");

    FormalTautClass cls;
    cls.g = g;
    cls.n = n;
    for (int k = 0; k <= g && k <= spec.dim; ++k) {
        int rem = spec.dim - k;
        std::vector<int> exps(n, 0);
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == n - 1) {
                exps[pos] = left;
                Int mono = 1;
                for (int i = 0; i < n; ++i) mono *= int_pow(spec.alpha[i], exps[i]);
                Rational coeff = (k % 2 == 0) ? Rational(mono) : -Rational(mono);
                cls.add_term(exps, k, coeff);
                return;
            }
            for (int e = 0; e <= left; ++e) {
                exps[pos] = e;
                self(self, pos + 1, left - e);
            }
        };
        if (n == 0)
            continue;  // no psi variables; unreachable for stable (g,n) with n = 0 and rem > 0
        rec(rec, 0, rem);
    }
    return cls;
}

// r! prod_i alpha_i^{alpha_i} / alpha_i!  with r the simple branch point count.
inline Rational elsv_prefactor(int g, const std::vector<int>& alpha) {
    HurwitzSpec hs{g, alpha, std::nullopt, true};
    long r = transposition_count(hs);
    Rational pre = Rational(factorial(r));
    for (int x : alpha) pre *= Rational(int_pow(x, x), factorial(x));
    return pre;
}

// Hurwitz number through the fixed-locus integral:
//   H_{g,alpha} = prefactor * integral of the dimension-(3g-3+n) locus class.
// Needs the Hodge integrals of the engine, hence effectively g <= 1; larger
// genus propagates the unsupported-Hodge-index error.
inline Rational elsv_number(int g, const std::vector<int>& alpha) {
    int n = static_cast<int>(alpha.size());
    if (g < 0) throw std::invalid_argument("elsv_number: negative genus");
    if (2 * g - 2 + n <= 0) {
        std::ostringstream os;
        os << "elsv_number: the localization formula needs a stable source, (g,n) = (" << g
           << "," << n << ") has 2g-2+n <= 0";
        throw std::invalid_argument(os.str());
    }
    SimpleLocusSpec spec{g, alpha, 3 * g - 3 + n};
    FormalTautClass cls = simple_locus_class(spec);
    return elsv_prefactor(g, alpha) * integrate_formal(cls);
}

// Exact multivariate interpolation of lattice samples by a polynomial of
// total degree <= degree_bound, plus exact residuals on the held-out points.
struct PolyFit {
    std::map<std::vector<int>, Rational> coefficients;  // exponent vector -> coefficient
    std::vector<std::pair<std::vector<int>, Rational>> residuals;
};

namespace detail {

inline std::vector<std::vector<int>> monomials_up_to(int n, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> exps(n, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == n - 1) {
            exps[pos] = left;
            out.push_back(exps);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            exps[pos] = e;
            self(self, pos + 1, left - e);
        }
    };
    for (int d = 0; d <= degree; ++d) rec(rec, 0, d);
    return out;
}

// Gaussian elimination over the rationals; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> A,
                                                         std::vector<Rational> b) {
    int m = static_cast<int>(A.size());
    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int row = col; row < m; ++row)
            if (A[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        Rational inv = Rational(1) / A[col][col];
        for (int c = col; c < m; ++c) A[col][c] *= inv;
        b[col] *= inv;
        for (int row = 0; row < m; ++row) {
            if (row == col || A[row][col] == 0) continue;
            Rational f = A[row][col];
            for (int c = col; c < m; ++c) A[row][c] -= f * A[col][c];
            b[row] -= f * b[col];
        }
    }
    return b;
}

inline Rational eval_monomial(const std::vector<int>& point, const std::vector<int>& exps) {
    Int v = 1;
    for (size_t i = 0; i < exps.size(); ++i) v *= int_pow(Int(point[i]), exps[i]);
    return Rational(v);
}

}  // namespace detail

// The first (#monomials) samples in lattice order pin the polynomial; the
// rest are held out and reported as residuals (sample - prediction).
inline PolyFit hurwitz_polynomial_fit(int g, int n,
                                      const std::map<std::vector<int>, Rational>& samples,
                                      int degree_bound) {
    (void)g;
    if (n < 1) throw std::invalid_argument("hurwitz_polynomial_fit: need n >= 1");
    if (degree_bound < 0)
        throw std::invalid_argument("hurwitz_polynomial_fit: negative degree bound");
    for (const auto& [pt, val] : samples) {
        (void)val;
        if (static_cast<int>(pt.size()) != n)
            throw std::invalid_argument("hurwitz_polynomial_fit: sample point length != n");
    }
    auto monos = detail::monomials_up_to(n, degree_bound);
    int m = static_cast<int>(monos.size());
    if (static_cast<int>(samples.size()) < m) {
        std::ostringstream os;
        os << "hurwitz_polynomial_fit: need at least " << m << " samples, got "
           << samples.size();
        throw std::invalid_argument(os.str());
    }

    std::vector<std::vector<int>> points;
    std::vector<Rational> values;
    for (const auto& [pt, val] : samples) {
        points.push_back(pt);
        values.push_back(val);
    }

    std::vector<std::vector<Rational>> A(m, std::vector<Rational>(m));
    std::vector<Rational> rhs(m);
    for (int row = 0; row < m; ++row) {
        for (int col = 0; col < m; ++col)
            A[row][col] = detail::eval_monomial(points[row], monos[col]);
        rhs[row] = values[row];
    }
    auto sol = detail::solve_linear(std::move(A), std::move(rhs));
    if (!sol)
        throw std::invalid_argument(
            "hurwitz_polynomial_fit: singular interpolation system; provide more or better "
            "lattice points");

    PolyFit fit;
    for (int c = 0; c < m; ++c)
        if ((*sol)[c] != 0) fit.coefficients.emplace(monos[c], (*sol)[c]);
    for (size_t s = m; s < points.size(); ++s) {
        Rational pred = 0;
        for (int c = 0; c < m; ++c)
            pred += (*sol)[c] * detail::eval_monomial(points[s], monos[c]);
        fit.residuals.emplace_back(points[s], values[s] - pred);
    }
    return fit;
}

}  // namespace tautcalc
