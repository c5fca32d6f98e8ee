#pragma once

#include "tautcalc/memo.hpp"
#include "tautcalc/rational.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tautcalc {

// <tau_{a_1} ... tau_{a_n}>_0 = (n-3)! / prod a_i!  when sum a_i = n-3.
inline Rational genus0_psi(const std::vector<int>& a) {
    int n = static_cast<int>(a.size());
    if (n < 3) throw std::invalid_argument("genus0_psi: need at least 3 markings");
    long total = 0;
    for (int x : a) {
        if (x < 0) throw std::invalid_argument("genus0_psi: negative exponent");
        total += x;
    }
    if (total != n - 3) return 0;
    Rational r = Rational(factorial(n - 3));
    for (int x : a) r /= Rational(factorial(x));
    return r;
}

namespace detail {

Rational psi_term(int g, std::vector<int> a);

// Core recursion.  Preconditions: (g,n) stable, exponents sorted descending,
// sum of exponents equal to 3g-3+n, g >= 1 handled here (genus 0 is closed
// form).  Dispatch: string rule if some exponent is 0, dilaton if some is 1,
// otherwise the KdV recursion on the largest exponent.  Unstable or
// degree-mismatched subterms contribute 0 (psi_term filters them).
inline Rational psi_value(int g, const std::vector<int>& a) {
    int n = static_cast<int>(a.size());
    if (g == 1 && n == 1) return Rational(1, 24);  // <tau_1>_1

    if (a.back() == 0) {
        std::vector<int> b(a.begin(), a.end() - 1);
        Rational acc = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            std::vector<int> c = b;
            --c[j];
            acc += psi_term(g, std::move(c));
        }
        return acc;
    }
    if (a.back() == 1 && n >= 2) {
        std::vector<int> b(a.begin(), a.end() - 1);
        return Rational(2 * g - 2 + (n - 1)) * psi_term(g, std::move(b));
    }

    // All exponents >= 2.  Recurse on a_0 = k+1:
    //   (2a_0+1)!! <tau_{a_0} R> =
    //     sum_j ((2(a_0+a_j)-1)!!/(2a_j-1)!!) <tau_{a_0+a_j-1} R\{j}>
    //   + 1/2 sum_{b+c=a_0-2} (2b+1)!!(2c+1)!!
    //       [ <tau_b tau_c R>_{g-1}
    //         + sum_{g_1+g_2=g, I disjoint-union J = R} <tau_b I>_{g1}<tau_c J>_{g2} ]
    int a0 = a[0];
    std::vector<int> rest(a.begin() + 1, a.end());
    int m = static_cast<int>(rest.size());
    Rational acc = 0;
    for (int j = 0; j < m; ++j) {
        std::vector<int> c = rest;
        c[j] = a0 + rest[j] - 1;
        Rational co = Rational(odd_double_factorial(2 * (a0 + rest[j]) - 1),
                               odd_double_factorial(2 * rest[j] - 1));
        acc += co * psi_term(g, std::move(c));
    }
    Rational second = 0;
    for (int b = 0; b + 2 <= a0; ++b) {
        int c = a0 - 2 - b;
        Rational co = Rational(odd_double_factorial(2 * b + 1) * odd_double_factorial(2 * c + 1));

        std::vector<int> lower = rest;
        lower.push_back(b);
        lower.push_back(c);
        second += co * psi_term(g - 1, std::move(lower));

        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<int> I{b}, J{c};
            for (int t = 0; t < m; ++t)
                ((mask >> t) & 1u ? J : I).push_back(rest[t]);
            for (int g1 = 0; g1 <= g; ++g1) {
                Rational left = psi_term(g1, I);
                if (left == 0) continue;
                second += co * left * psi_term(g - g1, J);
            }
        }
    }
    acc += second / 2;
    return acc / Rational(odd_double_factorial(2 * a0 + 1));
}

// Returns 0 for unstable or degree-mismatched inputs; otherwise evaluates
// through the memo table (exponents sorted descending in the key).
inline Rational psi_term(int g, std::vector<int> a) {
    if (g < 0) return 0;
    int n = static_cast<int>(a.size());
    if (2 * g - 2 + n <= 0) return 0;
    long total = 0;
    for (int x : a) total += x;
    if (total != 3L * g - 3 + n) return 0;
    std::sort(a.begin(), a.end(), std::greater<int>());
    if (g == 0) return genus0_psi(a);
    return Caches::instance().psi.get_or_compute({g, a}, [&] { return psi_value(g, a); });
}

}  // namespace detail

// <tau_{a_1} ... tau_{a_n} >_g; 0 when sum a_i != 3g-3+n.
inline Rational psi_integral(int g, const std::vector<int>& a) {
    if (g < 0) throw std::invalid_argument("psi_integral: negative genus");
    int n = static_cast<int>(a.size());
    if (2 * g - 2 + n <= 0) {
        std::ostringstream os;
        os << "psi_integral: unstable (g,n) = (" << g << "," << n << ")";
        throw std::invalid_argument(os.str());
    }
    for (int x : a)
        if (x < 0) throw std::invalid_argument("psi_integral: negative exponent");
    return detail::psi_term(g, a);
}

// b_0 = 1 and b_g = ((2^{2g-1}-1)/2^{2g-1}) |B_{2g}| / (2g)! for g >= 1.
inline Rational bernoulli_b(int g) {
    if (g < 0) throw std::invalid_argument("bernoulli_b: negative genus");
    if (g == 0) return 1;
    Int half = int_pow(2, 2 * g - 1);
    Rational b2g = bernoulli_number(2 * g);
    if (b2g < 0) b2g = -b2g;
    return Rational(half - 1, half) * b2g / Rational(factorial(2 * g));
}

// Integral of psi^a lambda_g over the (g,n) space:
//   multinomial(2g-3+n; a) * b_g  when sum a_i = 2g-3+n, else 0.
inline Rational lambda_g_integral(int g, const std::vector<int>& a) {
    if (g < 1) throw std::invalid_argument("lambda_g_integral: need g >= 1");
    int n = static_cast<int>(a.size());
    if (2 * g - 2 + n <= 0) {
        std::ostringstream os;
        os << "lambda_g_integral: unstable (g,n) = (" << g << "," << n << ")";
        throw std::invalid_argument(os.str());
    }
    long total = 0;
    for (int x : a) {
        if (x < 0) throw std::invalid_argument("lambda_g_integral: negative exponent");
        total += x;
    }
    if (total != 2L * g - 3 + n) return 0;
    return Rational(multinomial(a)) * bernoulli_b(g);
}

// Integral of psi^a lambda_k.  Supported: k = 0 (pure psi), k = g, and any k
// for g <= 1.  The remaining Hodge insertions are outside this engine.
inline Rational hodge_integral(int g, const std::vector<int>& a, int k) {
    if (k < 0 || k > g)
        throw std::invalid_argument("hodge_integral: lambda index out of range 0..g");
    Rational r;
    if (k == 0)
        r = psi_integral(g, a);
    else if (k == g)
        r = lambda_g_integral(g, a);
    else {
        std::ostringstream os;
        os << "unsupported Hodge index: lambda_" << k << " at genus " << g
           << " (supported: k = 0, k = g, or g <= 1)";
        throw std::domain_error(os.str());
    }
    std::vector<int> key = a;
    std::sort(key.begin(), key.end(), std::greater<int>());
    Caches::instance().hodge.insert({g, k, key}, r);
    return r;
}

// Finite linear combination of monomials psi^a lambda_k on one (g,n) space.
// Terms with zero coefficient are never stored.
struct FormalTautClass {
    int g = 0;
    int n = 0;
    std::map<std::pair<std::vector<int>, int>, Rational> terms;

    void add_term(std::vector<int> exponents, int lambda_index, const Rational& coeff) {
        if (static_cast<int>(exponents.size()) != n)
            throw std::invalid_argument("FormalTautClass: exponent vector length != n");
        if (coeff == 0) return;
        auto key = std::make_pair(std::move(exponents), lambda_index);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(std::move(key), coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms.erase(it);
        }
    }
};

// Termwise integration over the (g,n) space.  Unsupported terms raise an
// error naming the offending monomial.
inline Rational integrate_formal(const FormalTautClass& c) {
    Rational acc = 0;
    for (const auto& [key, coeff] : c.terms) {
        const auto& [exps, k] = key;
        if (c.g >= 2 && k > 0 && k < c.g) {
            std::ostringstream os;
            os << "unsupported Hodge index in term psi^(";
            for (size_t i = 0; i < exps.size(); ++i) {
                if (i) os << ",";
                os << exps[i];
            }
            os << ") lambda_" << k << " at genus " << c.g
               << " (supported: k = 0, k = g, or g <= 1)";
            throw std::domain_error(os.str());
        }
        acc += coeff * hodge_integral(c.g, exps, k);
    }
    return acc;
}

}  // namespace tautcalc
