#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tautcalc {

// All arithmetic in this library is exact.  Int is an arbitrary-precision
// integer; Rational is kept in lowest terms with a positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    Int f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

// m!! over odd integers, with the empty-product conventions (-1)!! = 1!! = 1.
inline Int odd_double_factorial(long m) {
    if (m < -1 || m % 2 == 0)
        throw std::invalid_argument("odd_double_factorial: want odd m >= -1");
    Int f = 1;
    for (long i = m; i >= 3; i -= 2) f *= i;
    return f;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);  // exact: r is C(n, i+1) * (i+1)! / ... stays integral
    }
    return r;
}

// (sum parts)! / prod parts_i!
inline Int multinomial(const std::vector<int>& parts) {
    long total = 0;
    for (int p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        total += p;
    }
    Int r = factorial(total);
    for (int p : parts) r /= factorial(p);
    return r;
}

inline Int int_pow(Int base, long e) {
    if (e < 0) throw std::invalid_argument("int_pow: negative exponent");
    Int r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Bernoulli number B_m with the convention B_1 = -1/2.
inline Rational bernoulli_number(int m) {
    if (m < 0) throw std::invalid_argument("bernoulli_number: negative index");
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= m) {
        long k = static_cast<long>(table.size());
        Rational acc = 0;
        for (long j = 0; j < k; ++j) acc += Rational(binomial(k + 1, j)) * table[j];
        table.push_back(-acc / Rational(k + 1));
    }
    return table[m];
}

// Always "num/den", even for integers ("7/1").  Used by caches and reports.
inline std::string to_fraction_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

// "7" for integers, "num/den" otherwise.
inline std::string to_compact_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return to_fraction_string(q);
}

namespace detail {
inline bool parse_int_strict(const std::string& s, Int& out) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') return false;
    out = Int(s);
    return true;
}
}  // namespace detail

// Accepts "n" or "n/d" with d a positive integer literal.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    Int num, den = 1;
    if (slash == std::string::npos) {
        if (!detail::parse_int_strict(s, num))
            throw std::invalid_argument("parse_rational: bad integer '" + s + "'");
    } else {
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (!detail::parse_int_strict(ns, num))
            throw std::invalid_argument("parse_rational: bad numerator '" + ns + "'");
        if (!detail::parse_int_strict(ds, den) || ds[0] == '-')
            throw std::invalid_argument("parse_rational: bad denominator '" + ds + "'");
        if (den == 0)
            throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    }
    return Rational(num, den);
}

}  // namespace tautcalc
