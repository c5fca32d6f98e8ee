#include "tautcalc/intersection.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <thread>

using namespace tautcalc;

TEST_CASE("genus-zero closed form") {
    CHECK(genus0_psi({0, 0, 0}) == 1);
    CHECK(genus0_psi({1, 0, 0, 0}) == 1);
    CHECK(genus0_psi({2, 0, 0, 0, 0}) == 1);
    CHECK(genus0_psi({1, 1, 0, 0, 0}) == 2);
    CHECK(genus0_psi({3, 0, 0, 0, 0, 0}) == 1);
    CHECK(genus0_psi({2, 1, 0, 0, 0, 0}) == 3);
    CHECK(genus0_psi({1, 1, 1, 0, 0, 0}) == 6);
    CHECK(genus0_psi({1, 1, 0}) == 0);  // degree mismatch
    CHECK_THROWS_AS(genus0_psi({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(genus0_psi({-1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("low-genus values") {
    CHECK(psi_integral(0, {0, 0, 0}) == 1);
    CHECK(psi_integral(1, {1}) == Rational(1, 24));
    CHECK(psi_integral(1, {0, 2}) == Rational(1, 24));
    CHECK(psi_integral(1, {1, 1}) == Rational(1, 24));
    CHECK(psi_integral(1, {1, 1, 1}) == Rational(1, 12));
    CHECK(psi_integral(1, {0, 0, 3}) == Rational(1, 24));
    CHECK(psi_integral(1, {0, 1, 2}) == Rational(1, 12));
    CHECK(psi_integral(1, {1, 1, 1, 1}) == Rational(1, 4));
}

TEST_CASE("genus-two values") {
    CHECK(psi_integral(2, {4}) == Rational(1, 1152));
    CHECK(psi_integral(2, {0, 5}) == Rational(1, 1152));
    CHECK(psi_integral(2, {1, 4}) == Rational(1, 384));
    CHECK(psi_integral(2, {2, 3}) == Rational(29, 5760));
    CHECK(psi_integral(2, {2, 2, 2}) == Rational(7, 240));
}

TEST_CASE("one-point values across genus") {
    // <tau_{3g-2}>_g = 1 / (24^g g!)
    for (int g = 1; g <= 4; ++g) {
        Rational expect = Rational(1, int_pow(24, g) * factorial(g));
        CHECK(psi_integral(g, {3 * g - 2}) == expect);
    }
}

TEST_CASE("degree mismatches vanish") {
    CHECK(psi_integral(2, {2, 2}) == 0);
    CHECK(psi_integral(2, {3, 1}) == 0);
    CHECK(psi_integral(1, {2}) == 0);
    CHECK(psi_integral(3, {2, 2, 4}) == 0);
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(psi_integral(-1, {0}), std::invalid_argument);
    CHECK_THROWS_AS(psi_integral(0, {0, 0}), std::invalid_argument);
    CHECK_THROWS_WITH(psi_integral(1, std::vector<int>{}),
                      "psi_integral: unstable (g,n) = (1,0)");
    CHECK_THROWS_AS(psi_integral(1, {-1, 2}), std::invalid_argument);
}

TEST_CASE("argument order never matters") {
    CHECK(psi_integral(2, {2, 3}) == psi_integral(2, {3, 2}));
    CHECK(psi_integral(1, {0, 1, 2}) == psi_integral(1, {2, 1, 0}));
    CHECK(psi_integral(3, {1, 2, 7}) == psi_integral(3, {7, 1, 2}));
}

TEST_CASE("string and dilaton identities on random inputs") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 60; ++trial) {
        int g = std::uniform_int_distribution<int>(0, 3)(rng);
        int n_min = (g == 0) ? 3 : 1;
        int n_max = 10 - 3 * g + 3;  // keep 3g-3+n <= 10
        if (n_max < n_min) continue;
        int n = std::uniform_int_distribution<int>(n_min, n_max)(rng);
        int degree = 3 * g - 3 + n;

        std::vector<int> a(n, 0);
        for (int d = 0; d < degree; ++d)
            ++a[std::uniform_int_distribution<int>(0, n - 1)(rng)];

        Rational base = psi_integral(g, a);

        std::vector<int> with_zero = a;
        with_zero.push_back(0);
        Rational lhs_string = psi_integral(g, with_zero);
        Rational rhs_string = 0;
        for (int j = 0; j < n; ++j) {
            if (a[j] == 0) continue;
            std::vector<int> dec = a;
            --dec[j];
            rhs_string += psi_integral(g, dec);
        }
        INFO("g=" << g << " n=" << n);
        CHECK(lhs_string == rhs_string);

        std::vector<int> with_one = a;
        with_one.push_back(1);
        Rational lhs_dilaton = psi_integral(g, with_one);
        CHECK(lhs_dilaton == Rational(2 * g - 2 + n) * base);
    }
}

TEST_CASE("recursion agrees with the closed form in genus zero") {
    // Exercise every composition for n <= 6 (the closed form is the oracle).
    for (int n = 3; n <= 6; ++n) {
        int degree = n - 3;
        std::vector<int> a(n, 0);
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == n - 1) {
                a[pos] = left;
                CHECK(psi_integral(0, a) == genus0_psi(a));
                return;
            }
            for (int v = 0; v <= left; ++v) {
                a[pos] = v;
                self(self, pos + 1, left - v);
            }
        };
        rec(rec, 0, degree);
    }
}

TEST_CASE("memo transparency") {
    auto& cache = Caches::instance().psi;
    Rational with_cache = psi_integral(2, {1, 1, 3});
    cache.set_enabled(false);
    Rational without_cache = psi_integral(2, {1, 1, 3});
    cache.set_enabled(true);
    CHECK(with_cache == without_cache);
}

TEST_CASE("concurrent evaluation is consistent") {
    Caches::instance().psi.clear();
    std::vector<Rational> results(8);
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&results, t] { results[t] = psi_integral(3, {2, 3, 4}); });
    for (auto& th : threads) th.join();
    for (int t = 1; t < 8; ++t) CHECK(results[t] == results[0]);
    CHECK(results[0] == psi_integral(3, {2, 3, 4}));
}

TEST_CASE("Bernoulli-derived constants") {
    CHECK(bernoulli_b(0) == 1);
    CHECK(bernoulli_b(1) == Rational(1, 24));
    CHECK(bernoulli_b(2) == Rational(7, 5760));
    CHECK(bernoulli_b(3) == Rational(31, 967680));
    CHECK(bernoulli_b(4) == Rational(127, 154828800));
    CHECK_THROWS_AS(bernoulli_b(-1), std::invalid_argument);
}

TEST_CASE("top Hodge insertion") {
    CHECK(lambda_g_integral(1, {0}) == Rational(1, 24));
    CHECK(lambda_g_integral(2, {2}) == Rational(7, 5760));
    CHECK(lambda_g_integral(2, {2, 1}) == 3 * Rational(7, 5760));
    CHECK(lambda_g_integral(2, {2, 1, 1}) == 12 * Rational(7, 5760));
    CHECK(lambda_g_integral(2, {1, 1, 1}) == 0);  // psi degree must be 2g-3+n
    CHECK(lambda_g_integral(3, {40}) == 0);  // degree mismatch
    CHECK(lambda_g_integral(2, {1}) == 0);
    CHECK_THROWS_AS(lambda_g_integral(0, {0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(lambda_g_integral(1, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("general Hodge dispatch") {
    CHECK(hodge_integral(2, {5}, 0) == psi_integral(2, {5}));
    CHECK(hodge_integral(1, {0}, 1) == Rational(1, 24));
    CHECK(hodge_integral(2, {2}, 2) == Rational(7, 5760));
    CHECK_THROWS_AS(hodge_integral(2, {2}, 3), std::invalid_argument);
    CHECK_THROWS_AS(hodge_integral(2, {2}, -1), std::invalid_argument);
    CHECK_THROWS_AS(hodge_integral(2, {3}, 1), std::domain_error);
    CHECK_THROWS_WITH(hodge_integral(3, {3}, 2),
                      "unsupported Hodge index: lambda_2 at genus 3 "
                      "(supported: k = 0, k = g, or g <= 1)");
}

TEST_CASE("formal classes integrate termwise") {
    FormalTautClass c;
    c.g = 1;
    c.n = 1;
    c.add_term({1}, 0, 1);
    c.add_term({0}, 1, -1);
    CHECK(integrate_formal(c) == 0);  // psi - lambda_1 integrates to 1/24 - 1/24

    FormalTautClass zero;
    zero.g = 2;
    zero.n = 1;
    CHECK(integrate_formal(zero) == 0);

    FormalTautClass sum;
    sum.g = 2;
    sum.n = 1;
    sum.add_term({4}, 0, 2);
    sum.add_term({2}, 2, 1);
    CHECK(integrate_formal(sum) == 2 * Rational(1, 1152) + Rational(7, 5760));

    FormalTautClass cancel;
    cancel.g = 0;
    cancel.n = 3;
    cancel.add_term({0, 0, 0}, 0, Rational(1, 2));
    cancel.add_term({0, 0, 0}, 0, Rational(-1, 2));
    CHECK(cancel.terms.empty());
    CHECK(integrate_formal(cancel) == 0);

    FormalTautClass bad;
    bad.g = 2;
    bad.n = 1;
    bad.add_term({3}, 1, 1);
    CHECK_THROWS_WITH(integrate_formal(bad),
                      "unsupported Hodge index in term psi^(3) lambda_1 at genus 2 "
                      "(supported: k = 0, k = g, or g <= 1)");

    FormalTautClass wrong_len;
    wrong_len.g = 1;
    wrong_len.n = 2;
    CHECK_THROWS_AS(wrong_len.add_term({1}, 0, 1), std::invalid_argument);
}
