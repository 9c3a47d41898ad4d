#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "hyten/combinatorics.hpp"
#include "test_util.hpp"

using namespace hyten;

namespace {

// the explicit alternating-sum formula, as an independent oracle
BigInt stirling2_oracle(int n, int k) {
    BigInt acc = 0;
    for (int i = 0; i <= k; ++i) {
        BigInt term = binomial(k, i);
        BigInt p = 1;
        for (int j = 0; j < n; ++j) p *= (k - i);
        term *= p;
        if (i % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc / big_factorial(k);
}

std::vector<int> key_of(const Multiset& x) {
    std::vector<int> key;
    for (std::size_t i = 0; i < x.support.size(); ++i)
        for (int c = 0; c < x.mult[i]; ++c) key.push_back(x.support[i]);
    return key;
}

}  // namespace

TEST_CASE("stirling2 basics") {
    CHECK(stirling2(3, 2) == 3);
    CHECK(stirling2(0, 0) == 1);
    for (int n = 1; n <= 12; ++n) {
        CHECK(stirling2(n, n) == 1);
        CHECK(stirling2(n, 1) == 1);
        CHECK(stirling2(n, n + 3) == 0);
    }
}

TEST_CASE("stirling2 matches the alternating-sum formula") {
    for (int n = 0; n <= 20; ++n)
        for (int k = 1; k <= n; ++k) CHECK(stirling2(n, k) == stirling2_oracle(n, k));
}

TEST_CASE("blowup and unordered counts") {
    CHECK(blowup_count(2, 3) == 6);
    CHECK(unordered_count(2, 3) == 2);
    for (int r = 2; r <= 9; ++r) {
        CHECK(blowup_count(r, r) == big_factorial(r));
        CHECK(unordered_count(r, r) == 1);
        CHECK(blowup_count(1, r) == 1);
        CHECK(unordered_count(1, r) == 1);
    }
    CHECK_THROWS_AS(blowup_count(5, 4), PreconditionError);
}

TEST_CASE("kappa enumeration: listing, order, count") {
    std::vector<int> e{1, 3};
    auto kappa = enumerate_kappa(e, 3);
    REQUIRE(kappa.size() == 2);
    CHECK(key_of(kappa[0]) == std::vector<int>{1, 1, 3});
    CHECK(key_of(kappa[1]) == std::vector<int>{1, 3, 3});

    // count check against C(r-1, r-|e|) on random (e, r)
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 1 + static_cast<int>(test::uniform01(rng) * 6);
        int r = k + static_cast<int>(test::uniform01(rng) * (12 - k));
        std::vector<int> edge;
        for (int i = 0; i < k; ++i) edge.push_back(3 * i + 1);
        auto ms = enumerate_kappa(edge, r);
        CHECK(BigInt(ms.size()) == unordered_count(k, r));
        // ascending lexicographic as element tuples, no repeats
        for (std::size_t i = 1; i < ms.size(); ++i) CHECK(key_of(ms[i - 1]) < key_of(ms[i]));
        for (const auto& x : ms) CHECK(x.size() == r);
    }

    // edge of full size: single all-ones multiset
    auto full = enumerate_kappa(std::vector<int>{0, 1, 2}, 3);
    REQUIRE(full.size() == 1);
    CHECK(full[0].mult == std::vector<int>{1, 1, 1});
}

TEST_CASE("beta enumeration: listing and counts") {
    std::vector<int> e{1, 3};
    auto tuples = enumerate_beta(e, 3);
    std::vector<std::vector<int>> expected{{1, 1, 3}, {1, 3, 1}, {1, 3, 3},
                                           {3, 1, 1}, {3, 1, 3}, {3, 3, 1}};
    CHECK(tuples == expected);

    CHECK(enumerate_beta(std::vector<int>{1}, 2) == std::vector<std::vector<int>>{{1, 1}});

    for (int k = 1; k <= 4; ++k)
        for (int r = k; r <= 8; ++r) {
            std::vector<int> edge;
            for (int i = 0; i < k; ++i) edge.push_back(i);
            CHECK(BigInt(enumerate_beta(edge, r).size()) == blowup_count(k, r));
        }
}

TEST_CASE("multinomial partition of the blowup set") {
    for (int k = 1; k <= 6; ++k)
        for (int r = k; r <= 12; ++r) {
            std::vector<int> edge;
            for (int i = 0; i < k; ++i) edge.push_back(i);
            BigInt total = 0;
            for_each_kappa(edge, r, [&](const Multiset& x) {
                BigInt tuples = big_factorial(r);
                for (int m : x.mult) tuples /= big_factorial(m);
                total += tuples;
            });
            CHECK(total == blowup_count(k, r));
        }
}

TEST_CASE("phi1/phi2 against brute-force position counts") {
    CHECK(phi1(Multiset{{1, 3}, {2, 1}}, 1) == 2);  // (1,1,3),(1,3,1) from the r=3 listing

    // all multiplicities one: (r-1)!
    for (int r = 2; r <= 7; ++r) {
        Multiset x;
        for (int i = 0; i < r; ++i) {
            x.support.push_back(i);
            x.mult.push_back(1);
        }
        CHECK(phi1(x, 0) == big_factorial(r - 1));
    }

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int k = 1 + static_cast<int>(test::uniform01(rng) * 3);
        int r = std::max(2, k + static_cast<int>(test::uniform01(rng) * (7 - k)));
        std::vector<int> edge;
        for (int i = 0; i < k; ++i) edge.push_back(i);
        for_each_kappa(edge, r, [&](const Multiset& x) {
            for (int u : edge) {
                BigInt count1 = 0;
                for_each_beta(edge, r, [&](std::span<const int> t) {
                    if (t[0] != u) return;
                    Multiset seen{edge, std::vector<int>(k, 0)};
                    for (int v : t)
                        for (int i = 0; i < k; ++i)
                            if (edge[i] == v) ++seen.mult[i];
                    if (seen.mult == x.mult) ++count1;
                });
                CHECK(phi1(x, u) == count1);
                for (int v : edge) {
                    int need_u = (u == v) ? 2 : 1;
                    if (x.multiplicity_of(u) < need_u || x.multiplicity_of(v) < 1) continue;
                    BigInt count2 = 0;
                    for_each_beta(edge, r, [&](std::span<const int> t) {
                        if (t.size() < 2 || t[0] != u || t[1] != v) return;
                        Multiset seen{edge, std::vector<int>(k, 0)};
                        for (int w : t)
                            for (int i = 0; i < k; ++i)
                                if (edge[i] == w) ++seen.mult[i];
                        if (seen.mult == x.mult) ++count2;
                    });
                    CHECK(phi2(x, u, v) == count2);
                }
            }
        });
    }
}

TEST_CASE("phi errors on invalid fixed vertices") {
    Multiset x{{1, 3}, {2, 1}};
    CHECK_THROWS_AS(phi1(x, 5), PreconditionError);
    CHECK_THROWS_AS(phi2(x, 3, 3), PreconditionError);  // m(3) = 1 cannot host two copies
}

TEST_CASE("factorial table") {
    CHECK(factorial(0) == 1.0);
    CHECK(factorial(5) == 120.0);
    CHECK(factorial(170) < std::numeric_limits<double>::infinity());
    CHECK(factorial(171) == std::numeric_limits<double>::infinity());
    CHECK(to_double(big_factorial(20)) == factorial(20));
}
