#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <vector>

#include "hyten/errors.hpp"

namespace hyten {

using BigInt = boost::multiprecision::cpp_int;

/// Stirling number of the second kind S(n, k), exact. k > n yields 0.
/// Memoized behind a lock; safe for concurrent callers.
BigInt stirling2(int n, int k);

BigInt big_factorial(int n);
BigInt binomial(int n, int k);

/// |beta(e)| = |e|! * S(r, |e|): ordered inflations of an |e|-vertex edge to length r.
BigInt blowup_count(int esize, int r);

/// |kappa(e)| = C(r-1, r-|e|): size-r multisets with support exactly e.
BigInt unordered_count(int esize, int r);

/// Nearest-double conversion; overflows to +inf.
double to_double(const BigInt& v);

/// Exact double factorials up to 170!, +inf beyond.
double factorial(int n);

/// A size-r multiset with support equal to a hyperedge: every support vertex
/// appears with multiplicity >= 1 and the multiplicities sum to r.
struct Multiset {
    std::vector<int> support;  // strictly increasing vertex ids
    std::vector<int> mult;     // parallel to support, each >= 1

    int size() const {
        int s = 0;
        for (int m : mult) s += m;
        return s;
    }
    int multiplicity_of(int v) const {
        for (std::size_t i = 0; i < support.size(); ++i)
            if (support[i] == v) return mult[i];
        return 0;
    }
};

/// Count of ordered blowups with multiset x whose first entry is u.
BigInt phi1(const Multiset& x, int u);

/// Count of ordered blowups with multiset x whose first two entries are u, v (u == v allowed).
BigInt phi2(const Multiset& x, int u, int v);

/// Visits kappa(e) in ascending lexicographic order of the sorted element tuple,
/// e.g. {1,1,3} before {1,3,3}. The same Multiset object is reused across calls.
template <typename Fn>
void for_each_kappa(std::span<const int> edge, int r, Fn&& fn) {
    const int k = static_cast<int>(edge.size());
    if (k == 0 || k > r) throw PreconditionError("for_each_kappa: need 1 <= |e| <= r");
    Multiset x;
    x.support.assign(edge.begin(), edge.end());
    x.mult.assign(k, 1);
    // extras[i] = mult[i] - 1, summing to r - k, visited in descending lex order
    std::vector<int> extras(k, 0);
    extras[0] = r - k;
    for (;;) {
        for (int i = 0; i < k; ++i) x.mult[i] = extras[i] + 1;
        fn(static_cast<const Multiset&>(x));
        int p = k - 2;
        while (p >= 0 && extras[p] == 0) --p;
        if (p < 0) break;
        --extras[p];
        int tail = 1;
        for (int i = p + 1; i < k; ++i) {
            tail += extras[i];
            extras[i] = 0;
        }
        extras[p + 1] = tail;
    }
}

/// Visits beta(e): every tuple in e^r covering e, in lexicographic tuple order.
/// Intended for oracles and baselines; cost |e|^r.
template <typename Fn>
void for_each_beta(std::span<const int> edge, int r, Fn&& fn) {
    const int k = static_cast<int>(edge.size());
    if (k == 0 || k > r) throw PreconditionError("for_each_beta: need 1 <= |e| <= r");
    std::vector<int> idx(r, 0);     // odometer over positions in `edge`
    std::vector<int> tuple(r, edge[0]);
    std::vector<int> seen(k, 0);
    for (;;) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int j = 0; j < r; ++j) seen[idx[j]] = 1;
        bool covers = true;
        for (int i = 0; i < k; ++i) covers = covers && seen[i] != 0;
        if (covers) {
            for (int j = 0; j < r; ++j) tuple[j] = edge[idx[j]];
            fn(std::span<const int>(tuple));
        }
        int j = r - 1;
        while (j >= 0 && idx[j] == k - 1) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
    }
}

std::vector<Multiset> enumerate_kappa(std::span<const int> edge, int r);
std::vector<std::vector<int>> enumerate_beta(std::span<const int> edge, int r);

}  // namespace hyten
