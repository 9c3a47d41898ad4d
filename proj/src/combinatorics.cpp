#include "hyten/combinatorics.hpp"

#include <mutex>

namespace hyten {

namespace {

std::mutex stirling_mutex;
// triangle[n][k] = S(n, k) for k <= n, grown on demand
std::vector<std::vector<BigInt>> stirling_triangle{{BigInt(1)}};

}  // namespace

BigInt stirling2(int n, int k) {
    if (n < 0 || k < 0) throw PreconditionError("stirling2: negative argument");
    if (k > n) return 0;
    std::lock_guard<std::mutex> lock(stirling_mutex);
    while (static_cast<int>(stirling_triangle.size()) <= n) {
        int row = static_cast<int>(stirling_triangle.size());
        std::vector<BigInt> next(row + 1);
        next[0] = 0;
        next[row] = 1;
        const auto& prev = stirling_triangle.back();
        for (int j = 1; j < row; ++j) next[j] = j * prev[j] + prev[j - 1];
        stirling_triangle.push_back(std::move(next));
    }
    return stirling_triangle[n][k];
}

BigInt big_factorial(int n) {
    if (n < 0) throw PreconditionError("big_factorial: negative argument");
    BigInt acc = 1;
    for (int i = 2; i <= n; ++i) acc *= i;
    return acc;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;  // exact at every step
    }
    return acc;
}

BigInt blowup_count(int esize, int r) {
    if (esize < 1 || esize > r) throw PreconditionError("blowup_count: need 1 <= |e| <= r");
    return big_factorial(esize) * stirling2(r, esize);
}

BigInt unordered_count(int esize, int r) {
    if (esize < 1 || esize > r) throw PreconditionError("unordered_count: need 1 <= |e| <= r");
    return binomial(r - 1, r - esize);
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(171);
        long double acc = 1.0L;
        t[0] = 1.0;
        for (int i = 1; i <= 170; ++i) {
            acc *= i;
            t[i] = static_cast<double>(acc);
        }
        return t;
    }();
    if (n < 0) throw PreconditionError("factorial: negative argument");
    if (n > 170) return std::numeric_limits<double>::infinity();
    return table[n];
}

namespace {

BigInt phi_multinomial(const Multiset& x, int r, int fixed_u, int fixed_v, int k) {
    BigInt acc = big_factorial(r - k);
    for (std::size_t i = 0; i < x.support.size(); ++i) {
        int m = x.mult[i];
        if (x.support[i] == fixed_u) --m;
        if (k == 2 && x.support[i] == fixed_v) --m;
        if (m < 0) throw PreconditionError("phi: fixed multiplicity exceeds multiset multiplicity");
        acc /= big_factorial(m);  // divides exactly: multinomial coefficient
    }
    return acc;
}

}  // namespace

BigInt phi1(const Multiset& x, int u) {
    if (x.multiplicity_of(u) < 1) throw PreconditionError("phi1: vertex not in multiset");
    return phi_multinomial(x, x.size(), u, -1, 1);
}

BigInt phi2(const Multiset& x, int u, int v) {
    int need_u = (u == v) ? 2 : 1;
    if (x.multiplicity_of(u) < need_u || x.multiplicity_of(v) < 1)
        throw PreconditionError("phi2: fixed vertices not available in multiset");
    return phi_multinomial(x, x.size(), u, v, 2);
}

std::vector<Multiset> enumerate_kappa(std::span<const int> edge, int r) {
    std::vector<Multiset> out;
    for_each_kappa(edge, r, [&](const Multiset& x) { out.push_back(x); });
    return out;
}

std::vector<std::vector<int>> enumerate_beta(std::span<const int> edge, int r) {
    std::vector<std::vector<int>> out;
    for_each_beta(edge, r, [&](std::span<const int> t) { out.emplace_back(t.begin(), t.end()); });
    return out;
}

}  // namespace hyten
