#pragma once

#include <random>
#include <set>
#include <vector>

#include "hyten/hypergraph.hpp"

namespace hyten::test {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// componentwise relative error with a unit floor (absolute for tiny values)
inline bool close(double a, double b, double tol) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

inline bool close(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (!close(a[i], b[i], tol)) return false;
    return true;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// random hypergraph: n in [2, n_max], m in [1, m_max], sizes in [1, min(r_max, n)]
inline Hypergraph random_hypergraph(std::mt19937_64& rng, int n_max, int m_max, int r_max,
                                    WeightScheme scheme = WeightScheme::banerjee) {
    int n = 2 + static_cast<int>(uniform01(rng) * (n_max - 1));
    n = std::min(n, n_max);
    int m = 1 + static_cast<int>(uniform01(rng) * m_max);
    m = std::min(m, m_max);
    std::vector<std::vector<int>> edges;
    for (int e = 0; e < m; ++e) {
        int size = 1 + static_cast<int>(uniform01(rng) * std::min(r_max, n));
        size = std::min(size, std::min(r_max, n));
        std::set<int> verts;
        while (static_cast<int>(verts.size()) < size)
            verts.insert(static_cast<int>(uniform01(rng) * n) % n);
        edges.emplace_back(verts.begin(), verts.end());
    }
    std::vector<double> weights;
    if (scheme == WeightScheme::custom) {
        for (int e = 0; e < m; ++e) weights.push_back(uniform_in(rng, 0.2, 3.0));
    }
    return Hypergraph(n, std::move(edges), scheme, std::move(weights));
}

inline Hypergraph random_connected_hypergraph(std::mt19937_64& rng, int n_max, int m_max,
                                              int r_max) {
    for (;;) {
        Hypergraph h = random_hypergraph(rng, n_max, m_max, r_max);
        if (h.edge_count() > 0 && is_connected(h)) return h;
    }
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double lo = 0.1, double hi = 2.0) {
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b[i] = uniform_in(rng, lo, hi);
    return b;
}

}  // namespace hyten::test
