#include "hyten/ttsv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "hyten/combinatorics.hpp"
#include "hyten/parallel.hpp"

namespace hyten {

namespace {

void check_vector(const Hypergraph& h, const DenseVector& b) {
    if (b.size() != h.vertex_count())
        throw PreconditionError("ttsv: vector length does not match vertex count");
}

double int_pow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// (r-1)! / prod(m_i!) for the current multiset, as a double (exact table lookups)
double phi1_base(const Multiset& x, int r) {
    double f = factorial(r - 1);
    for (int m : x.mult) f /= factorial(m);
    return f;
}

double phi2_base(const Multiset& x, int r) {
    double f = factorial(r - 2);
    for (int m : x.mult) f /= factorial(m);
    return f;
}

void require_double_factorials(int r) {
    if (r - 1 > 170)
        throw NumericError("rank " + std::to_string(r) +
                           " exceeds the double-precision factorial range (r-1 > 170)");
}

void require_safety(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts) {
    require_double_factorials(h.rank());
    if (opts.skip_safety_check) return;
    SafetyReport rep = safety_check(h, b);
    if (!rep.safe)
        throw NumericError("unsafe coefficient regime: min |b| = " + std::to_string(rep.b_min) +
                           " with r = " + std::to_string(rep.r) +
                           " underflows b_min^r / r!; rescale b or use the unordered kernel");
}

std::int64_t explicit_table_size(const Hypergraph& h, const KernelOptions& opts) {
    double entries = std::pow(static_cast<double>(h.vertex_count()), h.rank());
    if (!(entries <= opts.explicit_entry_budget))
        throw CapacityError("explicit tensor needs n^r = " + std::to_string(entries) +
                            " entries, over the configured budget of " +
                            std::to_string(opts.explicit_entry_budget));
    return static_cast<std::int64_t>(entries);
}

// dense order-r adjacency table, index i1 most significant
std::vector<double> materialize_adjacency(const Hypergraph& h, const KernelOptions& opts) {
    std::int64_t size = explicit_table_size(h, opts);
    std::vector<double> table(static_cast<std::size_t>(size), 0.0);
    const std::int64_t n = h.vertex_count();
    for (int e = 0; e < h.edge_count(); ++e) {
        check_cancel(opts.cancel);
        double w = h.weight(e);
        for_each_beta(h.edge(e), h.rank(), [&](std::span<const int> t) {
            std::int64_t flat = 0;
            for (int v : t) flat = flat * n + v;
            table[static_cast<std::size_t>(flat)] += w;
        });
    }
    return table;
}

void check_ordered_budget(const Hypergraph& h, const KernelOptions& opts) {
    double total = 0.0;
    for (const auto& e : h.edges())
        total += to_double(blowup_count(static_cast<int>(e.size()), h.rank()));
    if (!(total <= opts.ordered_tuple_budget))
        throw CapacityError("ordered baseline would visit " + std::to_string(total) +
                            " blowup tuples, over the configured budget of " +
                            std::to_string(opts.ordered_tuple_budget));
}

}  // namespace

std::string to_string(TtsvAlgo a) {
    switch (a) {
        case TtsvAlgo::explicit_tensor: return "explicit";
        case TtsvAlgo::ordered: return "ordered";
        case TtsvAlgo::unordered: return "unordered";
        case TtsvAlgo::genfn: return "genfn";
    }
    return "?";
}

DenseVector ttsv1_explicit(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts) {
    check_vector(h, b);
    check_cancel(opts.cancel);
    const std::vector<double> table = materialize_adjacency(h, opts);
    const int n = h.vertex_count();
    const int r = h.rank();
    DenseVector s = DenseVector::Zero(n);
    if (n == 0) return s;
    std::int64_t block = static_cast<std::int64_t>(table.size()) / n;
    std::vector<int> digits(r - 1);
    for (int v = 0; v < n; ++v) {
        check_cancel(opts.cancel);
        KahanAccumulator acc;
        for (std::int64_t rest = 0; rest < block; ++rest) {
            double a = table[static_cast<std::size_t>(v * block + rest)];
            if (a == 0.0) continue;
            std::int64_t f = rest;
            double prod = 1.0;
            for (int j = r - 2; j >= 0; --j) {
                digits[j] = static_cast<int>(f % n);
                f /= n;
            }
            for (int j = 0; j < r - 1; ++j) prod *= b[digits[j]];
            acc.add(a * prod);
        }
        s[v] = acc.value();
    }
    return s;
}

void ttsv1_ordered_edge(const Hypergraph& h, int e, const DenseVector& b,
                        std::span<KahanAccumulator> acc) {
    const double w = h.weight(e);
    for_each_beta(h.edge(e), h.rank(), [&](std::span<const int> t) {
        double prod = w;
        for (std::size_t j = 1; j < t.size(); ++j) prod *= b[t[j]];
        acc[t[0]].add(prod);
    });
}

DenseVector ttsv1_ordered(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts) {
    check_vector(h, b);
    check_cancel(opts.cancel);
    check_ordered_budget(h, opts);
    std::vector<KahanAccumulator> acc(h.vertex_count());
    for (int e = 0; e < h.edge_count(); ++e) {
        check_cancel(opts.cancel);
        ttsv1_ordered_edge(h, e, b, acc);
    }
    DenseVector s(h.vertex_count());
    for (int v = 0; v < h.vertex_count(); ++v) s[v] = acc[v].value();
    return s;
}

void ttsv1_unordered_edge(const Hypergraph& h, int e, const DenseVector& b,
                          std::span<KahanAccumulator> acc) {
    const double w = h.weight(e);
    const int r = h.rank();
    const auto& edge = h.edge(e);
    const int k = static_cast<int>(edge.size());
    std::vector<double> prefix(k + 1), suffix(k + 1);
    for_each_kappa(edge, r, [&](const Multiset& x) {
        double base = phi1_base(x, r);
        prefix[0] = 1.0;
        for (int i = 0; i < k; ++i) prefix[i + 1] = prefix[i] * int_pow(b[edge[i]], x.mult[i]);
        suffix[k] = 1.0;
        for (int i = k - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * int_pow(b[edge[i]], x.mult[i]);
        for (int i = 0; i < k; ++i) {
            // phi_1(x, v) * prod of b over x with one copy of v removed; division-free
            double phi = base * x.mult[i];
            double prod = prefix[i] * suffix[i + 1] * int_pow(b[edge[i]], x.mult[i] - 1);
            acc[edge[i]].add(w * phi * prod);
        }
    });
}

DenseVector ttsv1_unordered(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts) {
    check_vector(h, b);
    check_cancel(opts.cancel);
    require_double_factorials(h.rank());
    const int n = h.vertex_count();
    const int r = h.rank();
    DenseVector s = DenseVector::Zero(n);
    if (opts.serial || max_threads() == 1) {
        std::vector<KahanAccumulator> acc(n);
        for (int e = 0; e < h.edge_count(); ++e) {
            check_cancel(opts.cancel);
            ttsv1_unordered_edge(h, e, b, acc);
        }
        for (int v = 0; v < n; ++v) s[v] = acc[v].value();
        return s;
    }
    // vertex-major: one writer per slot, same per-slot accumulation order as the
    // edge-major serial path (edges ascending, multisets lexicographic)
    parallel_for(n, [&](std::int64_t v) {
        check_cancel(opts.cancel);
        KahanAccumulator acc;
        for (int e : h.incident_edges(static_cast<int>(v))) {
            const auto& edge = h.edge(e);
            const double w = h.weight(e);
            const int k = static_cast<int>(edge.size());
            int vi = static_cast<int>(std::lower_bound(edge.begin(), edge.end(), v) - edge.begin());
            for_each_kappa(edge, r, [&](const Multiset& x) {
                double phi = phi1_base(x, r) * x.mult[vi];
                double prod = int_pow(b[edge[vi]], x.mult[vi] - 1);
                for (int i = 0; i < k; ++i)
                    if (i != vi) prod *= int_pow(b[edge[i]], x.mult[i]);
                acc.add(w * phi * prod);
            });
        }
        s[v] = acc.value();
    }, opts.serial);
    return s;
}

void ttsv1_genfn_edge(const Hypergraph& h, int e, const DenseVector& b, const GenfnConfig& cfg,
                      std::span<KahanAccumulator> acc) {
    const auto& edge = h.edge(e);
    const double w = h.weight(e);
    const int target = h.rank() - 1;
    const double scale = factorial(target);
    std::vector<double> bs(edge.size() - 1);
    for (std::size_t i = 0; i < edge.size(); ++i) {
        for (std::size_t j = 0, o = 0; j < edge.size(); ++j)
            if (j != i) bs[o++] = b[edge[j]];
        acc[edge[i]].add(w * scale * edge_coeff(b[edge[i]], bs, target, cfg));
    }
}

DenseVector ttsv1_genfn(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts) {
    check_vector(h, b);
    check_cancel(opts.cancel);
    require_safety(h, b, opts);
    const int n = h.vertex_count();
    const int target = h.rank() - 1;
    const double scale = factorial(target);
    DenseVector s = DenseVector::Zero(n);
    if (opts.serial || max_threads() == 1) {
        std::vector<KahanAccumulator> acc(n);
        for (int e = 0; e < h.edge_count(); ++e) {
            check_cancel(opts.cancel);
            ttsv1_genfn_edge(h, e, b, opts.genfn, acc);
        }
        for (int v = 0; v < n; ++v) s[v] = acc[v].value();
        return s;
    }
    parallel_for(n, [&](std::int64_t v) {
        check_cancel(opts.cancel);
        KahanAccumulator acc;
        std::vector<double> bs;
        for (int e : h.incident_edges(static_cast<int>(v))) {
            const auto& edge = h.edge(e);
            bs.resize(edge.size() - 1);
            for (std::size_t j = 0, o = 0; j < edge.size(); ++j)
                if (edge[j] != v) bs[o++] = b[edge[j]];
            acc.add(h.weight(e) * scale * edge_coeff(b[v], bs, target, opts.genfn));
        }
        s[v] = acc.value();
    }, opts.serial);
    return s;
}

DenseVector ttsv1(const Hypergraph& h, const DenseVector& b, TtsvAlgo algo,
                  const KernelOptions& opts) {
    switch (algo) {
        case TtsvAlgo::explicit_tensor: return ttsv1_explicit(h, b, opts);
        case TtsvAlgo::ordered: return ttsv1_ordered(h, b, opts);
        case TtsvAlgo::unordered: return ttsv1_unordered(h, b, opts);
        case TtsvAlgo::genfn: return ttsv1_genfn(h, b, opts);
    }
    throw PreconditionError("unknown ttsv algorithm");
}

DenseVector ttsv1_auto(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts,
                       TtsvAlgo* chosen) {
    check_vector(h, b);
    bool gen_ok = h.rank() - 1 <= 170 && (opts.skip_safety_check || safety_check(h, b).safe);
    TtsvAlgo algo = gen_ok ? TtsvAlgo::genfn : TtsvAlgo::unordered;
    if (chosen) *chosen = algo;
    return ttsv1(h, b, algo, opts);
}

// --- TTSV2 ---

namespace {

// output slots: diagonal (u,u) wherever some containing edge has |e| < r,
// plus every co-occurring pair u < v
struct Ttsv2Pattern {
    std::vector<std::pair<int, int>> slots;  // ascending (u, v), u <= v
};

Ttsv2Pattern ttsv2_pattern(const Hypergraph& h) {
    Ttsv2Pattern p;
    const int n = h.vertex_count();
    const int r = h.rank();
    CliqueExpansion g = clique_expansion(h);
    for (int u = 0; u < n; ++u) {
        bool diag = false;
        for (int e : h.incident_edges(u))
            if (static_cast<int>(h.edge(e).size()) < r) {
                diag = true;
                break;
            }
        if (diag) p.slots.emplace_back(u, u);
        for (const auto& [v, w] : g.neighbors[u])
            if (v > u) p.slots.emplace_back(u, v);
    }
    return p;
}

std::vector<int> edges_containing_pair(const Hypergraph& h, int u, int v) {
    if (u == v) return h.incident_edges(u);
    const auto& eu = h.incident_edges(u);
    const auto& ev = h.incident_edges(v);
    std::vector<int> out;
    std::set_intersection(eu.begin(), eu.end(), ev.begin(), ev.end(), std::back_inserter(out));
    return out;
}

SymmetricMatrix assemble(int n, const std::vector<std::pair<int, int>>& slots,
                         const std::vector<double>& values) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(2 * slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        auto [u, v] = slots[i];
        trips.emplace_back(u, v, values[i]);
        if (u != v) trips.emplace_back(v, u, values[i]);
    }
    SymmetricMatrix m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

SymmetricMatrix ttsv2_by_slots(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts,
                               const std::function<double(int, int)>& slot_value) {
    check_vector(h, b);
    check_cancel(opts.cancel);
    Ttsv2Pattern pattern = ttsv2_pattern(h);
    std::vector<double> values(pattern.slots.size(), 0.0);
    parallel_for(static_cast<std::int64_t>(pattern.slots.size()), [&](std::int64_t i) {
        check_cancel(opts.cancel);
        auto [u, v] = pattern.slots[static_cast<std::size_t>(i)];
        values[static_cast<std::size_t>(i)] = slot_value(u, v);
    }, opts.serial);
    return assemble(h.vertex_count(), pattern.slots, values);
}

}  // namespace

SymmetricMatrix ttsv2_unordered(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts) {
    require_double_factorials(h.rank());
    const int r = h.rank();
    return ttsv2_by_slots(h, b, opts, [&](int u, int v) {
        KahanAccumulator acc;
        for (int e : edges_containing_pair(h, u, v)) {
            const auto& edge = h.edge(e);
            const double w = h.weight(e);
            const int k = static_cast<int>(edge.size());
            int ui = static_cast<int>(std::lower_bound(edge.begin(), edge.end(), u) - edge.begin());
            int vi = static_cast<int>(std::lower_bound(edge.begin(), edge.end(), v) - edge.begin());
            for_each_kappa(edge, r, [&](const Multiset& x) {
                if (u == v && x.mult[ui] < 2) return;  // no blowup repeats u
                double phi = phi2_base(x, r);
                phi *= u == v ? static_cast<double>(x.mult[ui]) * (x.mult[ui] - 1)
                              : static_cast<double>(x.mult[ui]) * x.mult[vi];
                double prod = 1.0;
                for (int i = 0; i < k; ++i) {
                    int m = x.mult[i] - (i == ui ? 1 : 0) - (i == vi ? 1 : 0);
                    prod *= int_pow(b[edge[i]], m);
                }
                acc.add(w * phi * prod);
            });
        }
        return acc.value();
    });
}

SymmetricMatrix ttsv2_genfn(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts) {
    require_safety(h, b, opts);
    const int target = h.rank() - 2;
    const double scale = factorial(target);
    return ttsv2_by_slots(h, b, opts, [&](int u, int v) {
        KahanAccumulator acc;
        std::vector<double> bs;
        for (int e : edges_containing_pair(h, u, v)) {
            const auto& edge = h.edge(e);
            bs.clear();
            for (int x : edge)
                if (x != u && x != v) bs.push_back(b[x]);
            double a = u == v ? b[u] : b[u] + b[v];
            acc.add(h.weight(e) * scale * edge_coeff(a, bs, target, opts.genfn));
        }
        return acc.value();
    });
}

SymmetricMatrix ttsv2_explicit(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts) {
    check_vector(h, b);
    check_cancel(opts.cancel);
    const std::vector<double> table = materialize_adjacency(h, opts);
    const int n = h.vertex_count();
    const int r = h.rank();
    std::map<std::pair<int, int>, KahanAccumulator> acc;
    const std::int64_t nn = n;
    std::vector<int> digits(r);
    for (std::int64_t f = 0; f < static_cast<std::int64_t>(table.size()); ++f) {
        double a = table[static_cast<std::size_t>(f)];
        if (a == 0.0) continue;
        std::int64_t rest = f;
        for (int j = r - 1; j >= 0; --j) {
            digits[j] = static_cast<int>(rest % nn);
            rest /= nn;
        }
        double prod = a;
        for (int j = 2; j < r; ++j) prod *= b[digits[j]];
        acc[{digits[0], digits[1]}].add(prod);
    }
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(acc.size());
    for (const auto& [uv, k] : acc) trips.emplace_back(uv.first, uv.second, k.value());
    SymmetricMatrix m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

SymmetricMatrix ttsv2_ordered(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts) {
    check_vector(h, b);
    check_cancel(opts.cancel);
    check_ordered_budget(h, opts);
    const int n = h.vertex_count();
    std::map<std::pair<int, int>, KahanAccumulator> acc;
    for (int e = 0; e < h.edge_count(); ++e) {
        check_cancel(opts.cancel);
        const double w = h.weight(e);
        for_each_beta(h.edge(e), h.rank(), [&](std::span<const int> t) {
            double prod = w;
            for (std::size_t j = 2; j < t.size(); ++j) prod *= b[t[j]];
            acc[{t[0], t[1]}].add(prod);
        });
    }
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(acc.size());
    for (const auto& [uv, k] : acc) trips.emplace_back(uv.first, uv.second, k.value());
    SymmetricMatrix m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

SymmetricMatrix ttsv2(const Hypergraph& h, const DenseVector& b, TtsvAlgo algo,
                      const KernelOptions& opts) {
    switch (algo) {
        case TtsvAlgo::explicit_tensor: return ttsv2_explicit(h, b, opts);
        case TtsvAlgo::ordered: return ttsv2_ordered(h, b, opts);
        case TtsvAlgo::unordered: return ttsv2_unordered(h, b, opts);
        case TtsvAlgo::genfn: return ttsv2_genfn(h, b, opts);
    }
    throw PreconditionError("unknown ttsv algorithm");
}

SymmetricMatrix ttsv2_auto(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts,
                           TtsvAlgo* chosen) {
    check_vector(h, b);
    bool gen_ok = h.rank() - 1 <= 170 && (opts.skip_safety_check || safety_check(h, b).safe);
    TtsvAlgo algo = gen_ok ? TtsvAlgo::genfn : TtsvAlgo::unordered;
    if (chosen) *chosen = algo;
    return ttsv2(h, b, algo, opts);
}

}  // namespace hyten
