#include "hyten/cp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "hyten/combinatorics.hpp"
#include "hyten/parallel.hpp"

namespace hyten {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// duplicate edges overlay the same blowup positions, so their weights add
std::map<std::vector<int>, double> grouped_weights(const Hypergraph& h, bool banerjee) {
    std::map<std::vector<int>, double> groups;
    for (int e = 0; e < h.edge_count(); ++e) {
        double w = banerjee ? edge_weight(h, e, WeightScheme::banerjee) : h.weight(e);
        groups[h.edge(e)] += w;
    }
    return groups;
}

}  // namespace

ImplicitTensor adjacency_tensor(const Hypergraph& h, const KernelOptions& opts) {
    ImplicitTensor t;
    t.n = h.vertex_count();
    t.order = h.rank();
    double norm_sq = 0.0;
    for (const auto& [edge, w] : grouped_weights(h, /*banerjee=*/false))
        norm_sq += w * w * to_double(blowup_count(static_cast<int>(edge.size()), h.rank()));
    t.norm_sq = norm_sq;
    t.ttsv1 = [h, opts](const DenseVector& b) { return ttsv1_auto(h, b, opts); };
    return t;
}

DenseVector laplacian_ttsv1(const Hypergraph& h, const DenseVector& x, const KernelOptions& opts) {
    DenseVector d = degrees(h);
    if (d.minCoeff() < 1.0)
        throw PreconditionError("laplacian: every vertex needs degree >= 1");
    const double r = static_cast<double>(h.rank());
    DenseVector dinv = d.array().pow(-1.0 / r).matrix();
    Hypergraph hb = h.scheme() == WeightScheme::banerjee ? h : reweighted(h, WeightScheme::banerjee);
    DenseVector inner = ttsv1_auto(hb, dinv.cwiseProduct(x), opts);
    return (x.array().pow(r - 1.0) - (dinv.cwiseProduct(inner)).array()).matrix();
}

ImplicitTensor laplacian_tensor(const Hypergraph& h, const KernelOptions& opts) {
    DenseVector d = degrees(h);
    if (d.minCoeff() < 1.0)
        throw PreconditionError("laplacian: every vertex needs degree >= 1");
    ImplicitTensor t;
    t.n = h.vertex_count();
    t.order = h.rank();
    const int r = h.rank();
    // || I - A'' ||^2 where A'' is the degree-scaled Banerjee adjacency:
    // n  -  2 <I, A''> (constant tuples arise only from singleton edges)  +  ||A''||^2
    double norm_sq = static_cast<double>(t.n);
    const double scale = factorial(r);
    for (const auto& [edge, w] : grouped_weights(h, /*banerjee=*/true)) {
        if (edge.size() == 1) norm_sq -= 2.0 * w / d[edge[0]];
        std::vector<double> cs(edge.size());
        for (std::size_t i = 0; i < edge.size(); ++i)
            cs[i] = std::pow(d[edge[i]], -2.0 / r);
        // sum over blowup tuples of the per-position degree scalings
        norm_sq += w * w * scale * edge_coeff(0.0, cs, r, opts.genfn);
    }
    t.norm_sq = norm_sq;
    KernelOptions kopts = opts;
    t.ttsv1 = [h, kopts](const DenseVector& x) { return laplacian_ttsv1(h, x, kopts); };
    return t;
}

double cp_objective(const ImplicitTensor& t, const CPModel& m) {
    const int q = m.dimension();
    if (m.factors.rows() != t.n || m.factors.cols() != q)
        throw PreconditionError("cp: model dimensions do not match the tensor");
    const double r = static_cast<double>(t.order);
    DenseMatrix gram = m.factors.transpose() * m.factors;
    double lin = 0.0;
    for (int j = 0; j < q; ++j) lin += m.lambda[j] * t.ttsv1(m.factors.col(j)).dot(m.factors.col(j));
    double quad = 0.0;
    for (int j = 0; j < q; ++j)
        for (int k = 0; k < q; ++k)
            quad += m.lambda[j] * m.lambda[k] * std::pow(gram(j, k), r);
    return t.norm_sq - 2.0 * lin + quad;
}

double cp_objective(const Hypergraph& h, const CPModel& m, const KernelOptions& opts) {
    return cp_objective(adjacency_tensor(h, opts), m);
}

std::pair<DenseVector, DenseMatrix> cp_gradients(const ImplicitTensor& t, const CPModel& m) {
    const int q = m.dimension();
    if (m.factors.rows() != t.n || m.factors.cols() != q)
        throw PreconditionError("cp: model dimensions do not match the tensor");
    const double r = static_cast<double>(t.order);
    DenseMatrix gram = m.factors.transpose() * m.factors;
    DenseVector grad_lambda(q);
    DenseMatrix grad_factors(t.n, q);
    for (int j = 0; j < q; ++j) {
        DenseVector t1 = t.ttsv1(m.factors.col(j));
        double sum_r = 0.0;
        DenseVector sum_vec = DenseVector::Zero(t.n);
        for (int k = 0; k < q; ++k) {
            sum_r += m.lambda[k] * std::pow(gram(j, k), r);
            sum_vec += m.lambda[k] * std::pow(gram(j, k), r - 1.0) * m.factors.col(k);
        }
        grad_lambda[j] = -2.0 * (t1.dot(m.factors.col(j)) - sum_r);
        grad_factors.col(j) = -2.0 * r * m.lambda[j] * (t1 - sum_vec);
    }
    return {grad_lambda, grad_factors};
}

std::pair<DenseVector, DenseMatrix> cp_gradients(const Hypergraph& h, const CPModel& m,
                                                 const KernelOptions& opts) {
    return cp_gradients(adjacency_tensor(h, opts), m);
}

CpFitResult cp_fit(const ImplicitTensor& t, int q, const CpFitOptions& opts) {
    if (q < 1) throw PreconditionError("cp_fit: q must be >= 1");
    std::mt19937_64 rng(opts.seed);
    CPModel model;
    model.lambda = DenseVector::Ones(q);
    model.factors.resize(t.n, q);
    const double span = 1.0 / std::sqrt(static_cast<double>(t.n));
    for (int j = 0; j < q; ++j)
        for (int i = 0; i < t.n; ++i) model.factors(i, j) = (2.0 * uniform01(rng) - 1.0) * span;

    CpFitResult res;
    double f = cp_objective(t, model);
    if (!std::isfinite(f)) throw ConvergenceError("cp_fit: objective not finite at the start");
    res.objective_trace.push_back(f);
    double step = opts.initial_step;
    for (int it = 0; it < opts.max_steps; ++it) {
        auto [gl, gf] = cp_gradients(t, model);
        double gnorm2 = gl.squaredNorm() + gf.squaredNorm();
        res.final_grad_norm = std::sqrt(gnorm2);
        if (res.final_grad_norm <= opts.grad_tol) {
            res.converged = true;
            break;
        }
        bool accepted = false;
        while (step >= opts.min_step) {
            CPModel cand;
            cand.lambda = model.lambda - step * gl;
            cand.factors = model.factors - step * gf;
            double fc = cp_objective(t, cand);
            if (std::isfinite(fc) && fc <= f - 1e-4 * step * gnorm2) {
                model = std::move(cand);
                f = fc;
                accepted = true;
                break;
            }
            if (std::isnan(fc) && step <= opts.min_step * 2.0)
                throw ConvergenceError("cp_fit diverged: objective is NaN after " +
                                       std::to_string(res.steps) + " accepted steps");
            step *= opts.step_shrink;
        }
        if (!accepted) break;  // line search exhausted: we are at numerical stationarity
        ++res.steps;
        res.objective_trace.push_back(f);
        step = std::min(step * opts.step_growth, opts.max_step);
    }
    res.model = std::move(model);
    return res;
}

CpFitResult cp_fit(const Hypergraph& h, int q, const CpFitOptions& opts) {
    return cp_fit(adjacency_tensor(h), q, opts);
}

namespace {

double sq_dist(const DenseMatrix& pts, int i, const DenseMatrix& centers, int c) {
    return (pts.row(i) - centers.row(c)).squaredNorm();
}

ClusterAssignment kmeans_single(const DenseMatrix& pts, int k, int max_iter, std::uint64_t seed) {
    const int n = static_cast<int>(pts.rows());
    std::mt19937_64 rng(seed);
    DenseMatrix centers(k, pts.cols());
    // k-means++ seeding
    centers.row(0) = pts.row(static_cast<int>(uniform01(rng) * n) % n);
    DenseVector dist2 = DenseVector::Constant(n, std::numeric_limits<double>::infinity());
    for (int c = 1; c < k; ++c) {
        for (int i = 0; i < n; ++i)
            dist2[i] = std::min(dist2[i], (pts.row(i) - centers.row(c - 1)).squaredNorm());
        double total = dist2.sum();
        int pick = n - 1;
        if (total > 0.0) {
            double target = uniform01(rng) * total, acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += dist2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<int>(uniform01(rng) * n) % n;
        }
        centers.row(c) = pts.row(pick);
    }

    std::vector<int> labels(n, 0);
    for (int it = 0; it < max_iter; ++it) {
        bool moved = false;
        for (int i = 0; i < n; ++i) {
            int best = labels[i];
            double bd = sq_dist(pts, i, centers, best);
            for (int c = 0; c < k; ++c) {
                double d = sq_dist(pts, i, centers, c);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            if (best != labels[i]) {
                labels[i] = best;
                moved = true;
            }
        }
        DenseMatrix sums = DenseMatrix::Zero(k, pts.cols());
        std::vector<int> counts(k, 0);
        for (int i = 0; i < n; ++i) {
            sums.row(labels[i]) += pts.row(i);
            ++counts[labels[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                centers.row(c) = sums.row(c) / counts[c];
            } else {
                // empty cluster: grab the point farthest from its center
                int far = 0;
                double fd = -1.0;
                for (int i = 0; i < n; ++i) {
                    double d = sq_dist(pts, i, centers, labels[i]);
                    if (d > fd) {
                        fd = d;
                        far = i;
                    }
                }
                centers.row(c) = pts.row(far);
                labels[far] = c;
                moved = true;
            }
        }
        if (!moved && it > 0) break;
    }
    ClusterAssignment out;
    out.labels = labels;
    out.centers = centers;
    out.inertia = 0.0;
    for (int i = 0; i < n; ++i) out.inertia += sq_dist(pts, i, centers, labels[i]);
    return out;
}

}  // namespace

ClusterAssignment kmeans(const DenseMatrix& points, int k, const KMeansOptions& opts) {
    const int n = static_cast<int>(points.rows());
    if (k < 1 || k > n) throw PreconditionError("kmeans: need 1 <= k <= n");
    std::vector<ClusterAssignment> runs(opts.restarts);
    parallel_for(opts.restarts, [&](std::int64_t i) {
        runs[static_cast<std::size_t>(i)] =
            kmeans_single(points, k, opts.max_iter, opts.seed + static_cast<std::uint64_t>(i));
    }, opts.serial);
    int best = 0;
    for (int i = 1; i < opts.restarts; ++i)
        if (runs[i].inertia < runs[best].inertia) best = i;
    return runs[best];
}

std::pair<CpFitResult, ClusterAssignment> embed_and_cluster(const Hypergraph& h, int q, int k,
                                                            const EmbedOptions& opts) {
    if (k > h.vertex_count()) throw PreconditionError("embed_and_cluster: k exceeds vertex count");
    ImplicitTensor t =
        opts.use_laplacian ? laplacian_tensor(h, opts.kernel) : adjacency_tensor(h, opts.kernel);
    CpFitResult fit = cp_fit(t, q, opts.fit);
    ClusterAssignment clusters = kmeans(fit.model.factors, k, opts.cluster);
    return {std::move(fit), std::move(clusters)};
}

}  // namespace hyten
