#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyten/combinatorics.hpp"
#include "hyten/cp.hpp"
#include "test_util.hpp"

using namespace hyten;

namespace {

// dense order-r adjacency table for oracle-scale instances
std::vector<double> dense_adjacency(const Hypergraph& h) {
    int n = h.vertex_count(), r = h.rank();
    std::int64_t size = 1;
    for (int i = 0; i < r; ++i) size *= n;
    std::vector<double> table(size, 0.0);
    for (int e = 0; e < h.edge_count(); ++e) {
        double w = h.weight(e);
        for_each_beta(h.edge(e), r, [&](std::span<const int> t) {
            std::int64_t flat = 0;
            for (int v : t) flat = flat * n + v;
            table[flat] += w;
        });
    }
    return table;
}

// || A - sum_j lambda_j E_j^{(x) r} ||^2 from fully materialized tensors
double objective_oracle(const Hypergraph& h, const CPModel& m) {
    int n = h.vertex_count(), r = h.rank();
    std::vector<double> table = dense_adjacency(h);
    double acc = 0.0;
    std::vector<int> digits(r, 0);
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        std::int64_t f = static_cast<std::int64_t>(flat);
        for (int j = r - 1; j >= 0; --j) {
            digits[j] = static_cast<int>(f % n);
            f /= n;
        }
        double model = 0.0;
        for (int j = 0; j < m.dimension(); ++j) {
            double p = m.lambda[j];
            for (int d : digits) p *= m.factors(d, j);
            model += p;
        }
        double diff = table[flat] - model;
        acc += diff * diff;
    }
    return acc;
}

// dense normalized Laplacian contraction, as the oracle for the Hadamard identity path
DenseVector laplacian_oracle(const Hypergraph& h, const DenseVector& x) {
    int n = h.vertex_count(), r = h.rank();
    DenseVector d = degrees(h);
    std::int64_t size = 1;
    for (int i = 0; i < r; ++i) size *= n;
    std::vector<double> table(size, 0.0);
    // unit diagonal
    for (int v = 0; v < n; ++v) {
        std::int64_t flat = 0;
        for (int i = 0; i < r; ++i) flat = flat * n + v;
        table[flat] += 1.0;
    }
    for (int e = 0; e < h.edge_count(); ++e) {
        double w = edge_weight(h, e, WeightScheme::banerjee);
        for_each_beta(h.edge(e), r, [&](std::span<const int> t) {
            std::int64_t flat = 0;
            double scale = 1.0;
            for (int v : t) {
                flat = flat * n + v;
                scale *= std::pow(d[v], -1.0 / r);
            }
            table[flat] -= scale * w;
        });
    }
    DenseVector out = DenseVector::Zero(n);
    std::vector<int> digits(r, 0);
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
        if (table[flat] == 0.0) continue;
        std::int64_t f = static_cast<std::int64_t>(flat);
        for (int j = r - 1; j >= 0; --j) {
            digits[j] = static_cast<int>(f % n);
            f /= n;
        }
        double p = table[flat];
        for (int j = 1; j < r; ++j) p *= x[digits[j]];
        out[digits[0]] += p;
    }
    return out;
}

CPModel random_model(std::mt19937_64& rng, int n, int q) {
    CPModel m;
    m.lambda = DenseVector(q);
    m.factors = DenseMatrix(n, q);
    for (int j = 0; j < q; ++j) {
        m.lambda[j] = test::uniform_in(rng, -1.0, 1.5);
        for (int i = 0; i < n; ++i) m.factors(i, j) = test::uniform_in(rng, -1.0, 1.0);
    }
    return m;
}

Hypergraph connected_no_isolated(std::mt19937_64& rng, int n_max, int m_max, int r_max) {
    for (;;) {
        Hypergraph h = test::random_connected_hypergraph(rng, n_max, m_max, r_max);
        if (degrees(h).minCoeff() >= 1.0) return h;
    }
}

}  // namespace

TEST_CASE("cp_objective: zero model and norm identity") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 20; ++t) {
        Hypergraph h = test::random_hypergraph(rng, 5, 5, 4);
        CPModel zero;
        int q = 2;
        zero.lambda = DenseVector::Zero(q);
        zero.factors = DenseMatrix::Random(h.vertex_count(), q);
        double f = cp_objective(h, zero);
        // lambda = 0 leaves exactly ||A||^2 = sum over blowup entries
        std::vector<double> table = dense_adjacency(h);
        double norm_sq = 0.0;
        for (double a : table) norm_sq += a * a;
        CHECK(test::close(f, norm_sq, 1e-12));
    }
}

TEST_CASE("cp_objective matches the materialized tensor oracle") {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 25; ++t) {
        Hypergraph h = test::random_hypergraph(rng, 5, 5, 4);
        CPModel m = random_model(rng, h.vertex_count(), 1 + static_cast<int>(test::uniform01(rng) * 3));
        double fast = cp_objective(h, m);
        double slow = objective_oracle(h, m);
        CHECK(test::close(fast, slow, 1e-9));
        CHECK(fast >= -1e-9);
    }
}

TEST_CASE("rank-2 matrix case: eigendecomposition reaches objective zero") {
    // 1-edge rank-2 hypergraph: the adjacency tensor is a 2x2 symmetric matrix
    Hypergraph h(2, {{0, 1}}, WeightScheme::unit);
    Eigen::Matrix2d a;
    a << 0, 1, 1, 0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a);
    CPModel m;
    m.lambda = es.eigenvalues();
    m.factors = es.eigenvectors();
    CHECK(cp_objective(h, m) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("cp_gradients: zero cases") {
    Hypergraph h(4, {{0, 1, 2}, {1, 3}});
    int q = 3;
    CPModel m;
    m.lambda = DenseVector::Ones(q);
    m.factors = DenseMatrix::Zero(4, q);
    auto [gl, gf] = cp_gradients(h, m);
    CHECK(gl.cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng(71);
    CPModel m2 = random_model(rng, 4, q);
    m2.lambda[1] = 0.0;
    auto [gl2, gf2] = cp_gradients(h, m2);
    CHECK(gf2.col(1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cp_gradients agree with central finite differences") {
    std::mt19937_64 rng(73);
    const double step = 1e-5;
    for (int t = 0; t < 50; ++t) {
        Hypergraph h = test::random_hypergraph(rng, 10, 6, 5);
        int q = 1 + static_cast<int>(test::uniform01(rng) * 3);
        CPModel m = random_model(rng, h.vertex_count(), q);
        ImplicitTensor tensor = adjacency_tensor(h);
        auto [gl, gf] = cp_gradients(tensor, m);
        for (int j = 0; j < q; ++j) {
            CPModel up = m, dn = m;
            up.lambda[j] += step;
            dn.lambda[j] -= step;
            double fd = (cp_objective(tensor, up) - cp_objective(tensor, dn)) / (2 * step);
            CHECK(test::close(gl[j], fd, 1e-5));
        }
        for (int j = 0; j < q; ++j)
            for (int i = 0; i < h.vertex_count(); ++i) {
                CPModel up = m, dn = m;
                up.factors(i, j) += step;
                dn.factors(i, j) -= step;
                double fd = (cp_objective(tensor, up) - cp_objective(tensor, dn)) / (2 * step);
                CHECK(test::close(gf(i, j), fd, 1e-5));
            }
    }
}

TEST_CASE("cp_fit: monotone trace, gradient stopping, recovery at r=2") {
    std::mt19937_64 rng(79);
    for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
        Hypergraph h = test::random_hypergraph(rng, 6, 6, 4);
        CpFitOptions opts;
        opts.seed = seed;
        opts.max_steps = 60;
        CpFitResult res = cp_fit(h, 2, opts);
        for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
            CHECK(res.objective_trace[i] <= res.objective_trace[i - 1]);
        CHECK(res.objective_trace.back() <= res.objective_trace.front());
        if (res.converged) CHECK(res.final_grad_norm <= opts.grad_tol);
    }

    // r=2, q >= n: descent reproduces the matrix 2I + J (pairs plus tripled
    // singleton edges put weight on the diagonal)
    std::vector<std::vector<int>> pe = {{0, 1}, {1, 2}, {0, 2}};
    for (int v = 0; v < 3; ++v)
        for (int c = 0; c < 3; ++c) pe.push_back({v});
    Hypergraph psd(3, std::move(pe), WeightScheme::unit);
    CpFitOptions opts;
    opts.seed = 3;
    opts.max_steps = 5000;
    opts.grad_tol = 1e-11;
    CpFitResult res = cp_fit(psd, 3, opts);
    CHECK(std::abs(res.objective_trace.back()) <= 1e-10);
    Eigen::Matrix3d want;
    want << 3, 1, 1, 1, 3, 1, 1, 1, 3;
    Eigen::Matrix3d got = Eigen::Matrix3d::Zero();
    for (int j = 0; j < 3; ++j)
        got += res.model.lambda[j] * res.model.factors.col(j) * res.model.factors.col(j).transpose();
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("laplacian_ttsv1: graph case, kernel vector, explicit oracle") {
    // single edge {0,1} at r=2: L = [[1,-1],[-1,1]] acting on x
    Hypergraph h(2, {{0, 1}});
    DenseVector ones = DenseVector::Ones(2);
    CHECK(laplacian_ttsv1(h, ones).cwiseAbs().maxCoeff() <= 1e-14);
    DenseVector x(2);
    x << 2.0, -1.0;
    DenseVector lx = laplacian_ttsv1(h, x);
    CHECK(lx[0] == doctest::Approx(3.0));
    CHECK(lx[1] == doctest::Approx(-3.0));

    std::mt19937_64 rng(83);
    for (int t = 0; t < 20; ++t) {
        Hypergraph g = connected_no_isolated(rng, 5, 5, 4);
        // d^{[1/r]} is in the kernel under Banerjee weights
        DenseVector d = degrees(g);
        DenseVector dk = d.array().pow(1.0 / g.rank()).matrix();
        CHECK(laplacian_ttsv1(g, dk).cwiseAbs().maxCoeff() <= 1e-9 * dk.norm());
        // general x against the materialized Laplacian tensor
        DenseVector x2 = test::random_vector(rng, g.vertex_count(), -1.5, 1.5);
        DenseVector fast = laplacian_ttsv1(g, x2);
        DenseVector slow = laplacian_oracle(g, x2);
        CHECK(test::close(fast, slow, 1e-9));
    }

    Hypergraph isolated(3, {{0, 1}});
    CHECK_THROWS_AS(laplacian_ttsv1(isolated, DenseVector::Ones(3)), PreconditionError);
}

TEST_CASE("laplacian tensor norm matches the materialized tensor") {
    std::mt19937_64 rng(89);
    for (int t = 0; t < 15; ++t) {
        Hypergraph g = connected_no_isolated(rng, 5, 5, 4);
        ImplicitTensor lap = laplacian_tensor(g);
        // materialize
        int n = g.vertex_count(), r = g.rank();
        DenseVector d = degrees(g);
        std::int64_t size = 1;
        for (int i = 0; i < r; ++i) size *= n;
        std::vector<double> table(size, 0.0);
        for (int v = 0; v < n; ++v) {
            std::int64_t flat = 0;
            for (int i = 0; i < r; ++i) flat = flat * n + v;
            table[flat] += 1.0;
        }
        for (int e = 0; e < g.edge_count(); ++e) {
            double w = edge_weight(g, e, WeightScheme::banerjee);
            for_each_beta(g.edge(e), r, [&](std::span<const int> t2) {
                std::int64_t flat = 0;
                double scale = 1.0;
                for (int v : t2) {
                    flat = flat * n + v;
                    scale *= std::pow(d[v], -1.0 / r);
                }
                table[flat] -= scale * w;
            });
        }
        double norm_sq = 0.0;
        for (double a : table) norm_sq += a * a;
        CHECK(test::close(lap.norm_sq, norm_sq, 1e-9));
    }
}

TEST_CASE("kmeans edge cases") {
    std::mt19937_64 rng(97);
    DenseMatrix pts(6, 2);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 2; ++j) pts(i, j) = test::uniform_in(rng, -1, 1);

    ClusterAssignment one = kmeans(pts, 1);
    CHECK(std::all_of(one.labels.begin(), one.labels.end(), [](int l) { return l == 0; }));
    Eigen::RowVector2d mean = pts.colwise().mean();
    double var = 0.0;
    for (int i = 0; i < 6; ++i) var += (pts.row(i) - mean).squaredNorm();
    CHECK(one.inertia == doctest::Approx(var).epsilon(1e-10));

    ClusterAssignment all = kmeans(pts, 6);
    CHECK(all.inertia <= 1e-18);

    CHECK_THROWS_AS(kmeans(pts, 7), PreconditionError);
    CHECK_THROWS_AS(kmeans(pts, 0), PreconditionError);
}

TEST_CASE("embed_and_cluster separates planted components") {
    // two disjoint 4-cliques; zero inter-cluster edges
    std::vector<std::vector<int>> edges;
    for (int base : {0, 4})
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) edges.push_back({base + a, base + b});
    Hypergraph h(8, std::move(edges));
    for (std::uint64_t seed : {0ull, 5ull, 11ull}) {
        EmbedOptions opts;
        opts.fit.seed = seed;
        opts.fit.max_steps = 2000;
        opts.fit.grad_tol = 1e-10;
        opts.cluster.seed = seed;
        auto [fit, clusters] = embed_and_cluster(h, 2, 2, opts);
        REQUIRE(clusters.labels.size() == 8);
        for (int v = 1; v < 4; ++v) CHECK(clusters.labels[v] == clusters.labels[0]);
        for (int v = 5; v < 8; ++v) CHECK(clusters.labels[v] == clusters.labels[4]);
        CHECK(clusters.labels[0] != clusters.labels[4]);
    }
}

TEST_CASE("embed_and_cluster: k=n and k=1") {
    Hypergraph h(4, {{0, 1}, {1, 2}, {2, 3}});
    EmbedOptions opts;
    opts.fit.max_steps = 150;
    auto [fit1, c1] = embed_and_cluster(h, 2, 1, opts);
    CHECK(std::all_of(c1.labels.begin(), c1.labels.end(), [](int l) { return l == 0; }));
    auto [fitn, cn] = embed_and_cluster(h, 2, 4, opts);
    CHECK(cn.inertia <= 1e-16);
    CHECK_THROWS_AS(embed_and_cluster(h, 2, 5, opts), PreconditionError);
}

TEST_CASE("laplacian embedding runs end to end") {
    std::mt19937_64 rng(101);
    Hypergraph h = connected_no_isolated(rng, 8, 8, 4);
    EmbedOptions opts;
    opts.use_laplacian = true;
    opts.fit.max_steps = 60;
    auto [fit, clusters] = embed_and_cluster(h, 2, 2, opts);
    CHECK(fit.objective_trace.back() <= fit.objective_trace.front());
}
