#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyten/centrality.hpp"
#include "test_util.hpp"

using namespace hyten;

TEST_CASE("single edge: full symmetry gives uniform scores") {
    Hypergraph h(3, {{0, 1, 2}});
    for (auto method : {CentralityMethod::hec, CentralityMethod::zec, CentralityMethod::cec}) {
        CentralityResult res = centrality(h, method);
        CHECK(res.scores.sum() == doctest::Approx(1.0).epsilon(1e-12));
        for (int v = 0; v < 3; ++v)
            CHECK(res.scores[v] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    }
}

TEST_CASE("preconditions: disconnected and edgeless inputs are rejected") {
    Hypergraph disconnected(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(hec(disconnected), PreconditionError);
    CHECK_THROWS_AS(zec(disconnected), PreconditionError);
    CHECK_THROWS_AS(cec(disconnected), PreconditionError);
    Hypergraph empty(3, {});
    CHECK_THROWS_AS(hec(empty), PreconditionError);
}

TEST_CASE("hec satisfies the H-eigen equation") {
    std::mt19937_64 rng(41);
    HecOptions opts;
    opts.tol = 1e-10;
    opts.max_iter = 20000;
    for (int t = 0; t < 15; ++t) {
        Hypergraph h = test::random_connected_hypergraph(rng, 30, 14, 5);
        CentralityResult res = hec(h, opts);
        CHECK(res.scores.minCoeff() > 0.0);
        CHECK(res.scores.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(res.eigenvalue > 0.0);
        // residual is ||ttsv1(x) - lambda x^{[r-1]}||_inf / lambda, recorded by the run
        CHECK(res.residual <= 10 * opts.tol);
    }
}

TEST_CASE("hec restarts agree") {
    std::mt19937_64 rng(43);
    HecOptions opts;
    opts.tol = 1e-11;
    opts.max_iter = 50000;
    for (int t = 0; t < 8; ++t) {
        Hypergraph h = test::random_connected_hypergraph(rng, 16, 10, 4);
        CentralityResult a = hec(h, opts);
        HecOptions o2 = opts;
        o2.start = test::random_vector(rng, h.vertex_count(), 0.2, 1.0);
        CentralityResult b = hec(h, o2);
        CHECK((a.scores - b.scores).cwiseAbs().maxCoeff() <= 100 * opts.tol * 1e3);
    }
}

TEST_CASE("zec satisfies the Z-eigen equation") {
    std::mt19937_64 rng(47);
    ZecOptions opts;
    opts.tol = 1e-9;
    opts.max_iter = 20000;
    for (int t = 0; t < 8; ++t) {
        Hypergraph h = test::random_connected_hypergraph(rng, 12, 8, 4);
        CentralityResult res = zec(h, opts);
        CHECK(res.scores.minCoeff() > 0.0);
        CHECK(res.scores.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(res.residual <= 10 * opts.tol * res.eigenvalue);
    }
}

TEST_CASE("cec: star center dominates; triangle is uniform") {
    Hypergraph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CentralityResult res = cec(star);
    for (int v = 1; v < 5; ++v) CHECK(res.scores[0] > res.scores[v]);
    // dense eigensolve oracle
    CliqueExpansion g = clique_expansion(star);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(5, 5);
    for (int u = 0; u < 5; ++u)
        for (auto [v, c] : g.neighbors[u]) w(u, v) = c;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w);
    Eigen::VectorXd lead = es.eigenvectors().col(4).cwiseAbs();
    lead /= lead.sum();
    CHECK((res.scores - lead).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(res.eigenvalue == doctest::Approx(es.eigenvalues()[4]).epsilon(1e-8));

    Hypergraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    CentralityResult t = cec(tri);
    for (int v = 0; v < 3; ++v) CHECK(t.scores[v] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("edge-weight scaling leaves hec/zec scores unchanged") {
    std::mt19937_64 rng(53);
    Hypergraph h = test::random_connected_hypergraph(rng, 10, 8, 4);
    std::vector<double> w1(h.edge_count()), w10(h.edge_count());
    for (int e = 0; e < h.edge_count(); ++e) {
        w1[e] = h.weight(e);
        w10[e] = 10.0 * h.weight(e);
    }
    Hypergraph a = reweighted(h, WeightScheme::custom, w1);
    Hypergraph b = reweighted(h, WeightScheme::custom, w10);
    HecOptions opts;
    opts.tol = 1e-11;
    CentralityResult ra = hec(a, opts), rb = hec(b, opts);
    CHECK((ra.scores - rb.scores).cwiseAbs().maxCoeff() <= 10 * opts.tol);
    CHECK(rb.eigenvalue == doctest::Approx(10.0 * ra.eigenvalue).epsilon(1e-7));
}

TEST_CASE("kendall tau_b unit cases") {
    DenseVector a(3), rev(3), swap(3);
    a << 3, 2, 1;
    rev << 1, 2, 3;
    swap << 3, 1, 2;
    CHECK(kendall_tau_b(a, a, 3) == 1.0);
    CHECK(kendall_tau_b(a, rev, 3) == -1.0);
    CHECK(kendall_tau_b(a, swap, 3) == doctest::Approx(1.0 / 3.0));
    CHECK(kendall_tau_b(a, a, 100) == 1.0);  // k clamps to n
    CHECK_THROWS_AS(kendall_tau_b(a, a, 1), PreconditionError);

    // tie correction: b constant on the top-k
    DenseVector flat = DenseVector::Ones(3);
    CHECK(kendall_tau_b(a, flat, 3) == 0.0);
}

TEST_CASE("kendall restricted to the top-k of the first ranking") {
    // swap the tail only: agree on the top 2 of a
    DenseVector a(4), b(4);
    a << 10, 9, 2, 1;
    b << 10, 9, 1, 2;
    CHECK(kendall_tau_b(a, b, 2) == 1.0);
    CHECK(kendall_tau_b(a, b, 4) < 1.0);
}

TEST_CASE("persistence sweep flags the designed change") {
    // sizes are only 2 and 5: columns r=2,3,4 identical, the size-5 edge lands at r=5.
    // With it, vertex 0 gains a five-fold repeated edge and overtakes vertex 1.
    std::vector<std::vector<int>> edges = {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4},
                                           {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4},
                                           {0, 1, 2, 3, 4}, {0, 5}};
    // base graph: pairs keeping everything connected and vertex 1 on top
    for (int v = 2; v <= 5; ++v) edges.push_back({1, v});
    edges.push_back({1, 5});
    Hypergraph h(6, std::move(edges));
    PersistenceOptions opts;
    opts.topk = 6;
    auto cols = persistence_sweep(h, CentralityMethod::cec, 2, 5, opts);
    REQUIRE(cols.size() == 4);
    for (const auto& col : cols) {
        REQUIRE(col.ok);
        CHECK(col.top.size() == 6);
    }
    // r=3, r=4: same filtered hypergraph as r=2, so no changes
    CHECK(std::none_of(cols[1].changed.begin(), cols[1].changed.end(), [](bool b) { return b; }));
    CHECK(std::none_of(cols[2].changed.begin(), cols[2].changed.end(), [](bool b) { return b; }));
    CHECK(cols[1].new_entrants == 0);
    // r=5: the big edge arrives, the leader changes
    CHECK(std::any_of(cols[3].changed.begin(), cols[3].changed.end(), [](bool b) { return b; }));
    CHECK(cols[3].top[0] != cols[2].top[0]);
}

TEST_CASE("persistence sweep marks failed columns") {
    Hypergraph h(4, {{0, 1, 2, 3}});  // only a size-4 edge
    auto cols = persistence_sweep(h, CentralityMethod::cec, 2, 4);
    REQUIRE(cols.size() == 3);
    CHECK_FALSE(cols[0].ok);  // r=2: leq_filter leaves nothing
    CHECK_FALSE(cols[1].ok);
    CHECK(cols[2].ok);
}

TEST_CASE("gram mate fixture: identities, non-isomorphism, centrality separation") {
    GramMatePair pair = gram_mate_fixture();
    const Hypergraph& s = pair.first;
    const Hypergraph& r = pair.second;
    CHECK(s.vertex_count() == 6);
    CHECK(r.vertex_count() == 6);
    CHECK(is_connected(s));
    CHECK(is_connected(r));

    // exhaustive non-isomorphism check at fixture scale: 6! vertex relabelings
    std::vector<int> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    auto sorted_edges = [](const Hypergraph& h, const std::vector<int>& p) {
        std::vector<std::vector<int>> out;
        for (const auto& e : h.edges()) {
            std::vector<int> m;
            for (int v : e) m.push_back(p[v]);
            std::sort(m.begin(), m.end());
            out.push_back(std::move(m));
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<int> ident(6);
    std::iota(ident.begin(), ident.end(), 0);
    auto s_edges = sorted_edges(s, ident);
    bool iso = false;
    do {
        if (sorted_edges(r, perm) == s_edges) iso = true;
    } while (!iso && std::next_permutation(perm.begin(), perm.end()));
    CHECK_FALSE(iso);

    // identical weighted clique expansions give identical cec
    CecOptions copts;
    copts.tol = 1e-12;
    CentralityResult cs = cec(s, copts), cr = cec(r, copts);
    CHECK((cs.scores - cr.scores).cwiseAbs().maxCoeff() < 1e-9);

    // hec and zec split the vertices into the stored equal/greater/less pairs
    HecOptions hopts;
    hopts.tol = 1e-12;
    hopts.max_iter = 100000;
    CentralityResult hs = hec(s, hopts), hr = hec(r, hopts);
    ZecOptions zopts;
    zopts.tol = 1e-11;
    zopts.max_iter = 200000;
    CentralityResult zs = zec(s, zopts), zr = zec(r, zopts);
    for (int u : pair.equal_pair) {
        CHECK(std::abs(hs.scores[u] - hr.scores[u]) < 1e-8);
        CHECK(std::abs(zs.scores[u] - zr.scores[u]) < 1e-7);
    }
    for (int u : pair.greater_pair) {
        CHECK(hs.scores[u] - hr.scores[u] > 1e-6);
        CHECK(zs.scores[u] - zr.scores[u] > 1e-6);
    }
    for (int u : pair.less_pair) {
        CHECK(hr.scores[u] - hs.scores[u] > 1e-6);
        CHECK(zr.scores[u] - zs.scores[u] > 1e-6);
    }
}

TEST_CASE("power iteration rejects non-positive operators early") {
    CHECK_THROWS_AS(power_iteration([](const DenseVector& v) { return DenseVector(-v); }, 3,
                                    1e-8, 100),
                    ConvergenceError);
}
