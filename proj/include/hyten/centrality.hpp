#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyten/ttsv.hpp"

namespace hyten {

enum class CentralityMethod { zec, hec, cec };

std::string to_string(CentralityMethod m);

/// Positive, l1-normalized score vector with the eigenvalue and convergence
/// diagnostics of the run that produced it.
struct CentralityResult {
    DenseVector scores;
    double eigenvalue = 0.0;
    int iterations = 0;
    double residual = 0.0;
    CentralityMethod method = CentralityMethod::cec;
};

struct HecOptions {
    double tol = 1e-8;
    int max_iter = 1000;
    std::optional<DenseVector> start;  // positive; defaults to uniform
    KernelOptions kernel;
};

struct ZecOptions {
    double tol = 1e-6;
    double step = 0.5;  // forward-integration step h
    int max_iter = 1000;
    int inner_max_iter = 100000;
    std::optional<DenseVector> start;
    KernelOptions kernel;
};

struct CecOptions {
    double tol = 1e-8;
    int max_iter = 100000;
};

/// H-eigenvector centrality: power-iteration with the elementwise 1/(r-1)
/// root, stopping when the Collatz-Wielandt bounds of the eigenvalue meet.
/// Requires a connected hypergraph with at least one edge.
CentralityResult hec(const Hypergraph& h, const HecOptions& opts = {});

/// Z-eigenvector centrality via forward integration of the dominant-eigenvector
/// dynamical system; the inner solve is power iteration on the TTSV2 matrix.
CentralityResult zec(const Hypergraph& h, const ZecOptions& opts = {});

/// Clique-expansion centrality: dominant eigenvector of the codegree-weighted
/// clique expansion adjacency matrix.
CentralityResult cec(const Hypergraph& h, const CecOptions& opts = {});

CentralityResult centrality(const Hypergraph& h, CentralityMethod method);

/// Dominant eigenpair of a nonnegative irreducible operator by power iteration
/// with Collatz-Wielandt bounds; the vector comes back positive and l1-normalized.
struct PowerIterationResult {
    DenseVector vec;
    double value = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

PowerIterationResult power_iteration(const std::function<DenseVector(const DenseVector&)>& apply,
                                     int n, double tol, int max_iter);

/// Vertices ordered best-first by score, ties broken by id.
std::vector<int> ranking_from_scores(const DenseVector& scores);

/// Kendall tau_B over the top-k vertices of scores_a (tie-corrected). k is
/// clamped to n; k >= 2 required.
double kendall_tau_b(const DenseVector& scores_a, const DenseVector& scores_b, int k);

/// One LEQ-filter sweep column: the top-k ranking at this r with per-position
/// change flags against the previous successful column.
struct PersistenceColumn {
    int r = 0;
    bool ok = false;
    std::string error;
    std::vector<int> top;           // vertex ids, best first
    std::vector<bool> changed;      // per rank position, vs the r-1 column
    int new_entrants = 0;
};

struct PersistenceOptions {
    int topk = 10;
    HecOptions hec;
    ZecOptions zec;
    CecOptions cec;
};

/// Runs `method` on leq_filter(h, r) for r in [r_lo, r_hi] and records rank
/// changes of the top-k vertices. Per-r failures mark the column and continue.
std::vector<PersistenceColumn> persistence_sweep(const Hypergraph& h, CentralityMethod method,
                                                 int r_lo, int r_hi,
                                                 const PersistenceOptions& opts = {});

/// A stored non-isomorphic pair of hypergraphs on six vertices whose incidence
/// matrices share both Gram matrices: equal codegree (clique expansion) and
/// equal edge-intersection (line graph) structure. Tensor centralities split
/// the vertices into the three stored pairs; matrix methods cannot separate
/// the pair at all. Both identities are re-verified at load.
struct GramMatePair {
    Hypergraph first;
    Hypergraph second;
    std::array<int, 2> equal_pair;    // scores agree between the two hypergraphs
    std::array<int, 2> greater_pair;  // first's scores strictly larger
    std::array<int, 2> less_pair;     // first's scores strictly smaller
};

GramMatePair gram_mate_fixture();

}  // namespace hyten
