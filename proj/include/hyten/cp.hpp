#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hyten/ttsv.hpp"

namespace hyten {

using DenseMatrix = Eigen::MatrixXd;

/// Symmetric CP model: weights lambda in R^q and factor matrix E in R^{n x q},
/// approximating an order-r symmetric tensor by sum_j lambda_j E_j^{(x) r}.
struct CPModel {
    DenseVector lambda;
    DenseMatrix factors;  // n x q

    int dimension() const { return static_cast<int>(lambda.size()); }
};

/// Implicit symmetric order-r tensor: everything CP descent needs without
/// materializing entries.
struct ImplicitTensor {
    int n = 0;
    int order = 0;
    double norm_sq = 0.0;  // squared Frobenius norm
    std::function<DenseVector(const DenseVector&)> ttsv1;
};

/// The adjacency tensor of h under its stored weights.
ImplicitTensor adjacency_tensor(const Hypergraph& h, const KernelOptions& opts = {});

/// The degree-normalized Laplacian tensor (unit diagonal minus the
/// degree-scaled Banerjee adjacency), contracted through the Hadamard identity.
ImplicitTensor laplacian_tensor(const Hypergraph& h, const KernelOptions& opts = {});

/// x^{[r-1]} - d^{[-1/r]} .* ttsv1_banerjee(d^{[-1/r]} .* x): the Laplacian
/// tensor's TTSV1 without enumerating its unequally weighted blowups.
/// Every vertex must have degree >= 1.
DenseVector laplacian_ttsv1(const Hypergraph& h, const DenseVector& x,
                            const KernelOptions& opts = {});

/// || T - sum_j lambda_j E_j^{(x) r} ||_F^2, expanded so the only tensor access
/// is TTSV1: norm_sq - 2 sum_j lambda_j <ttsv1(E_j), E_j> + sum_{jk} lambda_j
/// lambda_k <E_j, E_k>^r.
double cp_objective(const ImplicitTensor& t, const CPModel& m);
double cp_objective(const Hypergraph& h, const CPModel& m, const KernelOptions& opts = {});

/// Exact gradients of the squared objective:
///   d/dlambda_j = -2 [ <ttsv1(E_j), E_j> - sum_k lambda_k <E_j,E_k>^r ]
///   d/dE_j      = -2 r lambda_j [ ttsv1(E_j) - sum_k lambda_k <E_j,E_k>^{r-1} E_k ]
std::pair<DenseVector, DenseMatrix> cp_gradients(const ImplicitTensor& t, const CPModel& m);
std::pair<DenseVector, DenseMatrix> cp_gradients(const Hypergraph& h, const CPModel& m,
                                                 const KernelOptions& opts = {});

struct CpFitOptions {
    int max_steps = 500;
    double initial_step = 0.05;
    double step_growth = 1.5;   // after an accepted step
    double step_shrink = 0.5;   // backtracking factor
    double max_step = 1.0;
    double min_step = 1e-15;
    double grad_tol = 1e-6;
    std::uint64_t seed = 0;
};

struct CpFitResult {
    CPModel model;
    std::vector<double> objective_trace;  // accepted objective values, non-increasing
    double final_grad_norm = 0.0;
    int steps = 0;
    bool converged = false;  // gradient tolerance reached
};

/// Gradient descent with backtracking line search from a seeded random start
/// (factors ~ U(-1/sqrt(n), 1/sqrt(n)), lambda = 1). The backtracking accepts
/// only decreasing steps, so the trace is non-increasing; the best model seen
/// is returned. NaN in the objective raises ConvergenceError with the trace.
CpFitResult cp_fit(const ImplicitTensor& t, int q, const CpFitOptions& opts = {});
CpFitResult cp_fit(const Hypergraph& h, int q, const CpFitOptions& opts = {});

// --- k-means over embedding rows ---

struct ClusterAssignment {
    std::vector<int> labels;
    DenseMatrix centers;  // k x q
    double inertia = 0.0;
};

struct KMeansOptions {
    int max_iter = 100;
    int restarts = 10;
    std::uint64_t seed = 0;
    bool serial = false;
};

/// Lloyd iterations with k-means++ seeding; keeps the lowest-inertia restart.
ClusterAssignment kmeans(const DenseMatrix& points, int k, const KMeansOptions& opts = {});

struct EmbedOptions {
    bool use_laplacian = false;
    CpFitOptions fit;
    KMeansOptions cluster;
    KernelOptions kernel;
};

/// CP-embeds the hypergraph (adjacency or Laplacian tensor) and k-means
/// clusters the factor rows.
std::pair<CpFitResult, ClusterAssignment> embed_and_cluster(const Hypergraph& h, int q, int k,
                                                            const EmbedOptions& opts = {});

}  // namespace hyten
