#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <atomic>
#include <span>
#include <string>

#include "hyten/hypergraph.hpp"
#include "hyten/series.hpp"

namespace hyten {

/// TTSV2 output: sparse symmetric with support inside the clique-expansion
/// pattern plus the diagonal.
using SymmetricMatrix = Eigen::SparseMatrix<double>;

/// Compensated (Kahan) accumulator; one per output slot.
struct KahanAccumulator {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

struct KernelOptions {
    bool serial = false;                         // force the deterministic single-thread path
    const std::atomic<bool>* cancel = nullptr;   // cooperative cancellation, checked per edge/slot
    double explicit_entry_budget = 1e8;          // max n^r entries materialized by the explicit oracle
    double ordered_tuple_budget = 1e8;           // max total |beta(e)| visited by the ordered baseline
    bool skip_safety_check = false;              // genfn: proceed despite an unsafe coefficient regime
    GenfnConfig genfn;
};

enum class TtsvAlgo { explicit_tensor, ordered, unordered, genfn };

std::string to_string(TtsvAlgo a);

// --- TTSV1: s_v = sum over tensor entries with first index v ---

/// Materializes the order-r adjacency tensor (n^r table, guarded) and applies
/// the contraction from its definition. Oracle only.
DenseVector ttsv1_explicit(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts = {});

/// Iterates full blowup sets beta(e). Baseline; guarded by the tuple budget.
DenseVector ttsv1_ordered(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts = {});

/// Unordered-blowup kernel: per edge, walks kappa(e) once and weights each
/// multiset by the position counts phi_1. Division-free, so b may have zeros.
DenseVector ttsv1_unordered(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts = {});

/// Generating-function kernel: per (vertex, edge), extracts the degree-(r-1)
/// coefficient of exp(b_v t) * prod(exp(b_u t) - 1). Throws NumericError when
/// the coefficient regime is unsafe (see safety_check) unless overridden.
DenseVector ttsv1_genfn(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts = {});

DenseVector ttsv1(const Hypergraph& h, const DenseVector& b, TtsvAlgo algo,
                  const KernelOptions& opts = {});

/// genfn when the safety check passes, unordered otherwise.
DenseVector ttsv1_auto(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts = {},
                       TtsvAlgo* chosen = nullptr);

// --- TTSV2: Y_uv = sum over tensor entries with first two indices u, v ---

SymmetricMatrix ttsv2_explicit(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts = {});
SymmetricMatrix ttsv2_ordered(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts = {});
SymmetricMatrix ttsv2_unordered(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts = {});
SymmetricMatrix ttsv2_genfn(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts = {});

SymmetricMatrix ttsv2(const Hypergraph& h, const DenseVector& b, TtsvAlgo algo,
                      const KernelOptions& opts = {});
SymmetricMatrix ttsv2_auto(const Hypergraph& h, const DenseVector& b, const KernelOptions& opts = {},
                           TtsvAlgo* chosen = nullptr);

// --- per-edge pieces (benchmark instrumentation; acc has one slot per vertex) ---

void ttsv1_ordered_edge(const Hypergraph& h, int e, const DenseVector& b,
                        std::span<KahanAccumulator> acc);
void ttsv1_unordered_edge(const Hypergraph& h, int e, const DenseVector& b,
                          std::span<KahanAccumulator> acc);
void ttsv1_genfn_edge(const Hypergraph& h, int e, const DenseVector& b, const GenfnConfig& cfg,
                      std::span<KahanAccumulator> acc);

}  // namespace hyten
