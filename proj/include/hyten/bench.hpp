#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyten/ttsv.hpp"

namespace hyten {

/// One timed (algorithm, op, r) cell. wall_ns is meaningful only for status "ok";
/// "timeout" marks a watchdog stop, "oom-guard" a tripped capacity guard.
struct BenchRecord {
    std::string dataset;
    std::string algorithm;
    std::string op;  // ttsv1 | ttsv2
    int r = 0;
    std::int64_t wall_ns = 0;
    std::string status;  // ok | timeout | oom-guard
};

/// Per-edge-size timing bucket for one (algorithm, r) cell.
struct EdgeBucketRecord {
    std::string dataset;
    std::string algorithm;
    std::string op;
    int r = 0;
    int edge_size = 0;
    std::int64_t edges = 0;
    std::int64_t total_ns = 0;
};

struct BenchOptions {
    int r_min = 2;
    int r_max = 8;
    double timeout_secs = 3600.0;
    std::vector<TtsvAlgo> algos{TtsvAlgo::explicit_tensor, TtsvAlgo::ordered,
                                TtsvAlgo::unordered, TtsvAlgo::genfn};
    int op = 1;            // 1 -> TTSV1, 2 -> TTSV2
    bool per_edge = false; // bucket wall time by |e| (ordered/unordered/genfn only)
    std::uint64_t seed = 0;  // for the uniform [0.1, 2] input vector
    KernelOptions kernel;
};

struct BenchOutput {
    std::vector<BenchRecord> records;
    std::vector<EdgeBucketRecord> buckets;
};

/// LEQ-filters the hypergraph at each r in [r_min, r_max] and times every
/// requested algorithm under a cooperative watchdog. Guard trips and timeouts
/// become status rows; nothing here throws for a failing cell.
BenchOutput run_bench(const Hypergraph& h, const std::string& dataset, const BenchOptions& opts);

}  // namespace hyten
