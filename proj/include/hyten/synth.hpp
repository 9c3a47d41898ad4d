#pragma once

#include <cstdint>
#include <vector>

#include "hyten/hypergraph.hpp"

namespace hyten {

enum class SizeDist { constant, geometric, histogram };

struct SynthOptions {
    int n = 100;
    int m = 100;
    SizeDist dist = SizeDist::geometric;
    int constant_size = 3;       // dist == constant
    double mean_size = 8.0;      // dist == geometric
    int min_size = 2;
    int max_size = 0;            // 0: capped only by n
    std::vector<std::pair<int, std::int64_t>> histogram;  // (size, count) weights
    std::uint64_t seed = 0;
    bool ensure_max_size = false;  // guarantee one edge at the size cap
};

/// Seeded random hypergraph with the requested edge-size law; each edge picks
/// distinct vertices uniformly. Sizes above the cap (or n) are resampled.
Hypergraph synth_hypergraph(const SynthOptions& opts);

}  // namespace hyten
