#include "hyten/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hyten {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Hypergraph synth_hypergraph(const SynthOptions& opts) {
    if (opts.n < 2 || opts.m < 1) throw PreconditionError("synth: need n >= 2 and m >= 1");
    int cap = opts.max_size > 0 ? std::min(opts.max_size, opts.n) : opts.n;
    if (opts.min_size < 1 || opts.min_size > cap)
        throw PreconditionError("synth: min_size out of range");
    std::mt19937_64 rng(opts.seed);

    auto draw_size = [&]() -> int {
        switch (opts.dist) {
            case SizeDist::constant: return std::clamp(opts.constant_size, opts.min_size, cap);
            case SizeDist::geometric: {
                if (opts.mean_size <= opts.min_size) return opts.min_size;
                double p = 1.0 / (opts.mean_size - opts.min_size + 1.0);
                for (;;) {
                    double u = uniform01(rng);
                    int extra = static_cast<int>(std::log(1.0 - u) / std::log(1.0 - p));
                    int size = opts.min_size + extra;
                    if (size <= cap) return size;  // resample over the cap
                }
            }
            case SizeDist::histogram: {
                if (opts.histogram.empty()) throw PreconditionError("synth: empty histogram");
                std::int64_t total = 0;
                for (const auto& [size, count] : opts.histogram) total += count;
                for (;;) {
                    std::int64_t target =
                        static_cast<std::int64_t>(uniform01(rng) * static_cast<double>(total));
                    std::int64_t acc = 0;
                    for (const auto& [size, count] : opts.histogram) {
                        acc += count;
                        if (acc > target) {
                            if (size >= opts.min_size && size <= cap) return size;
                            break;  // out-of-range bucket: resample
                        }
                    }
                }
            }
        }
        return opts.min_size;
    };

    std::vector<int> pool(opts.n);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<std::vector<int>> edges;
    edges.reserve(opts.m);
    for (int e = 0; e < opts.m; ++e) {
        int size = draw_size();
        // partial Fisher-Yates: first `size` entries become the edge
        for (int i = 0; i < size; ++i) {
            int j = i + static_cast<int>(uniform01(rng) * (opts.n - i));
            j = std::min(j, opts.n - 1);
            std::swap(pool[i], pool[j]);
        }
        std::vector<int> edge(pool.begin(), pool.begin() + size);
        std::sort(edge.begin(), edge.end());
        edges.push_back(std::move(edge));
    }
    if (opts.ensure_max_size) {
        bool have = false;
        for (const auto& e : edges) have = have || static_cast<int>(e.size()) == cap;
        if (!have) {
            for (int i = 0; i < cap; ++i) {
                int j = i + static_cast<int>(uniform01(rng) * (opts.n - i));
                j = std::min(j, opts.n - 1);
                std::swap(pool[i], pool[j]);
            }
            std::vector<int> edge(pool.begin(), pool.begin() + cap);
            std::sort(edge.begin(), edge.end());
            edges.back() = std::move(edge);
        }
    }
    return Hypergraph(opts.n, std::move(edges));
}

}  // namespace hyten
