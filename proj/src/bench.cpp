#include "hyten/bench.hpp"

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <random>
#include <thread>

#include "hyten/parallel.hpp"

namespace hyten {

namespace {

using Clock = std::chrono::steady_clock;

struct TimedRun {
    std::int64_t wall_ns = 0;
    std::string status;  // ok | timeout | oom-guard
};

/// Runs fn on a worker under a watchdog; fn must observe opts.cancel.
TimedRun run_guarded(double timeout_secs, std::atomic<bool>& cancel,
                     const std::function<void()>& fn) {
    TimedRun out;
    cancel.store(timeout_secs <= 0.0);  // zero timeout cancels before the first check
    std::mutex mtx;
    std::condition_variable cv;
    bool done = false;
    std::string status = "ok";
    std::int64_t wall = 0;
    std::thread worker([&] {
        auto t0 = Clock::now();
        std::string st = "ok";
        try {
            fn();
        } catch (const Cancelled&) {
            st = "timeout";
        } catch (const CapacityError&) {
            st = "oom-guard";
        } catch (const Error&) {
            st = "oom-guard";  // any other guard maps to a failed cell, never a crash
        }
        auto t1 = Clock::now();
        std::lock_guard<std::mutex> lock(mtx);
        wall = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        status = st;
        done = true;
        cv.notify_all();
    });
    {
        std::unique_lock<std::mutex> lock(mtx);
        if (timeout_secs > 0.0) {
            if (!cv.wait_for(lock, std::chrono::duration<double>(timeout_secs),
                             [&] { return done; })) {
                cancel.store(true);
                cv.wait(lock, [&] { return done; });
            }
        } else {
            cv.wait(lock, [&] { return done; });
        }
    }
    worker.join();
    out.status = status;
    out.wall_ns = status == "ok" ? wall : 0;
    return out;
}

DenseVector bench_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    DenseVector b(n);
    for (int i = 0; i < n; ++i)
        b[i] = 0.1 + 1.9 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    return b;
}

}  // namespace

BenchOutput run_bench(const Hypergraph& h, const std::string& dataset, const BenchOptions& opts) {
    BenchOutput out;
    const std::string op_name = opts.op == 2 ? "ttsv2" : "ttsv1";
    for (int r = opts.r_min; r <= opts.r_max; ++r) {
        Hypergraph filtered = h;
        try {
            filtered = leq_filter(h, r, /*drop_isolated=*/false);
        } catch (const Error&) {
            continue;  // nothing at this size; no cells to record
        }
        DenseVector b = bench_vector(filtered.vertex_count(), opts.seed);
        for (TtsvAlgo algo : opts.algos) {
            std::atomic<bool> cancel{false};
            KernelOptions kopts = opts.kernel;
            kopts.cancel = &cancel;

            if (opts.per_edge && algo != TtsvAlgo::explicit_tensor && opts.op == 1) {
                // bucket wall time by edge size; cooperative timeout keeps partial buckets
                std::vector<KahanAccumulator> acc(filtered.vertex_count());
                std::vector<std::int64_t> bucket_ns(filtered.rank() + 1, 0);
                std::vector<std::int64_t> bucket_edges(filtered.rank() + 1, 0);
                TimedRun run = run_guarded(opts.timeout_secs, cancel, [&] {
                    for (int e = 0; e < filtered.edge_count(); ++e) {
                        check_cancel(kopts.cancel);
                        auto t0 = Clock::now();
                        switch (algo) {
                            case TtsvAlgo::ordered: ttsv1_ordered_edge(filtered, e, b, acc); break;
                            case TtsvAlgo::unordered:
                                ttsv1_unordered_edge(filtered, e, b, acc);
                                break;
                            default: ttsv1_genfn_edge(filtered, e, b, kopts.genfn, acc); break;
                        }
                        auto t1 = Clock::now();
                        int size = static_cast<int>(filtered.edge(e).size());
                        bucket_ns[size] +=
                            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
                        bucket_edges[size] += 1;
                    }
                });
                for (int size = 1; size <= filtered.rank(); ++size) {
                    if (bucket_edges[size] == 0) continue;
                    out.buckets.push_back({dataset, to_string(algo), op_name, r, size,
                                           bucket_edges[size], bucket_ns[size]});
                }
                out.records.push_back({dataset, to_string(algo), op_name, r, run.wall_ns, run.status});
                continue;
            }

            TimedRun run = run_guarded(opts.timeout_secs, cancel, [&] {
                if (opts.op == 2)
                    ttsv2(filtered, b, algo, kopts);
                else
                    ttsv1(filtered, b, algo, kopts);
            });
            out.records.push_back({dataset, to_string(algo), op_name, r, run.wall_ns, run.status});
        }
    }
    return out;
}

}  // namespace hyten
