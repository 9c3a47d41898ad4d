#pragma once

#include <atomic>
#include <cstdint>
#include <functional>

#include "hyten/errors.hpp"

namespace hyten {

/// Worker cap for data-parallel loops: HT_THREADS when set, else hardware concurrency.
int max_threads();

/// Runs fn(i) for i in [0, count). With serial=true (or one worker) the calls happen
/// in index order on the calling thread; otherwise indices are split into contiguous
/// blocks, one writer per index. Exceptions from workers are rethrown on the caller.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn,
                  bool serial = false);

/// Throws Cancelled when the (optional) flag is set.
inline void check_cancel(const std::atomic<bool>* cancel) {
    if (cancel != nullptr && cancel->load(std::memory_order_relaxed)) throw Cancelled();
}

}  // namespace hyten
