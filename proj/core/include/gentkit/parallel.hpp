#pragma once

#include <functional>

namespace gentkit {

/// Thread cap: GENTKIT_THREADS when set, otherwise hardware concurrency.
int max_threads();

/// Runs body(0..n-1), possibly across threads. Callers keep determinism by
/// writing into per-index slots and reducing afterwards.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace gentkit
