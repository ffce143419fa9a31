#include "gentkit/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace gentkit {

int max_threads() {
  if (const char* env = std::getenv("GENTKIT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  int threads = std::min(max_threads(), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace gentkit
