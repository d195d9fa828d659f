#include "imexstab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace imexstab {

int thread_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("IMEXSTAB_THREADS")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
  }();
  return cap;
}

void parallel_for(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t)>& body) {
  if (n <= 0) return;
  const int workers = int(std::min<std::ptrdiff_t>(thread_cap(), n));
  if (workers <= 1) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::atomic<std::ptrdiff_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (;;) {
      const std::ptrdiff_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace imexstab
