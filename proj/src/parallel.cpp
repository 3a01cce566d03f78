#include "aplab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace aplab {

int worker_count() {
  int n = int(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("APERIODIC_LAB_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) n = std::min(n, cap);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return n;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(int, std::size_t, std::size_t)>& body) {
  const int workers = int(std::min<std::size_t>(std::size_t(worker_count()), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * chunk), end = std::min(n, begin + chunk);
    threads.emplace_back([&body, &errors, w, begin, end] {
      try {
        body(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace aplab
