#ifndef DIALOMETER_PARALLEL_H_
#define DIALOMETER_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dialometer {

// Calls fn(i) for every i in [0, n) on up to `jobs` threads, contiguous
// blocks per thread. If any call throws, the exception from the lowest
// failing block is rethrown after all threads join.
template <typename Fn>
void ParallelFor(size_t n, int jobs, Fn&& fn) {
  const size_t workers = std::min<size_t>(std::max(jobs, 1), std::max<size_t>(n, 1));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const size_t block = (n + workers - 1) / workers;
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const size_t begin = w * block;
      const size_t end = std::min(n, begin + block);
      try {
        for (size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace dialometer

#endif  // DIALOMETER_PARALLEL_H_
