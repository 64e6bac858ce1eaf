#pragma once

#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace qcdense {

// Maps fn over [0, n) with the results kept in index order. Used by the
// verification loops so multi-threaded runs stay byte-identical to serial
// ones.
template <class T, class Fn>
std::vector<T> parallel_map_indexed(std::size_t n, unsigned threads, Fn&& fn) {
  std::vector<T> out(n);
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  unsigned workers = std::min<unsigned>(threads, std::thread::hardware_concurrency());
  if (workers == 0) workers = 1;
  std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::future<void>> futures;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    futures.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
    }));
  }
  for (auto& f : futures) f.get();
  return out;
}

}  // namespace qcdense
