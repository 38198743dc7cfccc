#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qsum::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs fn(chunk) for chunk = 0..num_chunks-1 on a small worker pool. Chunks are
// claimed dynamically; callers write into per-chunk slots so that the combined
// result does not depend on scheduling.
template <typename Fn>
void parallel_chunks(std::uint64_t num_chunks, unsigned threads, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), num_chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < num_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::uint64_t c = next++; c < num_chunks; c = next++) fn(c);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = num_chunks;
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace qsum::detail
