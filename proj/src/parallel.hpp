#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "hmec/cryptanalysis.hpp"

namespace hmec::detail {

struct ChunkPlan {
  std::uint64_t chunks;
  unsigned threads;
};

inline ChunkPlan plan_chunks(std::uint64_t count, const cryptanalysis::ScanOptions& opt) {
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t chunks = opt.chunks ? opt.chunks : std::uint64_t{threads} * 8;
  chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(chunks, count));
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  return {chunks, threads};
}

// Splits [0, count) into plan.chunks contiguous ranges and calls fn(chunk, begin, end) for each,
// on up to plan.threads threads. The first exception thrown by any chunk is rethrown.
template <class Fn>
void for_each_chunk(std::uint64_t count, const ChunkPlan& plan, Fn&& fn) {
  if (count == 0) return;
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t chunk = next.fetch_add(1);
      if (chunk >= plan.chunks) return;
      const std::uint64_t begin = count * chunk / plan.chunks;
      const std::uint64_t end = count * (chunk + 1) / plan.chunks;
      try {
        fn(chunk, begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(plan.chunks);
      }
    }
  };

  if (plan.threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(plan.threads);
    for (unsigned t = 0; t < plan.threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hmec::detail
