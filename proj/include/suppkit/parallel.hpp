#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace suppkit {

/// Worker count from SUPPKIT_THREADS, else the hardware concurrency.
int worker_count();

/// Runs task(i) for i in [0, count) on up to `threads` workers (0 = auto).
/// Tasks pull indices from a shared counter, so each task must write only
/// to its own slot; results are then independent of the schedule.
template <class Task>
void parallel_for(std::size_t count, Task&& task, int threads = 0) {
  if (threads <= 0) threads = worker_count();
  const auto workers = static_cast<std::size_t>(threads) < count ? static_cast<std::size_t>(threads) : count;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Generator for chunk `stream` of a run seeded with `seed`. Work is cut into
/// fixed chunks, so the sample sequence does not depend on worker count.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace suppkit
