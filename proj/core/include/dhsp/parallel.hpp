#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dhsp {

struct Parallelism {
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Number of Monte Carlo shards. Fixed so results do not depend on the
/// worker count.
inline constexpr std::size_t kShards = 64;

/// Runs body(shard) for shard in [0, shards) on up to par.threads workers.
/// Each shard writes only its own slot, so the merge order stays fixed.
inline void for_each_shard(std::size_t shards, const Parallelism& par,
                           const std::function<void(std::size_t)>& body) {
  unsigned workers = par.threads != 0 ? par.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(shards)));
  if (workers == 1) {
    for (std::size_t s = 0; s < shards; ++s) body(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::size_t s = next++; s < shards; s = next++) body(s);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = shards;
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Samples assigned to shard s when total samples are split evenly.
inline std::size_t shard_size(std::size_t total, std::size_t shards, std::size_t s) {
  return total / shards + (s < total % shards ? 1 : 0);
}

}  // namespace dhsp
