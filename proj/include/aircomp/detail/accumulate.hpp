#pragma once

// Deterministic, chunked Monte Carlo reduction.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace aircomp::detail {

// Running mean and co-moment matrix of a P-dimensional sample (Welford),
// mergeable with Chan's pairwise update.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(std::size_t dims = 0)
      : dims_(dims), mean_(dims, 0.0), comoment_(dims * dims, 0.0), delta_(dims) {}

  void add(std::span<const double> x) {
    ++count_;
    const double n = static_cast<double>(count_);
    for (std::size_t a = 0; a < dims_; ++a) delta_[a] = x[a] - mean_[a];
    for (std::size_t a = 0; a < dims_; ++a) mean_[a] += delta_[a] / n;
    for (std::size_t a = 0; a < dims_; ++a) {
      const double after = x[a] - mean_[a];
      for (std::size_t b = 0; b < dims_; ++b) comoment_[a * dims_ + b] += after * delta_[b];
    }
  }

  void merge(const MomentAccumulator& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    for (std::size_t a = 0; a < dims_; ++a) delta_[a] = other.mean_[a] - mean_[a];
    for (std::size_t a = 0; a < dims_; ++a) {
      for (std::size_t b = 0; b < dims_; ++b) {
        comoment_[a * dims_ + b] +=
            other.comoment_[a * dims_ + b] + delta_[a] * delta_[b] * na * nb / n;
      }
    }
    for (std::size_t a = 0; a < dims_; ++a) mean_[a] += delta_[a] * nb / n;
    count_ += other.count_;
  }

  std::size_t count() const { return count_; }
  double mean(std::size_t a) const { return mean_[a]; }
  // Covariance of the sample means of components a and b.
  double mean_covariance(std::size_t a, std::size_t b) const {
    if (count_ < 2) return 0.0;
    const double n = static_cast<double>(count_);
    return comoment_[a * dims_ + b] / (n - 1.0) / n;
  }

 private:
  std::size_t dims_ = 0;
  std::size_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> comoment_;
  std::vector<double> delta_;
};

inline constexpr std::size_t kChunkSize = 2048;

// Runs body(chunk_index, begin, end) over fixed-size chunks of [0, total) on
// up to `threads` workers. Callers write per-chunk results into slots indexed
// by chunk and combine them in chunk order.
inline void for_each_chunk(std::size_t total, unsigned threads,
                           const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  const std::size_t chunks = (total + kChunkSize - 1) / kChunkSize;
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * kChunkSize;
    body(c, begin, std::min(total, begin + kChunkSize));
  };
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(1, chunks)));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::mutex mutex;
  std::size_t next = 0;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        std::size_t c = 0;
        {
          std::lock_guard lock(mutex);
          if (next >= chunks || failure) return;
          c = next++;
        }
        try {
          run_chunk(c);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace aircomp::detail
