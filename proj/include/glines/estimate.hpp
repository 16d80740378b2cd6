#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "glines/errors.hpp"
#include "glines/rng.hpp"

namespace glines {

// Monte Carlo estimate with provenance counters.
struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long n_samples = 0;
  long n_accepted = 0;  // for rejection-based laws; == n_samples otherwise
  long cap_hits = 0;

  double variance() const { return stderr_ * stderr_ * static_cast<double>(n_samples); }
};

namespace detail {

inline int worker_count() {
  if (const char* env = std::getenv("GLINES_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(block) for block = 0..n_blocks-1 on a worker pool.  Work stealing is
// by atomic counter; outputs must be written into per-block slots so results
// do not depend on the thread count.
template <typename F>
void parallel_blocks(long n_blocks, F&& fn) {
  const int workers = std::min<long>(worker_count(), n_blocks);
  if (workers <= 1) {
    for (long b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const long b = next.fetch_add(1);
        if (b >= n_blocks) return;
        fn(b);
      }
    });
  }
  for (auto& t : pool) t.join();
}

inline constexpr long kBlockSize = 256;

}  // namespace detail

// Plain Monte Carlo mean with standard error.  Sample i draws from substream
// (replica=i), blocks are accumulated in fixed order, so the result is a pure
// function of (stream, n) regardless of GLINES_THREADS.
template <typename Sampler>
Estimate estimate_expectation(Sampler&& sample_value, long n,
                              const RngStream& stream) {
  if (n < 2) throw BadParams("estimate_expectation: n < 2");
  const long n_blocks = (n + detail::kBlockSize - 1) / detail::kBlockSize;
  std::vector<double> bsum(static_cast<std::size_t>(n_blocks), 0.0);
  std::vector<double> bsum2(static_cast<std::size_t>(n_blocks), 0.0);
  std::vector<long> bacc(static_cast<std::size_t>(n_blocks), 0);
  std::vector<long> bcap(static_cast<std::size_t>(n_blocks), 0);

  detail::parallel_blocks(n_blocks, [&](long b) {
    const long lo = b * detail::kBlockSize;
    const long hi = std::min(n, lo + detail::kBlockSize);
    double s = 0.0, s2 = 0.0;
    long acc = 0, cap = 0;
    for (long i = lo; i < hi; ++i) {
      RngStream rng = stream.substream(static_cast<std::uint64_t>(i));
      long accepted = 1, caps = 0;
      const double v = sample_value(rng, accepted, caps);
      s += v;
      s2 += v * v;
      acc += accepted;
      cap += caps;
    }
    bsum[static_cast<std::size_t>(b)] = s;
    bsum2[static_cast<std::size_t>(b)] = s2;
    bacc[static_cast<std::size_t>(b)] = acc;
    bcap[static_cast<std::size_t>(b)] = cap;
  });

  double sum = 0.0, sum2 = 0.0;
  long acc = 0, cap = 0;
  for (long b = 0; b < n_blocks; ++b) {
    sum += bsum[static_cast<std::size_t>(b)];
    sum2 += bsum2[static_cast<std::size_t>(b)];
    acc += bacc[static_cast<std::size_t>(b)];
    cap += bcap[static_cast<std::size_t>(b)];
  }
  Estimate e;
  e.n_samples = n;
  e.n_accepted = acc;
  e.cap_hits = cap;
  e.mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sum2 - sum * sum / static_cast<double>(n)) / static_cast<double>(n - 1));
  e.stderr_ = std::sqrt(var / static_cast<double>(n));
  return e;
}

// Convenience overload for observables that need no provenance counters.
template <typename Sampler>
Estimate estimate_expectation_plain(Sampler&& sample_value, long n,
                                    const RngStream& stream) {
  return estimate_expectation(
      [&](RngStream& rng, long&, long&) { return sample_value(rng); }, n, stream);
}

}  // namespace glines
