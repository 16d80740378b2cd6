#pragma once

#include <cmath>
#include <cstdint>

namespace glines {

namespace detail {

// SplitMix64 finalizer. Bijective on 64-bit words.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

}  // namespace detail

// Counter-based splittable stream: every draw is a pure function of
// (master_seed, replica, purpose, counter).  Substreams derived for distinct
// (replica, purpose) pairs are independent for all practical purposes, and
// the draw sequence does not depend on which thread consumes it.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t replica = 0,
                     std::uint64_t purpose = 0)
      : master_(master_seed), counter_(0) {
    key_ = detail::mix64(master_seed + detail::kGolden);
    key_ = detail::mix64(key_ ^ (replica * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
    key_ = detail::mix64(key_ ^ (purpose * 0xda942042e4dd58b5ull + 0x9494e4dd58b54f6dull));
  }

  // Fresh stream for a (replica, purpose) pair, re-derived from this stream's
  // key so nested splits stay collision-free.
  RngStream substream(std::uint64_t replica, std::uint64_t purpose = 0) const {
    RngStream s(*this);
    s.key_ = detail::mix64(key_ ^ (replica * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
    s.key_ = detail::mix64(s.key_ ^ (purpose * 0xda942042e4dd58b5ull + 0x9494e4dd58b54f6dull));
    s.counter_ = 0;
    return s;
  }

  std::uint64_t next_u64() {
    return detail::mix64(key_ + (++counter_) * detail::kGolden);
  }

  // Uniform on (0,1), never exactly 0 or 1.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (two uniforms per draw, no cached state).
  double gaussian() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  double gaussian(double mean, double variance) {
    return mean + std::sqrt(variance) * gaussian();
  }

  std::uint64_t master_seed() const { return master_; }

 private:
  std::uint64_t master_;
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace glines
