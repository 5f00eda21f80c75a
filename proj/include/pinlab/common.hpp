#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <vector>

namespace pinlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Streaming log-sum-exp accumulator with a running maximum.
class LogAccumulator {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }
  double value() const {
    if (max_ == kNegInf) return kNegInf;
    return max_ + std::log(sum_);
  }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

inline double log_sum_exp(std::span<const double> terms) {
  LogAccumulator acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

/// SplitMix64 step; used to derive disjoint per-sample seeds from a base seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based seed derivation: hash(base, index) with two mixing rounds,
/// so streams for distinct indices are disjoint and order-independent.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t s = base;
  (void)splitmix64(s);
  s ^= index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
  (void)splitmix64(s);
  return splitmix64(s);
}

/// Minimal xoshiro256**-style generator seeded via splitmix64.
/// Self-contained so that streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    for (auto& w : s_) w = splitmix64(seed);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0,1) with 53 bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0,1]; safe as a log() argument.
  double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  /// Box-Muller, fixed two-draw consumption per variate.
  double gaussian() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4]{};
};

/// Runs fn(i) for i in [0,n) on up to `workers` threads. Each index owns its
/// own output slot, so results are independent of the worker count; callers
/// aggregate sequentially afterwards.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const unsigned k = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  pool.reserve(k);
  for (unsigned t = 0; t < k; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
}

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Sample mean and standard error, fixed left-to-right summation order.
inline Estimate mean_and_stderr(std::span<const double> xs) {
  Estimate e;
  if (xs.empty()) return e;
  double s = 0.0;
  for (double x : xs) s += x;
  e.value = s / static_cast<double>(xs.size());
  if (xs.size() < 2) return e;
  double ss = 0.0;
  for (double x : xs) ss += (x - e.value) * (x - e.value);
  e.stderr_ = std::sqrt(ss / (static_cast<double>(xs.size() - 1) * static_cast<double>(xs.size())));
  return e;
}

}  // namespace pinlab
