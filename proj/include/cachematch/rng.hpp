#pragma once

#include <cstdint>
#include <initializer_list>

namespace cachematch {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hashes an ordered tuple of integers into a stream key.
std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// Counter-based random stream. The i-th output depends only on (key, i), so
/// a stream keyed by (seed, trial, cluster, file) yields the same draws no
/// matter which thread evaluates it or in which order.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}
  Stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
      : key_(derive_key(seed, path)) {}

  std::uint64_t next() {
    counter_ += 0x9e3779b97f4a7c15ULL;
    return mix64(key_ + counter_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, n), n >= 1 (Lemire's method).
  std::uint64_t below(std::uint64_t n);

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Poisson variate: inversion for lambda < 10, PTRS transformed rejection
/// (Hormann 1993) above. Deterministic given the stream state.
std::int64_t sample_poisson(Stream& stream, double lambda);

/// Inversion sampler with a precomputed e^{-lambda}; used on hot paths.
std::int64_t sample_poisson_inversion(Stream& stream, double lambda, double exp_neg_lambda);

}  // namespace cachematch
