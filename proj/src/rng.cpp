#include "cachematch/rng.hpp"

#include <cmath>

namespace cachematch {

namespace {
__extension__ using u128 = unsigned __int128;
}

std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t part : path) {
    h = mix64(h ^ mix64(part + 0x9e3779b97f4a7c15ULL));
  }
  return h;
}

std::uint64_t Stream::below(std::uint64_t n) {
  u128 m = static_cast<u128>(next()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<u128>(next()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::int64_t sample_poisson_inversion(Stream& stream, double lambda, double exp_neg_lambda) {
  if (lambda <= 0.0) return 0;
  const double u = stream.uniform();
  double pmf = exp_neg_lambda;
  double cdf = pmf;
  std::int64_t k = 0;
  // The cap only matters when rounding leaves cdf a hair below u.
  while (u > cdf && k < 1000) {
    ++k;
    pmf *= lambda / static_cast<double>(k);
    cdf += pmf;
  }
  return k;
}

std::int64_t sample_poisson(Stream& stream, double lambda) {
  if (lambda <= 0.0) return 0;
  if (lambda < 10.0) return sample_poisson_inversion(stream, lambda, std::exp(-lambda));

  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = stream.uniform() - 0.5;
    const double v = stream.uniform();
    const double us = 0.5 - std::abs(u);
    const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + lambda + 0.43));
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0 || (us < 0.013 && v > us)) continue;
    const double kd = static_cast<double>(k);
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -lambda + kd * loglam - std::lgamma(kd + 1.0)) {
      return k;
    }
  }
}

}  // namespace cachematch
