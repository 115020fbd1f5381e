#include "cachematch/coded_delivery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cachematch {

double coded_delivery_rate_at(std::int64_t caches, std::int64_t tau, std::int64_t distinct_demands) {
  if (caches < 0 || tau < 0 || distinct_demands < 0) {
    throw std::invalid_argument("coded_delivery_rate_at: negative argument");
  }
  const std::int64_t k = caches;
  const std::int64_t ne = std::min(distinct_demands, k);
  if (ne == 0 || tau >= k) return 0.0;
  // C(K, tau+1)/C(K, tau) * [1 - C(K-Ne, tau+1)/C(K, tau+1)], with the second
  // ratio expanded as prod_{i=0}^{tau} (K - Ne - i)/(K - i).
  const double lead = static_cast<double>(k - tau) / static_cast<double>(tau + 1);
  double survive = 1.0;
  for (std::int64_t i = 0; i <= tau; ++i) {
    const std::int64_t num = k - ne - i;
    if (num <= 0) {
      survive = 0.0;
      break;
    }
    survive *= static_cast<double>(num) / static_cast<double>(k - i);
  }
  return lead * (1.0 - survive);
}

double coded_delivery_rate(std::int64_t caches, double memory, std::int64_t files,
                           std::int64_t distinct_demands) {
  if (caches < 0 || files < 0 || distinct_demands < 0 || !(memory >= 0.0)) {
    throw std::invalid_argument("coded_delivery_rate: negative argument");
  }
  if (distinct_demands == 0 || caches == 0 || files == 0) return 0.0;
  if (memory >= static_cast<double>(files)) return 0.0;
  const double tau = static_cast<double>(caches) * memory / static_cast<double>(files);
  const auto lo = static_cast<std::int64_t>(std::floor(tau));
  const double frac = tau - static_cast<double>(lo);
  const double r_lo = coded_delivery_rate_at(caches, lo, distinct_demands);
  if (frac == 0.0) return r_lo;
  const double r_hi = coded_delivery_rate_at(caches, lo + 1, distinct_demands);
  return (1.0 - frac) * r_lo + frac * r_hi;
}

}  // namespace cachematch
