#include "cachematch/scheme_pcd.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cachematch/coded_delivery.hpp"
#include "cachematch/mathkit.hpp"

namespace cachematch {

namespace {

double unmatched_term(const SystemConfig& c) {
  return std::pow(static_cast<double>(c.K), -c.t0) * kInvSqrt2Pi;
}

double unicast_all(const SystemConfig& c) { return c.rho * static_cast<double>(c.K); }

PcdRate capped(double coded, double unmatched, double cap) {
  return {coded, unmatched, std::min(cap, coded + unmatched)};
}

}  // namespace

PcdRate pcd_rate_shallow(const SystemConfig& config) {
  if (!config.shallow()) throw DomainError("pcd_rate_shallow needs beta in [0, 1)");
  const double cap = unicast_all(config);
  if (config.M <= 0.0) return {cap, 0.0, cap};
  const double coded = positive_part(static_cast<double>(config.N) / config.M - 1.0);
  return capped(coded, unmatched_term(config), cap);
}

PcdRate pcd_rate_steep(const SystemConfig& config) {
  if (!config.steep()) throw DomainError("pcd_rate_steep needs beta > 1");
  const double K = static_cast<double>(config.K);
  const double N = static_cast<double>(config.N);
  const double cap = unicast_all(config);
  if (config.M < 1.0) {
    const double r = std::pow(K, 1.0 / config.beta);
    return {r, 0.0, std::min(cap, r)};
  }
  const double threshold = std::pow(N, config.beta) / K;
  double coded = 0.0;
  if (config.M < threshold) {
    coded = positive_part(std::pow(K * config.M, 1.0 / config.beta) / config.M - 1.0);
  } else {
    coded = positive_part(N / config.M - 1.0);
  }
  return capped(coded, unmatched_term(config), cap);
}

PcdRate pcd_rate(const SystemConfig& config) {
  return config.steep() ? pcd_rate_steep(config) : pcd_rate_shallow(config);
}

std::int64_t pcd_cached_library(const SystemConfig& config) {
  if (!config.steep()) return config.N;
  if (config.M < 1.0) return 0;
  const double K = static_cast<double>(config.K);
  const double threshold = std::pow(static_cast<double>(config.N), config.beta) / K;
  if (config.M >= threshold) return config.N;
  const auto files = static_cast<std::int64_t>(std::floor(std::pow(K * config.M, 1.0 / config.beta)));
  return std::clamp<std::int64_t>(files, 1, config.N);
}

double pcd_unmatched_bound(const SystemConfig& config) {
  const double clusters = static_cast<double>(config.clusters());
  return clusters * expected_unmatched_bound(config.d, config.rho);
}

std::int64_t pcd_unmatched_users(const RequestProfile& profile, const SystemConfig& config) {
  std::int64_t unmatched = 0;
  for (std::int64_t c = 0; c < profile.num_clusters(); ++c) {
    unmatched += std::max<std::int64_t>(0, profile.cluster_total(c) - config.d);
  }
  return unmatched;
}

PcdRate pcd_simulate(const RequestProfile& profile, const SystemConfig& config) {
  const std::int64_t files = profile.num_files();
  const std::int64_t library = std::min(pcd_cached_library(config), files);
  std::vector<char> demanded(static_cast<std::size_t>(files), 0);
  std::vector<char> requested(static_cast<std::size_t>(files), 0);
  std::int64_t unmatched = 0;

  for (std::int64_t c = 0; c < profile.num_clusters(); ++c) {
    const auto row = profile.cluster(c);
    std::int64_t free_caches = config.d;
    for (std::int64_t n = 0; n < files; ++n) {
      const std::int64_t u = row[static_cast<std::size_t>(n)];
      if (u == 0) continue;
      requested[static_cast<std::size_t>(n)] = 1;
      const std::int64_t take = std::min(u, free_caches);
      free_caches -= take;
      unmatched += u - take;
      if (take > 0) demanded[static_cast<std::size_t>(n)] = 1;
    }
  }

  std::int64_t cached_demands = 0;
  std::int64_t uncached_demands = 0;
  for (std::int64_t n = 0; n < files; ++n) {
    if (!demanded[static_cast<std::size_t>(n)]) continue;
    (n < library ? cached_demands : uncached_demands) += 1;
  }
  const std::int64_t distinct_requested = std::count(requested.begin(), requested.end(), 1);

  const double memory = std::min(config.M, static_cast<double>(library));
  const double coded = coded_delivery_rate(config.K, memory, library, cached_demands);
  const double uncoded = static_cast<double>(unmatched + uncached_demands);
  return {coded, uncoded, std::min(static_cast<double>(distinct_requested), coded + uncoded)};
}

}  // namespace cachematch
