#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cachematch/config.hpp"
#include "cachematch/matching.hpp"
#include "cachematch/popularity.hpp"
#include "cachematch/rate.hpp"
#include "cachematch/rng.hpp"
#include "cachematch/traffic.hpp"

namespace cachematch {

struct KnapsackInstance {
  std::vector<double> v;
  std::vector<std::int64_t> w;
  double capacity = 0.0;
  std::int64_t N1 = 1;
  std::int64_t N2 = 1;
  /// Caches per cluster; 0 for a bare knapsack with no cache layout.
  std::int64_t cluster_size = 0;
  /// True when N1 > N2 before clamping.
  bool thresholds_clamped = false;
};

struct KsPlacement {
  std::vector<double> x;
  /// c_n = floor(x_n) w_n copies per cluster.
  std::vector<std::int64_t> c;
  /// Files held by each cache of a cluster, in the order they were dealt.
  std::vector<std::vector<std::int64_t>> cache_assignment;
  /// Files with x_n = 1, ascending.
  std::vector<std::int64_t> cached_set;
  double objective = 0.0;
};

/// Values v_n = 1 - (1 - p_n)^d and the four-branch weights
/// (d; ceil((1 + p_1/2) rho d p_n); ceil(4 p_1 (log d)^2); 1), each capped at d.
/// Capacity is d floor(M) so every cache ends up with at most M whole files.
/// Throws DomainError unless beta > 1 and d >= 2.
KnapsackInstance build_knapsack(const SystemConfig& config, const ZipfCatalog& catalog);

/// Greedy by v/w (ties to the lower index); at most one x_n is fractional.
/// When cluster_size > 0 the c_n copies of each file in the cached set are
/// dealt in file order, the r-th copy to cache (r mod d).
KsPlacement solve_fractional_knapsack(const KnapsackInstance& instance);

inline KsPlacement ks_placement(const SystemConfig& config, const ZipfCatalog& catalog) {
  return solve_fractional_knapsack(build_knapsack(config, catalog));
}

/// Match Least Popular for one cluster. Users are numbered in ascending file
/// order (the u_1 requests for file 0 first). Files are visited from the last
/// down to the first; each request takes a uniformly random free cache among
/// those storing its file, drawn with `stream.below` over the free caches in
/// ascending index order.
MatchingOutcome mlp_match(std::span<const std::int64_t> cluster_requests, const KsPlacement& placement,
                          Stream& stream);

struct PamSteepServeResult {
  RateBreakdown rate;
  std::int64_t server_files = 0;
  /// Requests for cached files left unmatched by MLP.
  std::int64_t unmatched_cached = 0;
  /// Requests for files outside the cached set.
  std::int64_t uncached_requests = 0;
};

/// One realization: MLP per cluster with the stream keyed by
/// (seed, trial, cluster); each distinct server-bound file is broadcast once.
PamSteepServeResult pam_steep_serve(const RequestProfile& profile, const KsPlacement& placement,
                                    std::uint64_t seed, std::uint64_t trial);

struct RateEnvelope {
  /// 0 when M >= N log N / d, else min{K/(dM)^{beta-1}, K^{1/beta}}.
  double order_value = 0.0;
  /// The order expression carries unknown constants.
  bool big_o_only = true;
  /// sum over uncached n of 1 - (1 - p_n)^K.
  double expected_uncached = 0.0;
};

/// Throws DomainError for beta <= 1.
RateEnvelope pam_steep_rate(const SystemConfig& config);
double expected_uncached_files(const ZipfCatalog& catalog, const KsPlacement& placement, std::int64_t users);

void write_ks_placement_csv(std::ostream& out, const KsPlacement& placement);

}  // namespace cachematch
