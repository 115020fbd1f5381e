#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "cachematch/config.hpp"
#include "cachematch/popularity.hpp"
#include "cachematch/rate.hpp"
#include "cachematch/traffic.hpp"

namespace cachematch {

/// The cache memory is below N/((1 - beta) d), where proportional placement
/// cannot store every file; the scheme then serves everything from the server.
class InsufficientMemory : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Whole-file replication inside every cluster (the same in all clusters).
struct ProportionalPlacement {
  std::int64_t cluster_size = 0;
  /// d_n, copies of file n per cluster.
  std::vector<std::int64_t> copies;
  /// Files stored on each cache of a cluster, ascending.
  std::vector<std::vector<std::int64_t>> cache_contents;
};

/// d_n = max(1, floor(p_n d M)) capped at d, with leftover slots handed out to
/// the most popular files first; copies are dealt round-robin in file order.
/// Each cache holds at most floor(M) whole files. Throws InsufficientMemory
/// when M < N/((1 - beta) d) or when d floor(M) < N.
ProportionalPlacement proportional_placement(const SystemConfig& config, const ZipfCatalog& catalog);

enum class EvictionRule {
  /// Every request for every file stored on a cache whose fractional load
  /// exceeds one is sent to the server.
  AllRequestsOfFile,
  /// Only the requests a maximum matching cannot place go to the server.
  OverflowOnly,
};

struct PamServeResult {
  RateBreakdown rate;
  /// Distinct files broadcast by the server.
  std::int64_t server_files = 0;
  /// Caches (over all clusters) whose fractional load exceeded one.
  std::int64_t violating_caches = 0;
  /// Requests evicted to the server before matching.
  std::int64_t evicted_requests = 0;
  /// Requests left unmatched by the maximum matching of surviving requests.
  std::int64_t unmatched_after_matching = 0;
};

/// Serves one realization: per cluster, evict per the rule, match the rest
/// with max_matching and broadcast every distinct server-bound file once.
PamServeResult pam_shallow_serve(const RequestProfile& profile, const ProportionalPlacement& placement,
                                 const SystemConfig& config,
                                 EvictionRule rule = EvictionRule::AllRequestsOfFile);

/// Server-only service used below the memory threshold: every distinct
/// requested file is broadcast once.
PamServeResult serve_from_server(const RequestProfile& profile);

/// z = (1 - beta) rho h((1 + rho)/(2 rho)).
double pam_exponent_z(double rho, double beta);

struct PamShallowRate {
  /// rho K below the memory threshold, else min{rho K, K M e^{-z d M/N}}.
  double rate = 0.0;
  /// min{K M e^{-z d M/N}, K d e^{-z d M/N} + (N K/d) e^{-z d}}, capped at rho K.
  double tighter = 0.0;
  double z = 0.0;
  bool below_threshold = false;
};

/// Throws DomainError for beta >= 1.
PamShallowRate pam_shallow_rate(const SystemConfig& config);

/// `cluster,cache,file` rows (1-based) for the placement of one cluster.
void write_placement_csv(std::ostream& out, const std::vector<std::vector<std::int64_t>>& cache_contents);

}  // namespace cachematch
