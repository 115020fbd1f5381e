#pragma once

#include <cstdint>

#include "cachematch/config.hpp"
#include "cachematch/rate.hpp"
#include "cachematch/traffic.hpp"

namespace cachematch {

/// Pure Coded Delivery: users are matched to any free cache of their cluster,
/// then a coded broadcast serves the matched users and unmatched users get a
/// unicast.
///
/// For PcdRate, `coded` is the delivery term and `unicast` is the unmatched
/// term (K^{-t0}/sqrt(2 pi) analytically, U^0 in simulation).
using PcdRate = RateBreakdown;

/// min{rho K, [N/M - 1]^+ + K^{-t0}/sqrt(2 pi)} for beta in [0, 1). M = 0
/// gives rho K. Throws DomainError for beta >= 1.
PcdRate pcd_rate_shallow(const SystemConfig& config);

/// Three-branch steep-Zipf rate (beta > 1), capped at rho K:
///   K^{1/beta}                                      if M < 1
///   [(KM)^{1/beta}/M - 1]^+ + K^{-t0}/sqrt(2 pi)    if 1 <= M < N^beta/K
///   [N/M - 1]^+ + K^{-t0}/sqrt(2 pi)                otherwise
PcdRate pcd_rate_steep(const SystemConfig& config);

/// Dispatches on beta.
PcdRate pcd_rate(const SystemConfig& config);

/// Number of most popular files that PCD places in the caches: all N when
/// beta < 1; for beta > 1, none when M < 1, floor((KM)^{1/beta}) (clamped to
/// [1, N]) when M < N^beta/K, and N otherwise.
std::int64_t pcd_cached_library(const SystemConfig& config);

/// (K/d) (1/sqrt(2 pi)) d (rho e^{1 - rho})^d: the unmatched-user bound before
/// the cluster-floor relaxation.
double pcd_unmatched_bound(const SystemConfig& config);

/// One realization of PCD. Users of each cluster fill its caches in file-index
/// order, so U(c) = [Y(c) - d]^+ users stay unmatched. The coded term is the
/// exact uncoded-placement delivery rate over the cached library for the
/// distinct files requested by matched users; matched requests for uncached
/// files cost one whole-file broadcast per distinct file. The total is capped
/// by the number of distinct requested files (broadcasting each once).
PcdRate pcd_simulate(const RequestProfile& profile, const SystemConfig& config);

/// Unmatched users U^0 = sum_c [Y(c) - d]^+ of a profile.
std::int64_t pcd_unmatched_users(const RequestProfile& profile, const SystemConfig& config);

}  // namespace cachematch
