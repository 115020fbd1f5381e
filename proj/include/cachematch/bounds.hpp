#pragma once

#include <vector>

#include "cachematch/config.hpp"

namespace cachematch {

// Converse bounds on the optimal expected rate for 0 <= beta < 1.

/// 1 - e^{-1}/2.
inline constexpr double kDistinctFraction = 0.81606027941427883;

/// (1/4) rho' s d [1 - e^{-1}/2 - s d M/N]^+ with rho' = (1 - beta) rho.
/// Throws DomainError for N < 10 or s outside [1, K/d].
double cutset_bound_uniform(const SystemConfig& config, std::int64_t s);

/// 96/((1 - beta) rho (1 - e^{-1}/2)^2).
double gap_constant(const SystemConfig& config);

/// M < (1 - e^{-1}/2) N/(2d).
bool in_gap_regime(const SystemConfig& config);

struct LowerBoundReport {
  std::vector<double> per_s;
  double best = 0.0;
  /// ((1-beta) rho (1-e^{-1}/2)/48) min{(1-e^{-1}/2) N/M - d, K}, clamped at 0.
  double closed_form = 0.0;
  /// ((1-beta)(1-e^{-1}/2)^2 rho/96) min{N/M, rho K} inside the gap regime, else 0.
  double small_memory_form = 0.0;
  double gap_constant_C = 0.0;
};

/// Throws DomainError unless 0 <= beta < 1 and N >= 10.
LowerBoundReport lower_bound_report(const SystemConfig& config);

/// max of the closed form and the small-memory form.
double shallow_lower_bound(const SystemConfig& config);

/// pcd_rate_shallow(config).total / shallow_lower_bound(config). Throws
/// DomainError outside the gap regime.
double optimality_gap(const SystemConfig& config);

}  // namespace cachematch
