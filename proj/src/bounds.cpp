#include "cachematch/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cachematch/mathkit.hpp"
#include "cachematch/scheme_pcd.hpp"

namespace cachematch {

namespace {

void require_shallow_converse(const SystemConfig& config) {
  if (!config.shallow()) throw DomainError("lower bounds are only given for beta in [0, 1)");
  if (config.N < 10) throw DomainError("lower bounds need N >= 10");
}

}  // namespace

double cutset_bound_uniform(const SystemConfig& config, std::int64_t s) {
  require_shallow_converse(config);
  if (s < 1 || s > config.clusters()) throw DomainError("s must lie in [1, K/d]");
  const double sd = static_cast<double>(s * config.d);
  const double rho = (1.0 - config.beta) * config.rho;
  return 0.25 * rho * sd * positive_part(kDistinctFraction - sd * config.M / static_cast<double>(config.N));
}

double gap_constant(const SystemConfig& config) {
  return 96.0 / ((1.0 - config.beta) * config.rho * kDistinctFraction * kDistinctFraction);
}

bool in_gap_regime(const SystemConfig& config) {
  return config.M < kDistinctFraction * static_cast<double>(config.N) / (2.0 * static_cast<double>(config.d));
}

LowerBoundReport lower_bound_report(const SystemConfig& config) {
  require_shallow_converse(config);
  LowerBoundReport r;
  for (std::int64_t s = 1; s <= config.clusters(); ++s) {
    r.per_s.push_back(cutset_bound_uniform(config, s));
  }
  const double scale = 1.0 - config.beta;
  const double K = static_cast<double>(config.K);
  const double N = static_cast<double>(config.N);
  const double ratio = config.M > 0.0 ? N / config.M : std::numeric_limits<double>::infinity();
  const double inner = std::min(kDistinctFraction * ratio - static_cast<double>(config.d), K);
  r.closed_form = positive_part(scale * config.rho * kDistinctFraction / 48.0 * inner);
  if (in_gap_regime(config)) {
    r.small_memory_form =
        scale * kDistinctFraction * kDistinctFraction * config.rho / 96.0 * std::min(ratio, config.rho * K);
  }
  r.gap_constant_C = gap_constant(config);
  r.best = std::max(r.closed_form, r.small_memory_form);
  for (double v : r.per_s) r.best = std::max(r.best, v);
  return r;
}

double shallow_lower_bound(const SystemConfig& config) {
  const auto r = lower_bound_report(config);
  return std::max(r.closed_form, r.small_memory_form);
}

double optimality_gap(const SystemConfig& config) {
  require_shallow_converse(config);
  if (!in_gap_regime(config)) throw DomainError("optimality gap needs M < (1 - e^{-1}/2) N/(2d)");
  return pcd_rate_shallow(config).total / shallow_lower_bound(config);
}

}  // namespace cachematch
