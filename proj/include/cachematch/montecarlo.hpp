#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cachematch/config.hpp"
#include "cachematch/scheme_pam_shallow.hpp"

namespace cachematch {

class IncompatibleScheme : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Scheme { PCD, PAM_SHALLOW, PAM_STEEP, HCM };

const char* to_string(Scheme s);
/// Accepts "pcd", "pam-shallow", "pam-steep", "hcm" (case-insensitive, `_` or `-`).
Scheme parse_scheme(const std::string& name);

struct ExperimentSpec {
  SystemConfig config;
  Scheme scheme = Scheme::PCD;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  /// Slack for HCM; t0 when unset.
  std::optional<double> t_param;
  EvictionRule eviction = EvictionRule::AllRequestsOfFile;
  /// 0 uses the hardware concurrency.
  unsigned workers = 0;
};

struct RateReport {
  std::string scheme;
  std::int64_t trials = 0;
  double mean_rate = 0.0;
  double stderr_rate = 0.0;
  double coded_mean = 0.0;
  double unicast_mean = 0.0;
  double unicast_stderr = 0.0;
  /// Mean number of users the scheme could not place on a cache.
  double unmatched_mean = 0.0;
  double unmatched_stderr = 0.0;
  double analytic_rate = 0.0;
  bool bound_satisfied = false;
  /// Trials in which every cache met the fractional-load condition (PAM only).
  std::int64_t load_feasible_trials = 0;
  /// Of those, trials that still left a user unmatched.
  std::int64_t load_feasible_trials_with_unmatched = 0;
  std::vector<std::string> notes;
};

/// Runs `trials` independent realizations; trial i uses the traffic stream
/// (seed, i). Results are reduced in trial order, so the report does not
/// depend on the worker count. Throws IncompatibleScheme for a scheme/beta
/// mismatch and HardInvariantViolation for an invalid config.
RateReport run_experiment(const ExperimentSpec& spec);

/// Analytic rate the simulated mean is compared against.
double analytic_rate(const ExperimentSpec& spec);

std::string report_to_json(const RateReport& report, const ExperimentSpec& spec);

}  // namespace cachematch
