#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cachematch {

/// Raised when a configuration breaks a structural requirement of the model
/// (cluster size not dividing the cache count, load outside (0, 1/2), ...).
class HardInvariantViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation is called outside the popularity regime it is
/// defined for (for example a shallow-Zipf formula with beta > 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Load constant alpha = -log(2 rho e^{1 - 2 rho}); strictly positive on (0, 1/2).
double load_exponent(double rho);

/// Largest t0 with d >= (2(1 + t0)/alpha) log K; negative when no positive
/// slack fits the cluster size.
double max_cluster_slack(std::int64_t K, std::int64_t d, double rho);

/// System parameters shared by every scheme.
///
/// K caches are split into K/d clusters of d caches each, N files of unit size
/// follow a Zipf(beta) law, every cache stores M files worth of data and each
/// (cluster, file) pair sees Poisson(rho * d * p_n) requests.
struct SystemConfig {
  std::int64_t K = 0;
  std::int64_t d = 0;
  std::int64_t N = 0;
  double M = 0.0;
  double rho = 0.0;
  double beta = 0.0;
  double t0 = 0.0;

  std::int64_t clusters() const { return d > 0 ? K / d : 0; }
  double alpha() const { return load_exponent(rho); }
  /// Minimum cluster size (2(1 + t0)/alpha) log K under which the analytic
  /// unmatched-user bounds are proven.
  double cluster_floor() const;
  bool meets_cluster_floor() const;
  bool shallow() const { return beta >= 0.0 && beta < 1.0; }
  bool steep() const { return beta > 1.0; }

  bool operator==(const SystemConfig&) const = default;
};

/// Exponents of a polynomial-in-K operating point: N = K^nu, d = K^delta, M = K^mu.
struct PolyKPoint {
  double nu = 1.0;
  double delta = 0.5;
  double mu = 0.0;
  double beta = 0.0;

  /// Throws HardInvariantViolation unless nu >= 1, delta in (0, 1],
  /// mu in [0, 1], mu <= nu and beta >= 0 with beta != 1.
  void check() const;
};

struct InvariantCheck {
  std::string name;
  bool passed = true;
  /// Hard checks make the configuration unusable; soft ones only flag that
  /// the analytic formulas are outside their proof regime.
  bool hard = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<InvariantCheck> checks;

  bool ok() const;
  std::vector<std::string> errors() const;
  std::vector<std::string> warnings() const;
};

/// Evaluates every invariant without throwing.
ValidationReport inspect(const SystemConfig& config);

/// Like inspect(), but throws HardInvariantViolation listing every hard
/// failure. Soft failures are returned as warnings.
ValidationReport validate(const SystemConfig& config);

// Structured-text configuration files: one `key = value` pair per line, `#`
// starts a comment. Keys are the field names of SystemConfig.

using ConfigFields = std::map<std::string, std::string>;

ConfigFields parse_config_fields(std::istream& in);
ConfigFields read_config_fields(const std::string& path);

/// Builds a config from parsed fields. Every field must be present and
/// numeric; unknown keys are rejected. Does not run validate().
SystemConfig config_from_fields(const ConfigFields& fields);

/// Sets one field by name, parsing the value. Used for CLI overrides.
void set_config_field(SystemConfig& config, const std::string& key, const std::string& value);

std::string to_config_text(const SystemConfig& config);
std::string describe(const SystemConfig& config);

}  // namespace cachematch
