#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cachematch/config.hpp"

namespace cachematch {

enum class CheckStatus { PASS, FAIL, SKIPPED, INFO };

const char* to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::PASS;
  std::string detail;
};

struct VerifyReport {
  SystemConfig config;
  std::vector<std::string> warnings;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Trials for the sampled checks (MLP behavior, request concentration).
  std::int64_t trials = 200;
};

/// Evaluates every inequality that applies at `config`. Checks whose proofs
/// need d >= 2 (1 + t0) log K / alpha are SKIPPED when that fails. Throws
/// HardInvariantViolation for an invalid config.
VerifyReport verify_bounds(const SystemConfig& config, const VerifyOptions& options = {});

std::string verify_report_text(const VerifyReport& report);
std::string verify_report_json(const VerifyReport& report);

}  // namespace cachematch
