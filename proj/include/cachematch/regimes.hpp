#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cachematch/config.hpp"

namespace cachematch {

// Poly-K regimes: N = K^nu, d = K^delta, M = K^mu. Each scheme's rate grows
// like K^sigma and the smaller exponent wins.

enum class Winner { PCD, PAM, BOUNDARY };

const char* to_string(Winner w);

struct RegimeVerdict {
  Winner winner = Winner::BOUNDARY;
  double sigma_pcd = 0.0;
  double sigma_pam = 0.0;
  /// The [.]^+ clamp on the second PAM term was active.
  bool clamped = false;
  /// The closed-form region test agrees with the exponent comparison.
  bool region_agrees = true;
};

inline constexpr double kRegimeTolerance = 1e-12;

/// beta in [0, 1): PCD iff mu < nu - delta. sigma_pcd = min{1, [nu - mu]^+};
/// sigma_pam is 0 once mu + delta > nu (exponentially small rate) and 1 below.
RegimeVerdict classify_shallow(const PolyKPoint& point);

/// beta > 1: sigma_pcd = min{[1 - (beta-1) mu]/beta, nu - mu},
/// sigma_pam = min{1/beta, [1 - (beta-1)(delta+mu)]^+}, or 0 when
/// mu + delta > min{nu, 1/(beta-1)}.
RegimeVerdict classify_steep(const PolyKPoint& point);

/// PCD iff mu <= min{nu - delta, (1 - beta delta)/(beta - 1)}.
bool steep_region_favors_pcd(const PolyKPoint& point);

RegimeVerdict classify(const PolyKPoint& point);

struct RegimeCell {
  double delta = 0.0;
  double mu = 0.0;
  RegimeVerdict verdict;
};

/// resolution^2 cells over (0, 1] x [0, min(nu, 1)], evaluated at cell centers,
/// delta-major.
std::vector<RegimeCell> regime_map(double beta, double nu, std::int64_t resolution);

void write_regime_csv(std::ostream& out, const std::vector<RegimeCell>& cells);

}  // namespace cachematch
