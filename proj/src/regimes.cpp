#include "cachematch/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cachematch/csv.hpp"
#include "cachematch/mathkit.hpp"

namespace cachematch {

namespace {

Winner compare(double pcd, double pam) {
  if (std::abs(pcd - pam) <= kRegimeTolerance) return Winner::BOUNDARY;
  return pcd < pam ? Winner::PCD : Winner::PAM;
}

}  // namespace

const char* to_string(Winner w) {
  switch (w) {
    case Winner::PCD:
      return "PCD";
    case Winner::PAM:
      return "PAM";
    case Winner::BOUNDARY:
      break;
  }
  return "BOUNDARY";
}

RegimeVerdict classify_shallow(const PolyKPoint& point) {
  if (!(point.beta >= 0.0 && point.beta < 1.0)) throw DomainError("classify_shallow needs beta in [0, 1)");
  RegimeVerdict v;
  v.sigma_pcd = std::min(1.0, positive_part(point.nu - point.mu));
  const double margin = point.mu - (point.nu - point.delta);
  v.sigma_pam = margin > kRegimeTolerance ? 0.0 : 1.0;
  if (std::abs(margin) <= kRegimeTolerance) {
    v.winner = Winner::BOUNDARY;
  } else {
    v.winner = margin < 0.0 ? Winner::PCD : Winner::PAM;
  }
  return v;
}

bool steep_region_favors_pcd(const PolyKPoint& point) {
  const double b = point.beta;
  return point.mu <= std::min(point.nu - point.delta, (1.0 - b * point.delta) / (b - 1.0)) + kRegimeTolerance;
}

RegimeVerdict classify_steep(const PolyKPoint& point) {
  if (!(point.beta > 1.0)) throw DomainError("classify_steep needs beta > 1");
  const double b = point.beta;
  const double mu = point.mu;
  const double delta = point.delta;
  RegimeVerdict v;
  // Both rates vanish once mu > 1/(beta - 1); clamp so that reads as a tie.
  v.sigma_pcd = positive_part(std::min((1.0 - (b - 1.0) * mu) / b, point.nu - mu));
  if (mu + delta > std::min(point.nu, 1.0 / (b - 1.0)) + kRegimeTolerance) {
    v.sigma_pam = 0.0;
  } else {
    const double raw = 1.0 - (b - 1.0) * (delta + mu);
    v.clamped = raw < 0.0;
    v.sigma_pam = std::min(1.0 / b, positive_part(raw));
  }
  v.winner = compare(v.sigma_pcd, v.sigma_pam);
  if (v.winner != Winner::BOUNDARY) {
    v.region_agrees = steep_region_favors_pcd(point) == (v.winner == Winner::PCD);
  }
  return v;
}

RegimeVerdict classify(const PolyKPoint& point) {
  return point.beta > 1.0 ? classify_steep(point) : classify_shallow(point);
}

std::vector<RegimeCell> regime_map(double beta, double nu, std::int64_t resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  const double span = std::min(nu, 1.0);
  const auto r = static_cast<double>(resolution);
  std::vector<RegimeCell> cells;
  cells.reserve(static_cast<std::size_t>(resolution * resolution));
  for (std::int64_t i = 0; i < resolution; ++i) {
    for (std::int64_t j = 0; j < resolution; ++j) {
      RegimeCell cell;
      cell.delta = (static_cast<double>(i) + 0.5) / r;
      cell.mu = (static_cast<double>(j) + 0.5) / r * span;
      cell.verdict = classify(PolyKPoint{nu, cell.delta, cell.mu, beta});
      cells.push_back(cell);
    }
  }
  return cells;
}

void write_regime_csv(std::ostream& out, const std::vector<RegimeCell>& cells) {
  out << "delta,mu,winner,sigma_pcd,sigma_pam\n";
  for (const auto& c : cells) {
    out << csv_number(c.delta) << ',' << csv_number(c.mu) << ',' << to_string(c.verdict.winner) << ','
        << csv_number(c.verdict.sigma_pcd) << ',' << csv_number(c.verdict.sigma_pam) << '\n';
  }
}

}  // namespace cachematch
