#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cachematch/config.hpp"
#include "cachematch/popularity.hpp"
#include "cachematch/rate.hpp"
#include "cachematch/traffic.hpp"

namespace cachematch {

// Hybrid Coding and Matching. Files are colored n -> n mod chi; every cluster
// gives floor(d P_x) caches to color x and ignores the rest.

struct ColorPlan {
  std::int64_t chi = 1;
  std::vector<std::int64_t> file_color;
  std::vector<double> color_popularity;
  std::vector<std::int64_t> color_size;
  std::vector<std::int64_t> caches_per_color;
  std::int64_t colorless_per_cluster = 0;
  double g = 0.0;
  double t = 0.0;
  /// log K < 2 g alpha, so chi fell back to 1.
  bool fallback = false;
};

/// g = (3^{1-beta} - 1)/4^{1-beta}.
double color_balance_g(double beta);

/// log K >= 2 g alpha.
bool k_lower_bound_holds(const SystemConfig& config);

/// max(1, floor(alpha g d/(2 (1+t) log K))), or 1 when the K lower bound fails.
std::int64_t compute_chi(const SystemConfig& config, double t);

ColorPlan build_color_plan(const SystemConfig& config, const ZipfCatalog& catalog, double t);
ColorPlan build_color_plan_with_chi(const SystemConfig& config, const ZipfCatalog& catalog, std::int64_t chi,
                                    double t);

struct HcmRate {
  /// min{rho K, sum_x [|W_x|/M - 1]^+ + K^{-t}/sqrt(2 pi)}; exactly K^{-t}/sqrt(2 pi)
  /// once M >= ceil(N/chi).
  double rate = 0.0;
  /// sum_x [|W_x|/M - 1]^+, which is N/M - chi when M <= floor(N/chi).
  double coded_sum = 0.0;
  /// The looser three-branch form: N/M - 1, 0, or (N mod chi)(ceil(N/chi)/M - 1).
  double rx_bound = 0.0;
  double unmatched = 0.0;
  std::int64_t chi = 1;
  bool fallback = false;
};

/// Throws DomainError unless 0 <= beta < 1; requires 0 <= t <= t0.
HcmRate hcm_rate(const SystemConfig& config, double t);

/// (1/sqrt(2 pi)) sum_x P_x K (2 rho e^{1 - 2 rho})^{floor(d P_x)}.
double hcm_unmatched_bound(const ColorPlan& plan, const SystemConfig& config);

/// Exact E[U^0] = (K/d) sum_x E[(Y_x - floor(d P_x))^+], Y_x ~ Poisson(rho d P_x).
double hcm_expected_unmatched(const ColorPlan& plan, const SystemConfig& config);

struct HcmServeResult {
  RateBreakdown rate;
  std::int64_t unmatched = 0;
};

/// Per (cluster, color): requests fill the color's caches in file order; the
/// overflow is unicast. Each color gets a coded delivery over its
/// (K/d) floor(d P_x) caches and |W_x| files with memory M. The total is
/// capped by the number of distinct requested files.
HcmServeResult hcm_simulate(const RequestProfile& profile, const ColorPlan& plan, const SystemConfig& config);

/// `file,color` rows, 1-based.
void write_file_colors_csv(std::ostream& out, const ColorPlan& plan);
/// `cluster,cache,color` rows, 1-based; colorless caches get color 0.
void write_cache_colors_csv(std::ostream& out, const ColorPlan& plan, std::int64_t clusters);

}  // namespace cachematch
