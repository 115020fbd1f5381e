#include "cachematch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cachematch/bounds.hpp"
#include "cachematch/csv.hpp"
#include "cachematch/mathkit.hpp"
#include "cachematch/popularity.hpp"
#include "cachematch/scheme_hcm.hpp"
#include "cachematch/scheme_pam_shallow.hpp"
#include "cachematch/scheme_pam_steep.hpp"
#include "cachematch/scheme_pcd.hpp"
#include "cachematch/traffic.hpp"
#include "json.hpp"

namespace cachematch {

namespace {

class Suite {
 public:
  explicit Suite(VerifyReport& r) : report_(r) {}

  void check(const std::string& name, bool ok, const std::string& detail) {
    report_.checks.push_back({name, ok ? CheckStatus::PASS : CheckStatus::FAIL, detail});
  }
  void skip(const std::string& name, const std::string& why) {
    report_.checks.push_back({name, CheckStatus::SKIPPED, why});
  }
  void info(const std::string& name, const std::string& detail) {
    report_.checks.push_back({name, CheckStatus::INFO, detail});
  }

 private:
  VerifyReport& report_;
};

std::string num(double x) { return csv_number(x); }

// Pr{Bin(n, q) <= k} by direct pmf summation.
double binomial_cdf(std::int64_t n, double q, std::int64_t k) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  const double lq = std::log(q);
  const double l1q = std::log1p(-q);
  CompensatedSum s;
  for (std::int64_t i = 0; i <= k; ++i) {
    const double lp = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(i) + 1.0) -
                      std::lgamma(static_cast<double>(n - i) + 1.0) + static_cast<double>(i) * lq +
                      static_cast<double>(n - i) * l1q;
    s += std::exp(lp);
  }
  return s.value();
}

void poisson_checks(Suite& s, const SystemConfig& c) {
  const double lambda = c.rho * static_cast<double>(c.d);
  const std::int64_t m = c.d;

  bool monotone = true;
  for (int i = 1; i < 20; ++i) {
    const double a = static_cast<double>(m) * (i - 1) / 20.0;
    const double b = static_cast<double>(m) * i / 20.0;
    if (a > 0.0 && poisson_pmf(a, m) > poisson_pmf(b, m)) monotone = false;
  }
  s.check("poisson_pmf_increasing_below_m", monotone, "Pr{Y=m} over lambda in (0, m), m = " + std::to_string(m));

  const double excess = poisson_expected_excess(lambda, m);
  const double atom = static_cast<double>(m) * poisson_pmf(lambda, m);
  s.check("unmatched_at_most_m_pmf", excess <= atom, "E[U] = " + num(excess) + " <= m Pr{Y=m} = " + num(atom));

  const double tail = poisson_tail(lambda, m);
  const double lhs = poisson_conditional_mean(lambda, m);
  const double rhs = static_cast<double>(m) * poisson_pmf(lambda, m) / tail + lambda;
  s.check("conditional_mean_identity", std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, rhs),
          "E[Y|Y>=m] = " + num(lhs) + " vs " + num(rhs));

  const double bound = expected_unmatched_bound(m, c.rho);
  s.check("unmatched_per_cluster_bound", excess <= bound,
          "E[U] = " + num(excess) + " <= " + num(bound));

  const double total = static_cast<double>(c.clusters()) * excess;
  const double tight = pcd_unmatched_bound(c);
  s.check("unmatched_total_tight_bound", total <= tight, "E[U0] = " + num(total) + " <= " + num(tight));

  bool chernoff = true;
  for (int e = 1; e <= 9; ++e) {
    const double eps = e / 10.0;
    const auto k = static_cast<std::int64_t>(std::ceil((1.0 + eps) * lambda));
    if (poisson_tail(lambda, k) > poisson_chernoff_bound(lambda, eps)) chernoff = false;
  }
  s.check("poisson_chernoff", chernoff, "mu = " + num(lambda) + ", eps in {0.1..0.9}");
}

void pcd_floor_checks(Suite& s, const SystemConfig& c, bool floor_ok) {
  if (!floor_ok) {
    s.skip("unmatched_total_polynomial_bound", "d is below the cluster floor");
    return;
  }
  const double tight = pcd_unmatched_bound(c);
  const double poly = std::pow(static_cast<double>(c.K), -c.t0) * kInvSqrt2Pi;
  s.check("unmatched_total_polynomial_bound", tight <= poly, num(tight) + " <= K^-t0/sqrt(2 pi) = " + num(poly));
}

void shallow_checks(Suite& s, const SystemConfig& c, const ZipfCatalog& catalog, bool floor_ok) {
  // Zipf partial-sum sandwich up to N.
  bool sandwich = true;
  const auto A = partial_sums_A(c.N, c.beta);
  for (std::int64_t m = 1; m <= c.N; ++m) {
    const double x = (1.0 - c.beta) * A[static_cast<std::size_t>(m - 1)];
    const double top = std::pow(static_cast<double>(m), 1.0 - c.beta);
    if (!(top - 1.0 <= x && x <= top)) sandwich = false;
  }
  s.check("zipf_partial_sum_sandwich", sandwich, "m in [1, N]");

  const auto pam = pam_shallow_rate(c);
  s.check("pam_exponent_positive", pam.z > 0.0, "z = " + num(pam.z));
  s.check("pam_tighter_le_rate", pam.tighter <= pam.rate, num(pam.tighter) + " <= " + num(pam.rate));

  const auto pcd = pcd_rate_shallow(c);
  const auto hcm = hcm_rate(c, c.t0);
  s.check("hcm_le_pcd", hcm.rate <= pcd.total, num(hcm.rate) + " <= " + num(pcd.total));
  s.check("hcm_exact_sum_le_branch_bound", hcm.coded_sum <= hcm.rx_bound + 1e-12 * std::max(1.0, hcm.rx_bound),
          num(hcm.coded_sum) + " <= " + num(hcm.rx_bound));

  const auto plan = build_color_plan(c, catalog, c.t0);
  double sum_p = 0.0;
  for (double p : plan.color_popularity) sum_p += p;
  s.check("color_popularity_sums_to_one", std::abs(sum_p - 1.0) <= 1e-12, num(sum_p));
  if (plan.fallback) {
    s.skip("color_popularity_floor", "log K < 2 g alpha");
  } else {
    const double least = *std::min_element(plan.color_popularity.begin(), plan.color_popularity.end());
    const double floor = plan.g / static_cast<double>(plan.chi);
    s.check("color_popularity_floor", least >= floor, "min P_x = " + num(least) + " >= g/chi = " + num(floor));
  }
  const double exact_u0 = hcm_expected_unmatched(plan, c);
  const double chain = hcm_unmatched_bound(plan, c);
  s.check("hcm_unmatched_chain", exact_u0 <= chain, num(exact_u0) + " <= " + num(chain));
  if (!floor_ok || plan.fallback) {
    s.skip("hcm_unmatched_polynomial_bound", "d is below the cluster floor or log K < 2 g alpha");
  } else {
    const double poly = std::pow(static_cast<double>(c.K), -c.t0) * kInvSqrt2Pi;
    s.check("hcm_unmatched_polynomial_bound", chain <= poly, num(chain) + " <= " + num(poly));
  }

  if (c.N < 10) {
    s.skip("lower_bound_le_achievable", "N < 10");
    s.skip("optimality_gap", "N < 10");
    s.skip("distinct_files_tail", "N < 10");
    return;
  }
  const double lb = shallow_lower_bound(c);
  const double best = std::min({pcd.total, pam.rate, hcm.rate});
  s.check("lower_bound_le_achievable", lb <= best, num(lb) + " <= " + num(best));
  if (in_gap_regime(c)) {
    const double gap = optimality_gap(c);
    const double C = gap_constant(c);
    s.check("optimality_gap", gap <= C * (1.0 + 1e-12), num(gap) + " <= C = " + num(C));
  } else {
    s.skip("optimality_gap", "M >= (1 - e^-1/2) N/(2d)");
  }

  // Distinct files among the users of one cluster over ceil(N/(rho d)) instances.
  const double B = std::ceil(static_cast<double>(c.N) / (c.rho * static_cast<double>(c.d)));
  const double q = -std::expm1(-c.rho * static_cast<double>(c.d) * B / static_cast<double>(c.N));
  bool tail_ok = true;
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto k = static_cast<std::int64_t>(std::floor((1.0 - std::exp(-1.0) - eps) * static_cast<double>(c.N)));
    const double prob = binomial_cdf(c.N, q, k);
    const double bound = std::exp(-static_cast<double>(c.N) * kl_bernoulli(std::exp(-1.0) + eps, std::exp(-1.0)));
    if (prob > bound) tail_ok = false;
  }
  s.check("distinct_files_tail", tail_ok, "eps in {0.05, 0.1, 0.2}");
}

void steep_checks(Suite& s, const SystemConfig& c, const ZipfCatalog& catalog, const VerifyOptions& opt) {
  if (c.d < 2) {
    s.skip("knapsack_capacity", "d < 2");
    return;
  }
  const auto inst = build_knapsack(c, catalog);
  const auto ks = solve_fractional_knapsack(inst);
  double used = 0.0;
  for (std::size_t n = 0; n < inst.w.size(); ++n) used += ks.x[n] * static_cast<double>(inst.w[n]);
  s.check("knapsack_capacity", used <= inst.capacity + 1e-9, num(used) + " <= " + num(inst.capacity));
  std::size_t most = 0;
  for (const auto& files : ks.cache_assignment) most = std::max(most, files.size());
  s.check("cache_memory_respected", static_cast<double>(most) <= c.M, std::to_string(most) + " <= M");
  if (inst.thresholds_clamped) s.info("request_thresholds", "N1 > N2 before clamping");

  const auto pcd = pcd_rate_steep(c);
  s.check("pcd_rate_capped", pcd.total <= c.rho * static_cast<double>(c.K), num(pcd.total));

  // Sampled behavior; these have no finite-d constant to assert.
  const TrafficModel traffic(c, catalog);
  const double p1 = catalog.p(0);
  std::int64_t concentrated = 0;
  std::int64_t all_cached_matched = 0;
  std::int64_t clusters_seen = 0;
  for (std::int64_t t = 0; t < opt.trials; ++t) {
    const auto profile = traffic.sample(opt.seed, static_cast<std::uint64_t>(t));
    const auto served = pam_steep_serve(profile, ks, opt.seed, static_cast<std::uint64_t>(t));
    if (served.unmatched_cached == 0) ++all_cached_matched;
    const auto row = profile.cluster(0);
    bool e1 = true;
    for (std::int64_t n = 0; n < inst.N2; ++n) {
      const double cap = n < inst.N1 ? (1.0 + p1 / 4.0) * static_cast<double>(c.d) * catalog.p(n)
                                     : 2.0 * p1 * std::log(static_cast<double>(c.d)) * std::log(static_cast<double>(c.d));
      if (static_cast<double>(row[static_cast<std::size_t>(n)]) > cap) e1 = false;
    }
    concentrated += e1 ? 1 : 0;
    ++clusters_seen;
  }
  s.info("request_concentration", "empirical Pr{E1} = " +
                                      num(static_cast<double>(concentrated) / static_cast<double>(clusters_seen)));
  s.info("mlp_matches_cached", "empirical Pr{all cached requests matched} = " +
                                   num(static_cast<double>(all_cached_matched) / static_cast<double>(opt.trials)));
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::PASS:
      return "PASS";
    case CheckStatus::FAIL:
      return "FAIL";
    case CheckStatus::SKIPPED:
      return "SKIPPED";
    case CheckStatus::INFO:
      break;
  }
  return "INFO";
}

bool VerifyReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::FAIL; });
}

VerifyReport verify_bounds(const SystemConfig& config, const VerifyOptions& options) {
  VerifyReport report;
  report.config = config;
  report.warnings = validate(config).warnings();
  Suite s(report);
  const bool floor_ok = config.meets_cluster_floor();
  const auto catalog = build_catalog(config.N, config.beta);

  poisson_checks(s, config);
  pcd_floor_checks(s, config, floor_ok);
  if (config.shallow()) {
    shallow_checks(s, config, catalog, floor_ok);
  } else {
    steep_checks(s, config, catalog, options);
  }
  return report;
}

std::string verify_report_text(const VerifyReport& report) {
  std::ostringstream os;
  os << "config: " << describe(report.config) << "\n";
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
  for (const auto& c : report.checks) {
    os << to_string(c.status) << "  " << c.name << "  " << c.detail << "\n";
  }
  os << (report.all_passed() ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

std::string verify_report_json(const VerifyReport& report) {
  const auto& c = report.config;
  nlohmann::ordered_json j;
  j["config"] = {{"K", c.K}, {"d", c.d}, {"N", c.N}, {"M", c.M}, {"rho", c.rho}, {"beta", c.beta}, {"t0", c.t0}};
  j["warnings"] = report.warnings;
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : report.checks) {
    checks.push_back({{"name", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}});
  }
  j["passed"] = report.all_passed();
  return j.dump(2) + "\n";
}

}  // namespace cachematch
