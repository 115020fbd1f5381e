#include "cachematch/scheme_hcm.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cachematch/coded_delivery.hpp"
#include "cachematch/mathkit.hpp"

namespace cachematch {

double color_balance_g(double beta) {
  return (std::pow(3.0, 1.0 - beta) - 1.0) / std::pow(4.0, 1.0 - beta);
}

bool k_lower_bound_holds(const SystemConfig& config) {
  return std::log(static_cast<double>(config.K)) >= 2.0 * color_balance_g(config.beta) * config.alpha();
}

std::int64_t compute_chi(const SystemConfig& config, double t) {
  if (!k_lower_bound_holds(config)) return 1;
  const double arg = config.alpha() * color_balance_g(config.beta) * static_cast<double>(config.d) /
                     (2.0 * (1.0 + t) * std::log(static_cast<double>(config.K)));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(arg)));
}

ColorPlan build_color_plan_with_chi(const SystemConfig& config, const ZipfCatalog& catalog, std::int64_t chi,
                                    double t) {
  if (chi < 1) throw std::invalid_argument("chi must be positive");
  ColorPlan plan;
  plan.chi = chi;
  plan.t = t;
  plan.g = color_balance_g(config.beta);
  plan.fallback = !k_lower_bound_holds(config);
  const std::int64_t N = catalog.size();
  plan.file_color.resize(static_cast<std::size_t>(N));
  std::vector<CompensatedSum> mass(static_cast<std::size_t>(chi));
  plan.color_size.assign(static_cast<std::size_t>(chi), 0);
  for (std::int64_t n = 0; n < N; ++n) {
    const auto x = static_cast<std::size_t>(n % chi);
    plan.file_color[static_cast<std::size_t>(n)] = static_cast<std::int64_t>(x);
    mass[x] += catalog.p(n);
    ++plan.color_size[x];
  }
  std::int64_t used = 0;
  for (std::size_t x = 0; x < mass.size(); ++x) {
    const double P = mass[x].value();
    plan.color_popularity.push_back(P);
    const auto k = static_cast<std::int64_t>(std::floor(static_cast<double>(config.d) * P));
    plan.caches_per_color.push_back(k);
    used += k;
  }
  plan.colorless_per_cluster = config.d - used;
  return plan;
}

ColorPlan build_color_plan(const SystemConfig& config, const ZipfCatalog& catalog, double t) {
  return build_color_plan_with_chi(config, catalog, compute_chi(config, t), t);
}

HcmRate hcm_rate(const SystemConfig& config, double t) {
  if (!config.shallow()) throw DomainError("hcm_rate needs beta in [0, 1)");
  if (!(t >= 0.0 && t <= config.t0)) throw std::invalid_argument("t must lie in [0, t0]");
  HcmRate out;
  out.chi = compute_chi(config, t);
  out.fallback = !k_lower_bound_holds(config);
  out.unmatched = std::pow(static_cast<double>(config.K), -t) * kInvSqrt2Pi;
  const double cap = config.rho * static_cast<double>(config.K);
  const std::int64_t N = config.N;
  const std::int64_t chi = out.chi;
  const std::int64_t small = N / chi;
  const std::int64_t large = (N + chi - 1) / chi;
  const double M = config.M;

  if (M <= 0.0) {
    out.coded_sum = out.rx_bound = cap;
    out.rate = cap;
    return out;
  }
  if (M >= static_cast<double>(large)) {
    out.rate = out.unmatched;
    return out;
  }
  const std::int64_t big_colors = N % chi;
  const double big = positive_part(static_cast<double>(large) / M - 1.0);
  const double little = positive_part(static_cast<double>(small) / M - 1.0);
  out.coded_sum = static_cast<double>(big_colors) * big + static_cast<double>(chi - big_colors) * little;
  if (M <= static_cast<double>(small)) {
    out.rx_bound = static_cast<double>(N) / M - 1.0;
  } else {
    out.rx_bound = static_cast<double>(big_colors) * (static_cast<double>(large) / M - 1.0);
  }
  out.rate = std::min(cap, out.coded_sum + out.unmatched);
  return out;
}

double hcm_unmatched_bound(const ColorPlan& plan, const SystemConfig& config) {
  const double base = 2.0 * config.rho * std::exp(1.0 - 2.0 * config.rho);
  CompensatedSum sum;
  for (std::size_t x = 0; x < plan.color_popularity.size(); ++x) {
    sum += plan.color_popularity[x] * static_cast<double>(config.K) *
           std::pow(base, static_cast<double>(plan.caches_per_color[x]));
  }
  return kInvSqrt2Pi * sum.value();
}

double hcm_expected_unmatched(const ColorPlan& plan, const SystemConfig& config) {
  CompensatedSum sum;
  for (std::size_t x = 0; x < plan.color_popularity.size(); ++x) {
    const double lambda = config.rho * static_cast<double>(config.d) * plan.color_popularity[x];
    sum += poisson_expected_excess(lambda, plan.caches_per_color[x]);
  }
  return static_cast<double>(config.clusters()) * sum.value();
}

HcmServeResult hcm_simulate(const RequestProfile& profile, const ColorPlan& plan, const SystemConfig& config) {
  const std::int64_t N = profile.num_files();
  const auto chi = static_cast<std::size_t>(plan.chi);
  std::vector<char> matched_file(static_cast<std::size_t>(N), 0);
  std::vector<char> requested(static_cast<std::size_t>(N), 0);
  std::vector<std::int64_t> room(chi);
  HcmServeResult result;

  for (std::int64_t c = 0; c < profile.num_clusters(); ++c) {
    const auto row = profile.cluster(c);
    std::copy(plan.caches_per_color.begin(), plan.caches_per_color.end(), room.begin());
    for (std::int64_t n = 0; n < N; ++n) {
      const auto u = row[static_cast<std::size_t>(n)];
      if (u == 0) continue;
      requested[static_cast<std::size_t>(n)] = 1;
      auto& r = room[static_cast<std::size_t>(plan.file_color[static_cast<std::size_t>(n)])];
      const auto take = std::min(u, r);
      r -= take;
      result.unmatched += u - take;
      if (take > 0) matched_file[static_cast<std::size_t>(n)] = 1;
    }
  }

  std::vector<std::int64_t> demands(chi, 0);
  for (std::int64_t n = 0; n < N; ++n) {
    if (matched_file[static_cast<std::size_t>(n)]) ++demands[static_cast<std::size_t>(plan.file_color[static_cast<std::size_t>(n)])];
  }
  double coded = 0.0;
  for (std::size_t x = 0; x < chi; ++x) {
    if (demands[x] == 0) continue;
    const std::int64_t caches = profile.num_clusters() * plan.caches_per_color[x];
    coded += coded_delivery_rate(caches, config.M, plan.color_size[x], demands[x]);
  }
  const auto unicast = static_cast<double>(result.unmatched);
  const auto distinct = static_cast<double>(std::count(requested.begin(), requested.end(), 1));
  result.rate = {coded, unicast, std::min(distinct, coded + unicast)};
  return result;
}

void write_file_colors_csv(std::ostream& out, const ColorPlan& plan) {
  out << "file,color\n";
  for (std::size_t n = 0; n < plan.file_color.size(); ++n) {
    out << (n + 1) << ',' << (plan.file_color[n] + 1) << '\n';
  }
}

void write_cache_colors_csv(std::ostream& out, const ColorPlan& plan, std::int64_t clusters) {
  out << "cluster,cache,color\n";
  std::vector<std::int64_t> colors;
  for (std::size_t x = 0; x < plan.caches_per_color.size(); ++x) {
    colors.insert(colors.end(), static_cast<std::size_t>(plan.caches_per_color[x]),
                  static_cast<std::int64_t>(x) + 1);
  }
  colors.insert(colors.end(), static_cast<std::size_t>(plan.colorless_per_cluster), 0);
  for (std::int64_t c = 0; c < clusters; ++c) {
    for (std::size_t k = 0; k < colors.size(); ++k) out << (c + 1) << ',' << (k + 1) << ',' << colors[k] << '\n';
  }
}

}  // namespace cachematch
