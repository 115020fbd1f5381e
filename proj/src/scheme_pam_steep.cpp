#include "cachematch/scheme_pam_steep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "cachematch/mathkit.hpp"

namespace cachematch {

namespace {
constexpr std::uint64_t kMlpTag = 0x6d6c702d6d61746bULL;
}

KnapsackInstance build_knapsack(const SystemConfig& config, const ZipfCatalog& catalog) {
  if (!config.steep()) throw DomainError("knapsack storage needs beta > 1");
  if (config.d < 2) throw DomainError("knapsack storage needs d >= 2");
  const std::int64_t N = catalog.size();
  const double d = static_cast<double>(config.d);
  const double beta = config.beta;
  const double p1 = catalog.p(0);
  const double log_d = std::log(d);

  KnapsackInstance inst;
  inst.cluster_size = config.d;
  inst.capacity = d * std::floor(config.M);

  const double n1 = std::pow(d, 1.0 / beta) / (p1 * std::pow(log_d, 2.0 / beta));
  const double n2 = std::pow(d, (1.0 + 1.0 / beta) / 2.0);
  std::int64_t N1 = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::min(n1, 9e15))));
  std::int64_t N2 = std::min<std::int64_t>(N, static_cast<std::int64_t>(std::ceil(std::min(n2, 9e15))));
  N2 = std::max<std::int64_t>(N2, 1);
  if (N1 > N2) {
    inst.thresholds_clamped = true;
    N1 = N2;
  }
  inst.N1 = N1;
  inst.N2 = N2;

  inst.v.resize(static_cast<std::size_t>(N));
  inst.w.resize(static_cast<std::size_t>(N));
  const auto mid_weight = static_cast<std::int64_t>(std::ceil(4.0 * p1 * log_d * log_d));
  for (std::int64_t i = 0; i < N; ++i) {
    const double p = catalog.p(i);
    // 1 - (1-p)^d without cancellation for tiny p.
    inst.v[static_cast<std::size_t>(i)] = -std::expm1(d * std::log1p(-p));
    const std::int64_t n = i + 1;
    std::int64_t w = 1;
    if (n == 1) {
      w = config.d;
    } else if (n <= N1) {
      w = static_cast<std::int64_t>(std::ceil((1.0 + p1 / 2.0) * config.rho * d * p));
    } else if (n <= N2) {
      w = mid_weight;
    }
    inst.w[static_cast<std::size_t>(i)] = std::clamp<std::int64_t>(w, 1, config.d);
  }
  return inst;
}

KsPlacement solve_fractional_knapsack(const KnapsackInstance& instance) {
  const std::size_t N = instance.v.size();
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    // v_a/w_a > v_b/w_b, cross-multiplied.
    return instance.v[a] * static_cast<double>(instance.w[b]) >
           instance.v[b] * static_cast<double>(instance.w[a]);
  });

  KsPlacement out;
  out.x.assign(N, 0.0);
  out.c.assign(N, 0);
  double room = std::max(0.0, instance.capacity);
  CompensatedSum objective;
  for (auto n : order) {
    if (room <= 0.0) break;
    const auto w = static_cast<double>(instance.w[n]);
    if (w <= room) {
      out.x[n] = 1.0;
      room -= w;
    } else {
      out.x[n] = room / w;
      room = 0.0;
    }
    objective += out.x[n] * instance.v[n];
  }
  out.objective = objective.value();

  for (std::size_t n = 0; n < N; ++n) {
    if (out.x[n] == 1.0) {
      out.c[n] = instance.w[n];
      out.cached_set.push_back(static_cast<std::int64_t>(n));
    }
  }
  const std::int64_t d = instance.cluster_size;
  if (d > 0) {
    out.cache_assignment.assign(static_cast<std::size_t>(d), {});
    std::int64_t r = 0;
    for (auto n : out.cached_set) {
      for (std::int64_t k = 0; k < out.c[static_cast<std::size_t>(n)]; ++k, ++r) {
        out.cache_assignment[static_cast<std::size_t>(r % d)].push_back(n);
      }
    }
  }
  return out;
}

MatchingOutcome mlp_match(std::span<const std::int64_t> cluster_requests, const KsPlacement& placement,
                          Stream& stream) {
  const auto N = static_cast<std::int64_t>(cluster_requests.size());
  const auto d = static_cast<std::int64_t>(placement.cache_assignment.size());
  std::vector<std::vector<std::int64_t>> holders(static_cast<std::size_t>(N));
  for (std::int64_t k = 0; k < d; ++k) {
    for (auto n : placement.cache_assignment[static_cast<std::size_t>(k)]) {
      if (n < N) holders[static_cast<std::size_t>(n)].push_back(k);
    }
  }
  for (auto& h : holders) {
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
  }

  std::vector<std::int64_t> first_user(static_cast<std::size_t>(N) + 1, 0);
  for (std::int64_t n = 0; n < N; ++n) {
    first_user[static_cast<std::size_t>(n) + 1] = first_user[static_cast<std::size_t>(n)] +
                                                  cluster_requests[static_cast<std::size_t>(n)];
  }

  MatchingOutcome outcome;
  std::vector<char> busy(static_cast<std::size_t>(d), 0);
  std::vector<std::int64_t> free;
  for (std::int64_t n = N - 1; n >= 0; --n) {
    const auto& h = holders[static_cast<std::size_t>(n)];
    for (std::int64_t u = first_user[static_cast<std::size_t>(n)];
         u < first_user[static_cast<std::size_t>(n) + 1]; ++u) {
      free.clear();
      for (auto k : h) {
        if (!busy[static_cast<std::size_t>(k)]) free.push_back(k);
      }
      if (free.empty()) {
        outcome.unmatched_users.push_back(u);
        continue;
      }
      const auto k = free[static_cast<std::size_t>(stream.below(free.size()))];
      busy[static_cast<std::size_t>(k)] = 1;
      outcome.matched.emplace_back(u, k);
    }
  }
  return outcome;
}

PamSteepServeResult pam_steep_serve(const RequestProfile& profile, const KsPlacement& placement,
                                    std::uint64_t seed, std::uint64_t trial) {
  const std::int64_t N = profile.num_files();
  std::vector<char> cached(static_cast<std::size_t>(N), 0);
  for (auto n : placement.cached_set) {
    if (n < N) cached[static_cast<std::size_t>(n)] = 1;
  }
  std::vector<char> server(static_cast<std::size_t>(N), 0);
  PamSteepServeResult result;
  std::vector<std::int64_t> user_file;

  for (std::int64_t c = 0; c < profile.num_clusters(); ++c) {
    const auto row = profile.cluster(c);
    Stream stream(seed, {kMlpTag, trial, static_cast<std::uint64_t>(c)});
    const auto outcome = mlp_match(row, placement, stream);
    user_file.clear();
    for (std::int64_t n = 0; n < N; ++n) {
      user_file.insert(user_file.end(), static_cast<std::size_t>(row[static_cast<std::size_t>(n)]), n);
    }
    for (auto u : outcome.unmatched_users) {
      const auto n = user_file[static_cast<std::size_t>(u)];
      server[static_cast<std::size_t>(n)] = 1;
      ++(cached[static_cast<std::size_t>(n)] ? result.unmatched_cached : result.uncached_requests);
    }
  }
  result.server_files = std::count(server.begin(), server.end(), 1);
  const auto f = static_cast<double>(result.server_files);
  result.rate = {0.0, f, f};
  return result;
}

double expected_uncached_files(const ZipfCatalog& catalog, const KsPlacement& placement, std::int64_t users) {
  std::vector<char> cached(static_cast<std::size_t>(catalog.size()), 0);
  for (auto n : placement.cached_set) cached[static_cast<std::size_t>(n)] = 1;
  CompensatedSum total;
  for (std::int64_t n = 0; n < catalog.size(); ++n) {
    if (cached[static_cast<std::size_t>(n)]) continue;
    total += -std::expm1(static_cast<double>(users) * std::log1p(-catalog.p(n)));
  }
  return total.value();
}

RateEnvelope pam_steep_rate(const SystemConfig& config) {
  if (!config.steep()) throw DomainError("pam_steep_rate needs beta > 1");
  const double K = static_cast<double>(config.K);
  const double N = static_cast<double>(config.N);
  const double d = static_cast<double>(config.d);
  RateEnvelope env;
  if (config.M >= N * std::log(N) / d) {
    env.order_value = 0.0;
  } else {
    const double root = std::pow(K, 1.0 / config.beta);
    const double dm = d * config.M;
    env.order_value = dm > 0.0 ? std::min(K / std::pow(dm, config.beta - 1.0), root) : root;
  }
  const auto catalog = build_catalog(config.N, config.beta);
  env.expected_uncached = expected_uncached_files(catalog, ks_placement(config, catalog), config.K);
  return env;
}

void write_ks_placement_csv(std::ostream& out, const KsPlacement& placement) {
  out << "cache,file\n";
  for (std::size_t k = 0; k < placement.cache_assignment.size(); ++k) {
    for (auto n : placement.cache_assignment[k]) out << (k + 1) << ',' << (n + 1) << '\n';
  }
}

}  // namespace cachematch
