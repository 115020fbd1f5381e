#include "cachematch/scheme_pam_shallow.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "cachematch/mathkit.hpp"
#include "cachematch/matching.hpp"

namespace cachematch {

ProportionalPlacement proportional_placement(const SystemConfig& config, const ZipfCatalog& catalog) {
  if (!config.shallow()) throw DomainError("proportional placement needs beta in [0, 1)");
  const std::int64_t N = config.N;
  const std::int64_t d = config.d;
  const double threshold = static_cast<double>(N) / ((1.0 - config.beta) * static_cast<double>(d));
  if (config.M < threshold * (1.0 - 1e-12)) {
    throw InsufficientMemory("M = " + std::to_string(config.M) + " is below N/((1-beta)d) = " +
                             std::to_string(threshold));
  }
  const auto per_cache = static_cast<std::int64_t>(std::floor(config.M));
  const std::int64_t slots = per_cache * d;
  if (slots < N) {
    throw InsufficientMemory("d floor(M) = " + std::to_string(slots) + " slots cannot hold " +
                             std::to_string(N) + " files");
  }

  ProportionalPlacement plan;
  plan.cluster_size = d;
  plan.copies.resize(static_cast<std::size_t>(N));
  std::int64_t used = 0;
  for (std::int64_t n = 0; n < N; ++n) {
    const double share = catalog.p(n) * static_cast<double>(d) * config.M;
    const auto copies = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(share)), 1, d);
    plan.copies[static_cast<std::size_t>(n)] = copies;
    used += copies;
  }
  // A fractional M can leave floor(p_n d M) summing past d floor(M); trim the
  // most popular files first, never below one copy.
  for (std::int64_t n = 0; used > slots && n < N; ++n) {
    auto& c = plan.copies[static_cast<std::size_t>(n)];
    const std::int64_t cut = std::min(c - 1, used - slots);
    c -= cut;
    used -= cut;
  }
  // Leftover slots go to the most popular files, one copy per pass.
  bool grew = true;
  while (used < slots && grew) {
    grew = false;
    for (std::int64_t n = 0; n < N && used < slots; ++n) {
      auto& c = plan.copies[static_cast<std::size_t>(n)];
      if (c < d) {
        ++c;
        ++used;
        grew = true;
      }
    }
  }

  plan.cache_contents.assign(static_cast<std::size_t>(d), {});
  std::int64_t r = 0;
  for (std::int64_t n = 0; n < N; ++n) {
    for (std::int64_t k = 0; k < plan.copies[static_cast<std::size_t>(n)]; ++k, ++r) {
      plan.cache_contents[static_cast<std::size_t>(r % d)].push_back(n);
    }
  }
  return plan;
}

PamServeResult serve_from_server(const RequestProfile& profile) {
  PamServeResult result;
  result.server_files = distinct_files(profile);
  const auto f = static_cast<double>(result.server_files);
  result.rate = {0.0, f, f};
  return result;
}

PamServeResult pam_shallow_serve(const RequestProfile& profile, const ProportionalPlacement& placement,
                                 const SystemConfig& config, EvictionRule rule) {
  const std::int64_t N = profile.num_files();
  const std::int64_t d = placement.cluster_size;
  if (static_cast<std::int64_t>(placement.copies.size()) != N ||
      static_cast<std::int64_t>(placement.cache_contents.size()) != d || d != config.d) {
    throw std::invalid_argument("placement does not match the profile/config");
  }

  // caches_of[n]: caches of a cluster storing file n.
  std::vector<std::vector<std::int64_t>> caches_of(static_cast<std::size_t>(N));
  for (std::int64_t k = 0; k < d; ++k) {
    for (auto n : placement.cache_contents[static_cast<std::size_t>(k)]) {
      caches_of[static_cast<std::size_t>(n)].push_back(k);
    }
  }

  PamServeResult result;
  std::vector<char> server_file(static_cast<std::size_t>(N), 0);
  std::vector<char> evicted(static_cast<std::size_t>(N), 0);
  std::vector<StoredFile> stored;
  ClusterBipartiteGraph graph;
  std::vector<std::int64_t> user_file;

  for (std::int64_t c = 0; c < profile.num_clusters(); ++c) {
    const auto row = profile.cluster(c);
    std::fill(evicted.begin(), evicted.end(), 0);

    if (rule == EvictionRule::AllRequestsOfFile) {
      for (std::int64_t k = 0; k < d; ++k) {
        const auto& contents = placement.cache_contents[static_cast<std::size_t>(k)];
        stored.clear();
        for (auto n : contents) stored.push_back({n, 1.0});
        if (!load_feasible(fractional_load(stored, row, placement.copies))) {
          ++result.violating_caches;
          for (auto n : contents) evicted[static_cast<std::size_t>(n)] = 1;
        }
      }
    } else {
      for (std::int64_t k = 0; k < d; ++k) {
        const auto& contents = placement.cache_contents[static_cast<std::size_t>(k)];
        stored.clear();
        for (auto n : contents) stored.push_back({n, 1.0});
        if (!load_feasible(fractional_load(stored, row, placement.copies))) ++result.violating_caches;
      }
    }

    graph.num_caches = d;
    graph.adjacency.clear();
    user_file.clear();
    for (std::int64_t n = 0; n < N; ++n) {
      const auto u = row[static_cast<std::size_t>(n)];
      if (u == 0) continue;
      if (evicted[static_cast<std::size_t>(n)]) {
        result.evicted_requests += u;
        server_file[static_cast<std::size_t>(n)] = 1;
        continue;
      }
      for (std::int64_t v = 0; v < u; ++v) {
        graph.adjacency.push_back(caches_of[static_cast<std::size_t>(n)]);
        user_file.push_back(n);
      }
    }
    if (graph.adjacency.empty()) continue;
    const auto outcome = max_matching(graph);
    result.unmatched_after_matching += static_cast<std::int64_t>(outcome.unmatched_users.size());
    for (auto user : outcome.unmatched_users) {
      server_file[static_cast<std::size_t>(user_file[static_cast<std::size_t>(user)])] = 1;
    }
  }

  result.server_files = std::count(server_file.begin(), server_file.end(), 1);
  const auto f = static_cast<double>(result.server_files);
  result.rate = {0.0, f, f};
  return result;
}

double pam_exponent_z(double rho, double beta) {
  return (1.0 - beta) * rho * cramer_h((1.0 + rho) / (2.0 * rho));
}

PamShallowRate pam_shallow_rate(const SystemConfig& config) {
  if (!config.shallow()) throw DomainError("pam_shallow_rate needs beta in [0, 1)");
  const double K = static_cast<double>(config.K);
  const double N = static_cast<double>(config.N);
  const double d = static_cast<double>(config.d);
  const double cap = config.rho * K;
  PamShallowRate out;
  out.z = pam_exponent_z(config.rho, config.beta);
  if (config.M < N / ((1.0 - config.beta) * d) * (1.0 - 1e-12)) {
    out.rate = cap;
    out.tighter = cap;
    out.below_threshold = true;
    return out;
  }
  const double decay = std::exp(-out.z * d * config.M / N);
  const double loose = K * config.M * decay;
  const double two_term = K * d * decay + (N * K / d) * std::exp(-out.z * d);
  out.rate = std::min(cap, loose);
  out.tighter = std::min(cap, std::min(loose, two_term));
  return out;
}

void write_placement_csv(std::ostream& out, const std::vector<std::vector<std::int64_t>>& cache_contents) {
  out << "cache,file\n";
  for (std::size_t k = 0; k < cache_contents.size(); ++k) {
    for (auto n : cache_contents[k]) out << (k + 1) << ',' << (n + 1) << '\n';
  }
}

}  // namespace cachematch
