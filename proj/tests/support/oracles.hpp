#pragma once

// Reference implementations used only by tests. They favor the most literal
// algorithm over speed and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "cachematch/rng.hpp"

namespace oracle {

using i64 = std::int64_t;

// Poisson pmf by the product lambda^k e^{-lambda}/k!, in long double.
inline long double poisson_pmf(long double lambda, i64 k) {
  long double p = std::exp(-lambda);
  for (i64 i = 1; i <= k; ++i) p *= lambda / static_cast<long double>(i);
  return p;
}

// Sums up to a fixed far cutoff.
inline i64 cutoff(long double lambda, i64 m) {
  return std::max<i64>(m, static_cast<i64>(lambda)) + 400;
}

inline long double poisson_tail(long double lambda, i64 m) {
  long double s = 0.0L;
  for (i64 k = m; k <= cutoff(lambda, m); ++k) s += poisson_pmf(lambda, k);
  return s;
}

inline long double expected_excess(long double lambda, i64 m) {
  long double s = 0.0L;
  for (i64 k = m + 1; k <= cutoff(lambda, m); ++k) s += static_cast<long double>(k - m) * poisson_pmf(lambda, k);
  return s;
}

inline long double conditional_mean(long double lambda, i64 m) {
  long double num = 0.0L;
  long double den = 0.0L;
  for (i64 k = m; k <= cutoff(lambda, m); ++k) {
    const long double p = poisson_pmf(lambda, k);
    num += static_cast<long double>(k) * p;
    den += p;
  }
  return num / den;
}

// Zipf partial sum in long double, summed from the smallest term.
inline long double zipf_A(i64 m, long double beta) {
  long double s = 0.0L;
  for (i64 n = m; n >= 1; --n) s += std::pow(static_cast<long double>(n), -beta);
  return s;
}

// Binomial coefficient as long double via lgamma.
inline long double choose(i64 n, i64 k) {
  if (k < 0 || k > n) return 0.0L;
  return std::exp(std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
                  std::lgamma(static_cast<long double>(n - k) + 1));
}

// Uncoded-placement delivery with integer tau: [C(K, tau+1) - C(K-Ne, tau+1)]/C(K, tau).
inline long double delivery_rate(i64 K, i64 tau, i64 Ne) {
  if (Ne <= 0 || tau >= K) return 0.0L;
  return (choose(K, tau + 1) - choose(K - Ne, tau + 1)) / choose(K, tau);
}

// Kuhn's augmenting-path maximum matching.
inline i64 kuhn_matching(i64 caches, const std::vector<std::vector<i64>>& adj) {
  std::vector<i64> owner(static_cast<std::size_t>(caches), -1);
  i64 size = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<char> seen(static_cast<std::size_t>(caches), 0);
    std::function<bool(std::size_t)> augment = [&](std::size_t v) -> bool {
      for (i64 k : adj[v]) {
        if (seen[static_cast<std::size_t>(k)]) continue;
        seen[static_cast<std::size_t>(k)] = 1;
        const i64 o = owner[static_cast<std::size_t>(k)];
        if (o < 0 || augment(static_cast<std::size_t>(o))) {
          owner[static_cast<std::size_t>(k)] = static_cast<i64>(v);
          return true;
        }
      }
      return false;
    };
    if (augment(u)) ++size;
  }
  return size;
}

// Exhaustive maximum matching: dynamic program over (user, used-cache mask).
// Exponential in the number of caches; only for small instances.
inline i64 exhaustive_matching(i64 caches, const std::vector<std::vector<i64>>& adj) {
  const std::size_t states = std::size_t{1} << caches;
  std::vector<i64> best(states, std::numeric_limits<i64>::min());
  best[0] = 0;
  for (const auto& row : adj) {
    std::vector<i64> next = best;  // user left unmatched
    for (std::size_t mask = 0; mask < states; ++mask) {
      if (best[mask] < 0) continue;
      for (i64 k : row) {
        const std::size_t bit = std::size_t{1} << k;
        if (mask & bit) continue;
        next[mask | bit] = std::max(next[mask | bit], best[mask] + 1);
      }
    }
    best.swap(next);
  }
  return *std::max_element(best.begin(), best.end());
}

// Fractional knapsack optimum: some subset taken whole plus at most one item
// filling the remaining room.
inline double knapsack_optimum(const std::vector<double>& v, const std::vector<i64>& w, double capacity) {
  const std::size_t n = v.size();
  double best = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double wsum = 0.0;
    double vsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        wsum += static_cast<double>(w[i]);
        vsum += v[i];
      }
    }
    if (wsum > capacity) continue;
    double extra = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1) continue;
      extra = std::max(extra, v[j] * std::min(1.0, (capacity - wsum) / static_cast<double>(w[j])));
    }
    best = std::max(best, vsum + extra);
  }
  return best;
}

struct MlpStep {
  i64 user;
  i64 cache;  // -1 when unmatched
};

// Match Least Popular executed literally: K_n as sets, files visited N..1, matched
// caches erased from every K_n'.
inline std::vector<MlpStep> reference_mlp(const std::vector<i64>& requests,
                                          const std::vector<std::vector<i64>>& cache_files,
                                          cachematch::Stream& stream) {
  const auto N = static_cast<i64>(requests.size());
  std::vector<std::set<i64>> K(static_cast<std::size_t>(N));
  for (std::size_t k = 0; k < cache_files.size(); ++k) {
    for (i64 n : cache_files[k]) K[static_cast<std::size_t>(n)].insert(static_cast<i64>(k));
  }
  std::vector<i64> first(static_cast<std::size_t>(N), 0);
  for (i64 n = 1; n < N; ++n) first[static_cast<std::size_t>(n)] = first[static_cast<std::size_t>(n - 1)] + requests[static_cast<std::size_t>(n - 1)];
  std::vector<MlpStep> steps;
  for (i64 n = N - 1; n >= 0; --n) {
    for (i64 j = 0; j < requests[static_cast<std::size_t>(n)]; ++j) {
      const i64 user = first[static_cast<std::size_t>(n)] + j;
      auto& avail = K[static_cast<std::size_t>(n)];
      if (avail.empty()) {
        steps.push_back({user, -1});
        continue;
      }
      auto it = avail.begin();
      std::advance(it, static_cast<long>(stream.below(avail.size())));
      const i64 k = *it;
      for (auto& s : K) s.erase(k);
      steps.push_back({user, k});
    }
  }
  return steps;
}

}  // namespace oracle
