#include "cachematch/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace cachematch {

void ClusterBipartiteGraph::check() const {
  if (num_caches < 0) throw std::invalid_argument("negative cache count");
  for (const auto& adj : adjacency) {
    for (auto k : adj) {
      if (k < 0 || k >= num_caches) {
        throw std::invalid_argument("adjacency references cache " + std::to_string(k) +
                                    " outside [0, " + std::to_string(num_caches) + ")");
      }
    }
  }
}

double fractional_load(std::span<const StoredFile> stored, std::span<const std::int64_t> requests,
                       std::span<const std::int64_t> copies) {
  double load = 0.0;
  for (const auto& s : stored) {
    const auto n = static_cast<std::size_t>(s.file);
    if (n >= copies.size() || copies[n] <= 0) {
      throw MissingCopyCount("stored file " + std::to_string(s.file) + " has no copy count");
    }
    const std::int64_t u = n < requests.size() ? requests[n] : 0;
    load += s.fraction * static_cast<double>(u) / static_cast<double>(copies[n]);
  }
  return load;
}

namespace {

// Hopcroft-Karp over an adjacency list; pair arrays use -1 for "free".
class HopcroftKarp {
 public:
  explicit HopcroftKarp(const ClusterBipartiteGraph& g)
      : g_(g),
        users_(static_cast<std::size_t>(g.num_users())),
        pair_user_(users_, -1),
        pair_cache_(static_cast<std::size_t>(g.num_caches), -1),
        dist_(users_, 0),
        next_edge_(users_, 0) {}

  void run() {
    while (bfs()) {
      std::fill(next_edge_.begin(), next_edge_.end(), 0);
      for (std::size_t u = 0; u < users_; ++u) {
        if (pair_user_[u] < 0) dfs(static_cast<std::int64_t>(u));
      }
    }
  }

  const std::vector<std::int64_t>& pair_user() const { return pair_user_; }

 private:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

  bool bfs() {
    std::queue<std::int64_t> q;
    for (std::size_t u = 0; u < users_; ++u) {
      if (pair_user_[u] < 0) {
        dist_[u] = 0;
        q.push(static_cast<std::int64_t>(u));
      } else {
        dist_[u] = kInf;
      }
    }
    bool found_free = false;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto k : g_.adjacency[static_cast<std::size_t>(u)]) {
        const auto w = pair_cache_[static_cast<std::size_t>(k)];
        if (w < 0) {
          found_free = true;
        } else if (dist_[static_cast<std::size_t>(w)] == kInf) {
          dist_[static_cast<std::size_t>(w)] = dist_[static_cast<std::size_t>(u)] + 1;
          q.push(w);
        }
      }
    }
    return found_free;
  }

  bool dfs(std::int64_t u) {
    const auto ui = static_cast<std::size_t>(u);
    const auto& adj = g_.adjacency[ui];
    for (auto& e = next_edge_[ui]; e < adj.size(); ++e) {
      const auto k = adj[e];
      const auto w = pair_cache_[static_cast<std::size_t>(k)];
      if (w < 0 || (dist_[static_cast<std::size_t>(w)] == dist_[ui] + 1 && dfs(w))) {
        pair_user_[ui] = k;
        pair_cache_[static_cast<std::size_t>(k)] = u;
        ++e;
        return true;
      }
    }
    dist_[ui] = kInf;
    return false;
  }

  const ClusterBipartiteGraph& g_;
  std::size_t users_;
  std::vector<std::int64_t> pair_user_;
  std::vector<std::int64_t> pair_cache_;
  std::vector<std::int64_t> dist_;
  std::vector<std::size_t> next_edge_;
};

}  // namespace

MatchingOutcome max_matching(const ClusterBipartiteGraph& graph) {
  graph.check();
  HopcroftKarp hk(graph);
  hk.run();
  MatchingOutcome out;
  const auto& pairs = hk.pair_user();
  for (std::size_t u = 0; u < pairs.size(); ++u) {
    if (pairs[u] >= 0) {
      out.matched.emplace_back(static_cast<std::int64_t>(u), pairs[u]);
    } else {
      out.unmatched_users.push_back(static_cast<std::int64_t>(u));
    }
  }
  return out;
}

bool is_valid_matching(const ClusterBipartiteGraph& graph, const MatchingOutcome& outcome) {
  const auto users = static_cast<std::size_t>(graph.num_users());
  std::vector<int> user_seen(users, 0);
  std::vector<int> cache_seen(static_cast<std::size_t>(graph.num_caches), 0);
  for (const auto& [u, k] : outcome.matched) {
    if (u < 0 || static_cast<std::size_t>(u) >= users || k < 0 || k >= graph.num_caches) return false;
    const auto& adj = graph.adjacency[static_cast<std::size_t>(u)];
    if (std::find(adj.begin(), adj.end(), k) == adj.end()) return false;
    if (user_seen[static_cast<std::size_t>(u)]++ || cache_seen[static_cast<std::size_t>(k)]++) return false;
  }
  for (auto u : outcome.unmatched_users) {
    if (u < 0 || static_cast<std::size_t>(u) >= users) return false;
    if (user_seen[static_cast<std::size_t>(u)]++) return false;
  }
  return std::all_of(user_seen.begin(), user_seen.end(), [](int s) { return s == 1; });
}

}  // namespace cachematch
