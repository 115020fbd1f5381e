#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cachematch {

class MissingCopyCount : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Users of one cluster on the left, its caches on the right. adjacency[u]
/// lists the caches (0-based) that store the file user u asked for.
struct ClusterBipartiteGraph {
  std::int64_t num_caches = 0;
  std::vector<std::vector<std::int64_t>> adjacency;

  std::int64_t num_users() const { return static_cast<std::int64_t>(adjacency.size()); }
  /// Throws std::invalid_argument if an adjacency entry is out of range.
  void check() const;
};

struct MatchingOutcome {
  /// (user, cache) pairs, sorted by user.
  std::vector<std::pair<std::int64_t, std::int64_t>> matched;
  /// Sorted ascending.
  std::vector<std::int64_t> unmatched_users;

  std::int64_t size() const { return static_cast<std::int64_t>(matched.size()); }
};

struct StoredFile {
  std::int64_t file = 0;
  double fraction = 1.0;
};

/// Total data a cache serves under the proportional fractional matching:
/// sum over stored files of fraction * u_n / d_n. The cache is feasible iff
/// the result is <= 1. Throws MissingCopyCount when a stored file has d_n = 0.
double fractional_load(std::span<const StoredFile> stored, std::span<const std::int64_t> requests,
                       std::span<const std::int64_t> copies);

inline bool load_feasible(double load) { return load <= 1.0; }

/// Maximum-cardinality matching (Hopcroft-Karp). Users and their adjacency
/// lists are scanned in index order, so the result is deterministic.
MatchingOutcome max_matching(const ClusterBipartiteGraph& graph);

/// Checks the MatchingOutcome invariants against a graph: every matched pair
/// is an edge, no cache or user repeats, matched and unmatched partition the
/// users.
bool is_valid_matching(const ClusterBipartiteGraph& graph, const MatchingOutcome& outcome);

}  // namespace cachematch
