#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cachematch/config.hpp"
#include "cachematch/popularity.hpp"

namespace cachematch {

/// Request counts u_n(c) for one problem instance, stored cluster-major so a
/// cluster's per-file counts form one contiguous span. Indices are 0-based.
class RequestProfile {
 public:
  RequestProfile() = default;
  RequestProfile(std::int64_t num_files, std::int64_t num_clusters);

  std::int64_t num_files() const { return files_; }
  std::int64_t num_clusters() const { return clusters_; }

  std::int64_t count(std::int64_t file, std::int64_t cluster) const {
    return counts_[index(file, cluster)];
  }
  void set(std::int64_t file, std::int64_t cluster, std::int64_t value);

  std::span<const std::int64_t> cluster(std::int64_t c) const;
  std::int64_t cluster_total(std::int64_t c) const;
  std::int64_t total() const;

  bool operator==(const RequestProfile&) const = default;

 private:
  std::size_t index(std::int64_t file, std::int64_t cluster) const {
    return static_cast<std::size_t>(cluster * files_ + file);
  }

  std::int64_t files_ = 0;
  std::int64_t clusters_ = 0;
  std::vector<std::int64_t> counts_;
};

/// Per-file Poisson intensities rho * d * p_n for a config/catalog pair.
class TrafficModel {
 public:
  TrafficModel(const SystemConfig& config, const ZipfCatalog& catalog);

  std::int64_t num_files() const { return static_cast<std::int64_t>(lambda_.size()); }
  std::int64_t num_clusters() const { return clusters_; }
  double lambda(std::int64_t file) const { return lambda_[static_cast<std::size_t>(file)]; }

  /// Draws u_n(c) from the stream keyed by (seed, trial, c, n).
  std::int64_t draw(std::uint64_t seed, std::uint64_t trial, std::int64_t cluster,
                    std::int64_t file) const;

  RequestProfile sample(std::uint64_t seed, std::uint64_t trial = 0) const;

 private:
  std::int64_t clusters_;
  std::vector<double> lambda_;
  std::vector<double> exp_neg_lambda_;
};

/// Independent Poisson(rho d p_n) counts for every (file, cluster); identical
/// for a fixed (seed, trial) regardless of evaluation order.
RequestProfile sample_profile(const SystemConfig& config, const ZipfCatalog& catalog,
                              std::uint64_t seed, std::uint64_t trial = 0);

/// |{n : sum_{c in subset} u_n(c) > 0}|. Throws std::invalid_argument for an
/// empty subset or out-of-range cluster.
std::int64_t distinct_files(const RequestProfile& profile, std::span<const std::int64_t> clusters);

/// Distinct requested files over the whole system.
std::int64_t distinct_files(const RequestProfile& profile);

/// Writes nonzero entries as `cluster,file,count` rows (1-based indices).
void write_profile_csv(std::ostream& out, const RequestProfile& profile);

}  // namespace cachematch
