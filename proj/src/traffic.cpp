#include "cachematch/traffic.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "cachematch/rng.hpp"

namespace cachematch {

namespace {
constexpr std::uint64_t kTrafficTag = 0x7472616666696331ULL;
}

RequestProfile::RequestProfile(std::int64_t num_files, std::int64_t num_clusters)
    : files_(num_files),
      clusters_(num_clusters),
      counts_(static_cast<std::size_t>(num_files * num_clusters), 0) {
  if (num_files < 0 || num_clusters < 0) throw std::invalid_argument("negative profile dimensions");
}

void RequestProfile::set(std::int64_t file, std::int64_t cluster, std::int64_t value) {
  if (value < 0) throw std::invalid_argument("request counts must be non-negative");
  if (file < 0 || file >= files_ || cluster < 0 || cluster >= clusters_) {
    throw std::out_of_range("profile index out of range");
  }
  counts_[index(file, cluster)] = value;
}

std::span<const std::int64_t> RequestProfile::cluster(std::int64_t c) const {
  return std::span<const std::int64_t>(counts_).subspan(static_cast<std::size_t>(c * files_),
                                                        static_cast<std::size_t>(files_));
}

std::int64_t RequestProfile::cluster_total(std::int64_t c) const {
  const auto row = cluster(c);
  return std::accumulate(row.begin(), row.end(), std::int64_t{0});
}

std::int64_t RequestProfile::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

TrafficModel::TrafficModel(const SystemConfig& config, const ZipfCatalog& catalog)
    : clusters_(config.clusters()) {
  if (catalog.size() != config.N) {
    throw std::invalid_argument("catalog size does not match config.N");
  }
  lambda_.resize(static_cast<std::size_t>(config.N));
  exp_neg_lambda_.resize(lambda_.size());
  const double scale = config.rho * static_cast<double>(config.d);
  for (std::size_t n = 0; n < lambda_.size(); ++n) {
    lambda_[n] = scale * catalog.p(static_cast<std::int64_t>(n));
    exp_neg_lambda_[n] = std::exp(-lambda_[n]);
  }
}

std::int64_t TrafficModel::draw(std::uint64_t seed, std::uint64_t trial, std::int64_t cluster,
                                std::int64_t file) const {
  Stream stream(seed, {kTrafficTag, trial, static_cast<std::uint64_t>(cluster),
                       static_cast<std::uint64_t>(file)});
  const auto n = static_cast<std::size_t>(file);
  if (lambda_[n] < 10.0) return sample_poisson_inversion(stream, lambda_[n], exp_neg_lambda_[n]);
  return sample_poisson(stream, lambda_[n]);
}

RequestProfile TrafficModel::sample(std::uint64_t seed, std::uint64_t trial) const {
  const auto files = num_files();
  RequestProfile profile(files, clusters_);
  for (std::int64_t c = 0; c < clusters_; ++c) {
    for (std::int64_t n = 0; n < files; ++n) {
      const auto u = draw(seed, trial, c, n);
      if (u != 0) profile.set(n, c, u);
    }
  }
  return profile;
}

RequestProfile sample_profile(const SystemConfig& config, const ZipfCatalog& catalog,
                              std::uint64_t seed, std::uint64_t trial) {
  return TrafficModel(config, catalog).sample(seed, trial);
}

std::int64_t distinct_files(const RequestProfile& profile, std::span<const std::int64_t> clusters) {
  if (clusters.empty()) throw std::invalid_argument("distinct_files needs a non-empty cluster set");
  for (auto c : clusters) {
    if (c < 0 || c >= profile.num_clusters()) throw std::out_of_range("cluster index out of range");
  }
  std::int64_t distinct = 0;
  for (std::int64_t n = 0; n < profile.num_files(); ++n) {
    for (auto c : clusters) {
      if (profile.count(n, c) > 0) {
        ++distinct;
        break;
      }
    }
  }
  return distinct;
}

std::int64_t distinct_files(const RequestProfile& profile) {
  std::vector<bool> seen(static_cast<std::size_t>(profile.num_files()), false);
  std::int64_t distinct = 0;
  for (std::int64_t c = 0; c < profile.num_clusters(); ++c) {
    const auto row = profile.cluster(c);
    for (std::size_t n = 0; n < row.size(); ++n) {
      if (row[n] > 0 && !seen[n]) {
        seen[n] = true;
        ++distinct;
      }
    }
  }
  return distinct;
}

void write_profile_csv(std::ostream& out, const RequestProfile& profile) {
  out << "cluster,file,count\n";
  for (std::int64_t c = 0; c < profile.num_clusters(); ++c) {
    const auto row = profile.cluster(c);
    for (std::size_t n = 0; n < row.size(); ++n) {
      if (row[n] > 0) out << (c + 1) << ',' << (n + 1) << ',' << row[n] << '\n';
    }
  }
}

}  // namespace cachematch
