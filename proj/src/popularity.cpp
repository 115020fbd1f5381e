#include "cachematch/popularity.hpp"

#include <cmath>
#include <string>

#include "cachematch/config.hpp"
#include "cachematch/mathkit.hpp"

namespace cachematch {

namespace {

double term(std::int64_t n, double beta) {
  return beta == 0.0 ? 1.0 : std::pow(static_cast<double>(n), -beta);
}

}  // namespace

ZipfCatalog::ZipfCatalog(std::int64_t num_files, double beta) : beta_(beta), normalizer_(0.0) {
  if (num_files < 1) throw DomainError("zipf catalog needs at least one file");
  if (!(beta >= 0.0) || beta == 1.0) {
    throw DomainError("zipf exponent must be >= 0 and != 1, got " + std::to_string(beta));
  }
  p_.resize(static_cast<std::size_t>(num_files));
  CompensatedSum acc;
  for (std::int64_t n = 1; n <= num_files; ++n) {
    const double w = term(n, beta);
    p_[static_cast<std::size_t>(n - 1)] = w;
    acc.add(w);
  }
  normalizer_ = acc.value();
  for (double& w : p_) w /= normalizer_;
}

ZipfCatalog build_catalog(std::int64_t num_files, double beta) { return ZipfCatalog(num_files, beta); }

double partial_sum_A(std::int64_t m, double beta) {
  if (m < 1) throw DomainError("partial_sum_A needs m >= 1");
  CompensatedSum acc;
  for (std::int64_t n = 1; n <= m; ++n) acc.add(term(n, beta));
  return acc.value();
}

std::vector<double> partial_sums_A(std::int64_t m_max, double beta) {
  if (m_max < 1) throw DomainError("partial_sums_A needs m_max >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m_max));
  CompensatedSum acc;
  for (std::int64_t n = 1; n <= m_max; ++n) {
    acc.add(term(n, beta));
    out.push_back(acc.value());
  }
  return out;
}

}  // namespace cachematch
