#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cachematch {

/// Zipf popularity over files 1..N: p_n = n^{-beta} / A_N.
///
/// Files are stored 0-based; file(i) is the (i+1)-th most popular file.
/// The normalizer is an exact compensated sum, not an integral approximation.
class ZipfCatalog {
 public:
  ZipfCatalog(std::int64_t num_files, double beta);

  std::int64_t size() const { return static_cast<std::int64_t>(p_.size()); }
  double beta() const { return beta_; }
  double normalizer() const { return normalizer_; }
  double p(std::int64_t index) const { return p_[static_cast<std::size_t>(index)]; }
  std::span<const double> probabilities() const { return p_; }

 private:
  double beta_;
  double normalizer_;
  std::vector<double> p_;
};

/// Rejects beta == 1, beta < 0 and N < 1 with DomainError.
ZipfCatalog build_catalog(std::int64_t num_files, double beta);

/// A_m = sum_{n=1}^m n^{-beta}, by compensated summation. Defined for any
/// beta >= 0; the sandwich m^{1-beta} - 1 <= (1-beta) A_m <= m^{1-beta}
/// holds for beta in [0, 1).
double partial_sum_A(std::int64_t m, double beta);

/// All prefix sums A_1..A_{m_max}; entry i is bit-identical to partial_sum_A(i + 1, beta).
std::vector<double> partial_sums_A(std::int64_t m_max, double beta);

}  // namespace cachematch
