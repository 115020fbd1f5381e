#include <cmath>

#include "cachematch/config.hpp"
#include "cachematch/popularity.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cachematch;

TEST_CASE("zipf probabilities are normalized and non-increasing") {
  for (double beta : {0.0, 0.3, 0.9, 1.5, 3.0}) {
    const ZipfCatalog cat(500, beta);
    double sum = 0.0;
    for (std::int64_t n = 0; n < cat.size(); ++n) {
      sum += cat.p(n);
      if (n > 0) CHECK(cat.p(n) <= cat.p(n - 1));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("beta = 0 is uniform") {
  const ZipfCatalog cat(40, 0.0);
  for (std::int64_t n = 0; n < 40; ++n) CHECK(cat.p(n) == doctest::Approx(1.0 / 40.0));
}

TEST_CASE("p_n = n^{-beta}/A_N against the long double oracle") {
  const ZipfCatalog cat(300, 0.7);
  const long double A = oracle::zipf_A(300, 0.7L);
  CHECK(cat.normalizer() == doctest::Approx(static_cast<double>(A)).epsilon(1e-13));
  for (std::int64_t n : {0, 1, 17, 299}) {
    const auto want = static_cast<double>(std::pow(static_cast<long double>(n + 1), -0.7L) / A);
    CHECK(cat.p(n) == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("invalid catalogs") {
  CHECK_THROWS_AS(ZipfCatalog(10, 1.0), DomainError);
  CHECK_THROWS_AS(ZipfCatalog(10, -0.5), DomainError);
  CHECK_THROWS_AS(ZipfCatalog(0, 0.5), DomainError);
  CHECK_THROWS_AS(partial_sum_A(0, 0.5), DomainError);
}

TEST_CASE("partial-sum sandwich m^{1-beta} - 1 <= (1-beta) A_m <= m^{1-beta}") {
  for (int b = 0; b < 10; ++b) {
    const double beta = b / 10.0;
    const auto A = partial_sums_A(2000, beta);
    for (std::int64_t m = 1; m <= 2000; ++m) {
      const double x = (1.0 - beta) * A[static_cast<std::size_t>(m - 1)];
      const double top = std::pow(static_cast<double>(m), 1.0 - beta);
      REQUIRE(top - 1.0 <= x);
      REQUIRE(x <= top);
    }
  }
}

TEST_CASE("prefix sums agree bit for bit with the single-value form") {
  const auto A = partial_sums_A(777, 0.45);
  for (std::int64_t m : {1, 2, 100, 777}) CHECK(A[static_cast<std::size_t>(m - 1)] == partial_sum_A(m, 0.45));
  CHECK(partial_sum_A(100, 0.0) == 100.0);
}
