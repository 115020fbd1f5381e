#include <cmath>

#include "cachematch/bounds.hpp"
#include "cachematch/scheme_hcm.hpp"
#include "cachematch/scheme_pam_shallow.hpp"
#include "cachematch/scheme_pcd.hpp"
#include "doctest.h"

using namespace cachematch;

TEST_CASE("constant 1 - e^{-1}/2") { CHECK(kDistinctFraction == doctest::Approx(1.0 - std::exp(-1.0) / 2.0).epsilon(1e-16)); }

TEST_CASE("cut-set bound arithmetic") {
  const SystemConfig c{100, 10, 100, 0.0, 0.4, 0.0, 0.5};
  CHECK(cutset_bound_uniform(c, 1) == doctest::Approx(0.81606).epsilon(1e-5));
  CHECK(cutset_bound_uniform(c, 2) == doctest::Approx(2.0 * cutset_bound_uniform(c, 1)));
  SystemConfig big = c;
  big.M = 10.0;  // s d M/N = 1 > 1 - e^{-1}/2
  CHECK(cutset_bound_uniform(big, 1) == 0.0);
  CHECK_THROWS_AS(cutset_bound_uniform(c, 0), DomainError);
  CHECK_THROWS_AS(cutset_bound_uniform(c, 11), DomainError);
  CHECK_THROWS_AS(cutset_bound_uniform(SystemConfig{5, 5, 9, 0.0, 0.4, 0.0, 0.5}, 1), DomainError);
}

TEST_CASE("small-memory converse example") {
  const SystemConfig c{100, 10, 1000, 10.0, 0.25, 0.5, 0.5};
  const auto r = lower_bound_report(c);
  const double want = 0.5 * 0.25 * kDistinctFraction * kDistinctFraction / 96.0 * 25.0;
  CHECK(r.small_memory_form == doctest::Approx(want));
  CHECK(want == doctest::Approx(0.02174).epsilon(1e-3));
  CHECK(r.best >= r.closed_form);
  for (double v : r.per_s) CHECK(r.best >= v);
  CHECK(r.best >= 0.0);
  CHECK(r.per_s.size() == 10);
}

TEST_CASE("closed form") {
  const SystemConfig c{100, 10, 1000, 20.0, 0.25, 0.0, 0.5};
  const double want = 0.25 * kDistinctFraction / 48.0 * std::min(kDistinctFraction * 50.0 - 10.0, 100.0);
  CHECK(lower_bound_report(c).closed_form == doctest::Approx(want));
  SystemConfig huge = c;
  huge.M = 1e6;
  CHECK(lower_bound_report(huge).closed_form == 0.0);
  CHECK(shallow_lower_bound(huge) == 0.0);
}

TEST_CASE("gap constant") {
  const SystemConfig c{100, 10, 1000, 1.0, 0.25, 0.0, 0.5};
  CHECK(gap_constant(c) == doctest::Approx(576.62).epsilon(1e-4));
  SystemConfig b = c;
  b.beta = 0.5;
  CHECK(gap_constant(b) == doctest::Approx(2.0 * gap_constant(c)));
}

TEST_CASE("gap and consistency on a grid") {
  for (double beta : {0.0, 0.3, 0.6, 0.9}) {
    for (std::int64_t d : {10, 20, 50}) {
      for (double M : {0.1, 0.5, 1.0, 2.0, 5.0, 8.0, 15.0, 40.0}) {
        const SystemConfig c{200, d, 400, M, 0.3, beta, 0.2};
        const double lb = shallow_lower_bound(c);
        CHECK(lb <= pcd_rate_shallow(c).total);
        CHECK(lb <= pam_shallow_rate(c).rate);
        CHECK(lb <= hcm_rate(c, c.t0).rate);
        if (in_gap_regime(c)) CHECK(optimality_gap(c) <= gap_constant(c) * (1.0 + 1e-12));
      }
    }
  }
  CHECK_THROWS_AS(optimality_gap(SystemConfig{200, 10, 400, 100.0, 0.3, 0.0, 0.2}), DomainError);
  CHECK_THROWS_AS(shallow_lower_bound(SystemConfig{200, 10, 400, 1.0, 0.3, 1.5, 0.2}), DomainError);
}
