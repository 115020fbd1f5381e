#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "cachematch/mathkit.hpp"
#include "cachematch/popularity.hpp"
#include "cachematch/scheme_pam_shallow.hpp"
#include "doctest.h"

using namespace cachematch;

namespace {
SystemConfig cfg(double M, double beta = 0.0) { return SystemConfig{200, 100, 200, M, 0.25, beta, 0.5}; }
}  // namespace

TEST_CASE("placement fills exactly d floor(M) slots with 1..d copies") {
  for (double beta : {0.0, 0.5, 0.8}) {
    for (double M : {10.0, 10.5, 37.0, 150.0}) {
      const auto c = cfg(M, beta);
      const auto cat = build_catalog(c.N, c.beta);
      const auto plan = proportional_placement(c, cat);
      const auto total = std::accumulate(plan.copies.begin(), plan.copies.end(), std::int64_t{0});
      CHECK(total == 100 * static_cast<std::int64_t>(std::floor(M)));
      for (auto k : plan.copies) {
        CHECK(k >= 1);
        CHECK(k <= 100);
      }
      for (const auto& files : plan.cache_contents) {
        CHECK(files.size() <= static_cast<std::size_t>(std::floor(M)));
        CHECK(std::set<std::int64_t>(files.begin(), files.end()).size() == files.size());
      }
      for (std::size_t n = 1; n < plan.copies.size(); ++n) CHECK(plan.copies[n] <= plan.copies[n - 1] + 1);
    }
  }
}

TEST_CASE("placement needs M >= N/((1-beta) d)") {
  const auto cat = build_catalog(200, 0.5);
  CHECK_THROWS_AS(proportional_placement(cfg(3.9, 0.5), cat), InsufficientMemory);
  CHECK_NOTHROW(proportional_placement(cfg(4.0, 0.5), cat));
  CHECK_THROWS_AS(proportional_placement(SystemConfig{200, 100, 200, 5.0, 0.25, 1.5, 0.5}, cat), DomainError);
}

TEST_CASE("analytic rate and exponent") {
  const double z = 0.25 * cramer_h(1.25 / 0.5);
  CHECK(pam_exponent_z(0.25, 0.0) == doctest::Approx(z));
  CHECK(pam_exponent_z(0.25, 0.5) == doctest::Approx(0.5 * z));

  const auto below = pam_shallow_rate(cfg(1.0));
  CHECK(below.below_threshold);
  CHECK(below.rate == 50.0);

  const auto c = cfg(80.0);
  const auto r = pam_shallow_rate(c);
  const double loose = 200.0 * 80.0 * std::exp(-z * 100.0 * 80.0 / 200.0);
  CHECK(r.rate == doctest::Approx(std::min(50.0, loose)));
  const double two = 200.0 * 100.0 * std::exp(-z * 40.0) + 200.0 * 200.0 / 100.0 * std::exp(-z * 100.0);
  CHECK(r.tighter == doctest::Approx(std::min({50.0, loose, two})));
}

TEST_CASE("all-feasible trials leave nobody unmatched") {
  for (double M : {2.0, 5.0, 20.0}) {
    const auto c = cfg(M);
    const auto cat = build_catalog(c.N, c.beta);
    const auto plan = proportional_placement(c, cat);
    for (std::uint64_t t = 0; t < 200; ++t) {
      const auto p = sample_profile(c, cat, 4, t);
      const auto r = pam_shallow_serve(p, plan, c);
      if (r.violating_caches == 0) {
        CHECK(r.evicted_requests == 0);
        CHECK(r.unmatched_after_matching == 0);
        CHECK(r.server_files == 0);
      }
      CHECK(r.rate.total <= static_cast<double>(distinct_files(p)));
    }
  }
}

TEST_CASE("eviction rules") {
  // One cache, two files, one copy each; three requests for file 0.
  const SystemConfig c{2, 2, 2, 1.0, 0.25, 0.0, 0.5};
  ProportionalPlacement plan{2, {1, 1}, {{0}, {1}}};
  RequestProfile p(2, 1);
  p.set(0, 0, 3);
  p.set(1, 0, 1);
  const auto literal = pam_shallow_serve(p, plan, c, EvictionRule::AllRequestsOfFile);
  CHECK(literal.violating_caches == 1);
  CHECK(literal.evicted_requests == 3);
  CHECK(literal.server_files == 1);
  const auto overflow = pam_shallow_serve(p, plan, c, EvictionRule::OverflowOnly);
  CHECK(overflow.evicted_requests == 0);
  CHECK(overflow.unmatched_after_matching == 2);
  CHECK(overflow.server_files == 1);
  CHECK(serve_from_server(p).server_files == 2);
}

TEST_CASE("placement CSV") {
  std::ostringstream os;
  write_placement_csv(os, {{0, 2}, {1}});
  CHECK(os.str() == "cache,file\n1,1\n1,3\n2,2\n");
}
