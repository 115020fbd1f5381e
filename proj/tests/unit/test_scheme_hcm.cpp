#include <cmath>
#include <sstream>

#include "cachematch/config.hpp"
#include "cachematch/popularity.hpp"
#include "cachematch/scheme_hcm.hpp"
#include "cachematch/scheme_pcd.hpp"
#include "doctest.h"

using namespace cachematch;

namespace {
SystemConfig cfg(double M, double beta = 0.0, double t0 = 0.1) {
  return SystemConfig{1000, 500, 1000, M, 0.25, beta, t0};
}
double floor_term(double K, double t) { return std::pow(K, -t) / std::sqrt(2.0 * M_PI); }
}  // namespace

TEST_CASE("chi from alpha g d / (2 (1+t) log K)") {
  // d = 1000, K = 100 does not form a valid system; compute_chi only needs the numbers.
  const SystemConfig c{100, 1000, 100, 1.0, 0.25, 0.0, 0.5};
  CHECK(color_balance_g(0.0) == doctest::Approx(0.5));
  CHECK(compute_chi(c, 0.0) == 10);
  CHECK(compute_chi(c, 0.5) <= compute_chi(c, 0.0));
  const SystemConfig small{100, 10, 100, 1.0, 0.25, 0.0, 0.5};
  CHECK(compute_chi(small, 0.0) == 1);
  CHECK(compute_chi(cfg(10.0), 0.0) == 3);
}

TEST_CASE("K lower bound failure falls back to one color") {
  const SystemConfig c{2, 2, 2, 1.0, 0.01, 0.0, 0.5};  // log 2 < 2 g alpha for tiny rho
  REQUIRE_FALSE(k_lower_bound_holds(c));
  CHECK(compute_chi(c, 0.0) == 1);
  CHECK(build_color_plan(c, build_catalog(2, 0.0), 0.0).fallback);
}

TEST_CASE("alternating colors") {
  const SystemConfig c{10, 10, 10, 1.0, 0.25, 0.0, 0.5};
  const auto plan = build_color_plan_with_chi(c, build_catalog(10, 0.0), 3, 0.0);
  CHECK(plan.file_color == std::vector<std::int64_t>{0, 1, 2, 0, 1, 2, 0, 1, 2, 0});
  CHECK(plan.color_size == std::vector<std::int64_t>{4, 3, 3});
  CHECK(plan.color_popularity[0] == doctest::Approx(0.4));
  CHECK(plan.caches_per_color == std::vector<std::int64_t>{4, 3, 3});
  CHECK(plan.colorless_per_cluster == 0);

  const auto one = build_color_plan_with_chi(c, build_catalog(10, 0.5), 1, 0.0);
  CHECK(one.caches_per_color == std::vector<std::int64_t>{10});

  const SystemConfig even{12, 12, 12, 1.0, 0.25, 0.0, 0.5};
  const auto sym = build_color_plan_with_chi(even, build_catalog(12, 0.0), 4, 0.0);
  for (double p : sym.color_popularity) CHECK(p == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("color plan invariants on a grid") {
  for (double beta : {0.0, 0.3, 0.6, 0.9}) {
    for (std::int64_t d : {100, 250, 500}) {
      const SystemConfig c{1000, d, 1000, 10.0, 0.25, beta, 0.1};
      const auto cat = build_catalog(c.N, c.beta);
      const auto plan = build_color_plan(c, cat, 0.0);
      double sum = 0.0;
      std::int64_t caches = 0;
      for (std::size_t x = 0; x < plan.color_popularity.size(); ++x) {
        sum += plan.color_popularity[x];
        caches += plan.caches_per_color[x];
        CHECK(plan.color_popularity[x] >= plan.g / static_cast<double>(plan.chi));
        CHECK((plan.color_size[x] == c.N / plan.chi || plan.color_size[x] == (c.N + plan.chi - 1) / plan.chi));
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(caches <= d);
      CHECK(caches + plan.colorless_per_cluster == d);
    }
  }
}

TEST_CASE("rate branches") {
  const auto big = cfg(334.0);  // chi = 3 at t = 0, ceil(N/chi) = 334
  CHECK(hcm_rate(big, 0.0).rate == floor_term(1000.0, 0.0));
  CHECK(hcm_rate(cfg(5000.0), 0.1).rate == std::pow(1000.0, -0.1) * (1.0 / std::sqrt(2.0 * M_PI)));

  const auto low = cfg(100.0);
  const auto r = hcm_rate(low, 0.0);
  CHECK(r.chi == 3);
  CHECK(r.coded_sum == doctest::Approx(1000.0 / 100.0 - 3.0));
  CHECK(r.rx_bound == doctest::Approx(1000.0 / 100.0 - 1.0));
  CHECK(r.rate == doctest::Approx(7.0 + floor_term(1000.0, 0.0)));

  const auto middle = cfg(333.5);
  const auto m = hcm_rate(middle, 0.0);
  CHECK(m.coded_sum == doctest::Approx(1.0 * (334.0 / 333.5 - 1.0)));
  CHECK(m.rx_bound == doctest::Approx(m.coded_sum));

  CHECK(hcm_rate(cfg(0.0), 0.0).rate == 250.0);
  CHECK_THROWS_AS(hcm_rate(SystemConfig{1000, 500, 1000, 5.0, 0.25, 1.5, 0.1}, 0.0), DomainError);
  CHECK_THROWS(hcm_rate(cfg(5.0), 0.2));
}

TEST_CASE("boundary example N = 100, M = 10, chi = 10") {
  // d chosen so that chi(0) = 10 for K = 100: alpha g d/(2 log K) in [10, 11).
  const SystemConfig c{100, 100, 100, 10.0, 0.25, 0.0, 0.5};
  const double arg = load_exponent(0.25) * 0.5 * 100.0 / (2.0 * std::log(100.0));
  REQUIRE(arg < 10.0);
  // With chi fixed to 10 the first branch gives N/M - chi = 0.
  const auto plan = build_color_plan_with_chi(c, build_catalog(100, 0.0), 10, 0.0);
  CHECK(plan.color_size == std::vector<std::int64_t>(10, 10));
}

TEST_CASE("one color reproduces the PCD formula") {
  const SystemConfig c{1000, 100, 1000, 20.0, 0.25, 0.5, 0.3};
  REQUIRE(compute_chi(c, c.t0) == 1);
  CHECK(hcm_rate(c, c.t0).rate == doctest::Approx(pcd_rate_shallow(c).total));
}

TEST_CASE("HCM never exceeds PCD with t = t0") {
  for (double beta : {0.0, 0.4, 0.8}) {
    for (double M = 1.0; M <= 1200.0; M *= 1.37) {
      const auto c = cfg(M, beta);
      CHECK(hcm_rate(c, c.t0).rate <= pcd_rate_shallow(c).total);
    }
  }
}

TEST_CASE("unmatched chain: exact <= color bound <= K^{-t}/sqrt(2 pi)") {
  const auto c = cfg(10.0);
  const auto plan = build_color_plan(c, build_catalog(c.N, c.beta), 0.0);
  const double exact = hcm_expected_unmatched(plan, c);
  const double chain = hcm_unmatched_bound(plan, c);
  CHECK(exact <= chain);
  CHECK(chain <= floor_term(1000.0, 0.0));
}

TEST_CASE("simulation: zero requests and single-color isolation") {
  const SystemConfig c{20, 10, 20, 2.0, 0.25, 0.0, 0.5};
  const auto plan = build_color_plan_with_chi(c, build_catalog(20, 0.0), 2, 0.0);
  RequestProfile p(20, 2);
  CHECK(hcm_simulate(p, plan, c).rate.total == 0.0);
  p.set(0, 0, 1);
  p.set(2, 1, 2);
  const auto r = hcm_simulate(p, plan, c);
  CHECK(r.unmatched == 0);
  CHECK(r.rate.unicast == 0.0);
  CHECK(r.rate.coded > 0.0);
}

TEST_CASE("simulated unmatched users stay below the color bound") {
  const SystemConfig c{100, 50, 100, 5.0, 0.3, 0.0, 0.05};
  const auto cat = build_catalog(c.N, c.beta);
  const auto plan = build_color_plan_with_chi(c, cat, 3, 0.0);
  const int trials = 3000;
  double sum = 0.0, sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto u = static_cast<double>(hcm_simulate(sample_profile(c, cat, 2, static_cast<std::uint64_t>(t)), plan, c).unmatched);
    sum += u;
    sq += u * u;
  }
  const double mean = sum / trials;
  const double se = std::sqrt(std::max(0.0, sq / trials - mean * mean) / trials);
  CHECK(mean <= hcm_unmatched_bound(plan, c) + 3.0 * se);
  CHECK(std::abs(mean - hcm_expected_unmatched(plan, c)) <= 4.0 * se + 1e-3);
}

TEST_CASE("color plan CSVs") {
  const SystemConfig c{4, 4, 4, 1.0, 0.25, 0.0, 0.5};
  const auto plan = build_color_plan_with_chi(c, build_catalog(4, 0.0), 2, 0.0);
  std::ostringstream files, caches;
  write_file_colors_csv(files, plan);
  write_cache_colors_csv(caches, plan, 1);
  CHECK(files.str() == "file,color\n1,1\n2,2\n3,1\n4,2\n");
  CHECK(caches.str() == "cluster,cache,color\n1,1,1\n1,2,1\n1,3,2\n1,4,2\n");
}
