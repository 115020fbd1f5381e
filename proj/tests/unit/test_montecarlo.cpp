#include "cachematch/montecarlo.hpp"
#include "cachematch/scheme_pcd.hpp"
#include "doctest.h"

using namespace cachematch;

namespace {
ExperimentSpec spec(Scheme s, double beta, std::int64_t trials = 64) {
  ExperimentSpec e;
  e.config = SystemConfig{200, 100, 200, 10.0, 0.25, beta, 0.5};
  e.scheme = s;
  e.trials = trials;
  e.seed = 17;
  return e;
}
}  // namespace

TEST_CASE("scheme names") {
  CHECK(parse_scheme("PAM_shallow") == Scheme::PAM_SHALLOW);
  CHECK(parse_scheme("hcm") == Scheme::HCM);
  CHECK(std::string(to_string(Scheme::PAM_STEEP)) == "pam-steep");
  CHECK_THROWS(parse_scheme("foo"));
}

TEST_CASE("incompatible schemes and configs") {
  CHECK_THROWS_AS(run_experiment(spec(Scheme::PAM_STEEP, 0.5)), IncompatibleScheme);
  CHECK_THROWS_AS(run_experiment(spec(Scheme::HCM, 1.5)), IncompatibleScheme);
  CHECK_THROWS_AS(run_experiment(spec(Scheme::PAM_SHALLOW, 1.5)), IncompatibleScheme);
  auto bad = spec(Scheme::PCD, 0.0);
  bad.config.rho = 0.7;
  CHECK_THROWS_AS(run_experiment(bad), HardInvariantViolation);
  auto zero = spec(Scheme::PCD, 0.0);
  zero.trials = 0;
  CHECK_THROWS(run_experiment(zero));
}

TEST_CASE("serial and parallel runs give identical reports") {
  for (auto [s, beta] : {std::pair{Scheme::PCD, 0.0}, std::pair{Scheme::PAM_SHALLOW, 0.0}, std::pair{Scheme::PAM_STEEP, 1.5},
                         std::pair{Scheme::HCM, 0.3}}) {
    auto a = spec(s, beta);
    a.workers = 1;
    auto b = a;
    b.workers = 4;
    CHECK(report_to_json(run_experiment(a), a) == report_to_json(run_experiment(b), b));
  }
}

TEST_CASE("report fields") {
  const auto e = spec(Scheme::PCD, 0.0, 200);
  const auto r = run_experiment(e);
  CHECK(r.trials == 200);
  CHECK(r.stderr_rate >= 0.0);
  CHECK(r.mean_rate >= 0.0);
  CHECK(r.analytic_rate == pcd_rate(e.config).total);
  CHECK(r.bound_satisfied == (r.mean_rate <= r.analytic_rate + 3.0 * r.stderr_rate));
  CHECK(r.mean_rate == doctest::Approx(r.coded_mean + r.unicast_mean));

  const auto one = run_experiment(spec(Scheme::PCD, 0.0, 1));
  CHECK(one.stderr_rate == 0.0);
}

TEST_CASE("seeds change the sample") {
  auto a = spec(Scheme::PCD, 0.0);
  auto b = a;
  b.seed = 18;
  CHECK(run_experiment(a).mean_rate != run_experiment(b).mean_rate);
}

TEST_CASE("PAM below the memory threshold falls back to server delivery") {
  auto e = spec(Scheme::PAM_SHALLOW, 0.0);
  e.config.M = 1.0;
  const auto r = run_experiment(e);
  CHECK(r.load_feasible_trials == 0);
  CHECK(r.coded_mean == 0.0);
  CHECK(r.analytic_rate == 50.0);
  CHECK(r.bound_satisfied);
}
