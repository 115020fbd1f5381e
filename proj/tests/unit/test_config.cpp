#include <cmath>
#include <sstream>

#include "cachematch/config.hpp"
#include "doctest.h"

using namespace cachematch;

namespace {

SystemConfig good() { return SystemConfig{1000, 100, 1000, 20.0, 0.25, 0.5, 0.3}; }

}  // namespace

TEST_CASE("load exponent matches -log(2 rho e^{1-2 rho})") {
  CHECK(load_exponent(0.25) == doctest::Approx(0.193147180559945).epsilon(1e-12));
  for (double rho : {0.01, 0.1, 0.3, 0.45}) {
    const double a = -std::log(2.0 * rho) - (1.0 - 2.0 * rho);
    CHECK(load_exponent(rho) == doctest::Approx(a).epsilon(1e-13));
    CHECK(load_exponent(rho) > 0.0);
  }
}

TEST_CASE("cluster floor is 2(1+t0) log K / alpha") {
  const auto c = good();
  const double floor = 2.0 * 1.3 * std::log(1000.0) / load_exponent(0.25);
  CHECK(c.cluster_floor() == doctest::Approx(floor));
  CHECK(c.meets_cluster_floor());
  auto small = c;
  small.d = 50;
  CHECK_FALSE(small.meets_cluster_floor());
  // The slack at which the floor binds exactly.
  const double t = max_cluster_slack(600, 60, 0.25);
  CHECK(t == doctest::Approx(load_exponent(0.25) * 60.0 / (2.0 * std::log(600.0)) - 1.0));
}

TEST_CASE("validation accepts a good config and reports each hard failure") {
  CHECK(validate(good()).ok());

  auto bad_rho = good();
  bad_rho.rho = 0.6;
  CHECK_THROWS_AS(validate(bad_rho), HardInvariantViolation);

  auto no_divide = good();
  no_divide.d = 300;
  CHECK_THROWS_AS(validate(no_divide), HardInvariantViolation);

  auto few_files = good();
  few_files.N = 999;
  CHECK_THROWS_AS(validate(few_files), HardInvariantViolation);

  auto beta_one = good();
  beta_one.beta = 1.0;
  CHECK_THROWS_AS(validate(beta_one), HardInvariantViolation);

  auto neg_m = good();
  neg_m.M = -1.0;
  CHECK_THROWS_AS(validate(neg_m), HardInvariantViolation);

  auto zero_t = good();
  zero_t.t0 = 0.0;
  CHECK_THROWS_AS(validate(zero_t), HardInvariantViolation);
}

TEST_CASE("the cluster floor is a warning, not an error") {
  auto c = good();
  c.d = 20;
  const auto report = validate(c);
  CHECK(report.ok());
  REQUIRE(report.warnings().size() == 1);
  CHECK(report.warnings()[0].find("cluster_floor") == 0);
}

TEST_CASE("inspect never throws and lists every problem") {
  SystemConfig c{0, 0, 0, -1.0, 2.0, 1.0, -1.0};
  const auto report = inspect(c);
  CHECK_FALSE(report.ok());
  CHECK(report.errors().size() >= 6);
}

TEST_CASE("config text round trip") {
  std::istringstream in(
      "# comment\n"
      "K = 600\n d=60 \n"
      "N = 600   # trailing\n"
      "M = 2.5\nrho = 0.25\nbeta = 0\nt0 = 0.5\n");
  const auto c = config_from_fields(parse_config_fields(in));
  CHECK(c == SystemConfig{600, 60, 600, 2.5, 0.25, 0.0, 0.5});
  std::istringstream again(to_config_text(c));
  CHECK(config_from_fields(parse_config_fields(again)) == c);
}

TEST_CASE("config parsing errors") {
  std::istringstream missing("K = 10\n");
  CHECK_THROWS_AS(config_from_fields(parse_config_fields(missing)), HardInvariantViolation);
  std::istringstream junk("K 10\n");
  CHECK_THROWS_AS(parse_config_fields(junk), HardInvariantViolation);
  auto c = good();
  CHECK_THROWS_AS(set_config_field(c, "Q", "1"), HardInvariantViolation);
  CHECK_THROWS_AS(set_config_field(c, "K", "1.5"), HardInvariantViolation);
  CHECK_THROWS_AS(set_config_field(c, "rho", "abc"), HardInvariantViolation);
  set_config_field(c, "K", "2e3");
  CHECK(c.K == 2000);
  CHECK_THROWS_AS(read_config_fields("/nonexistent/file.cfg"), HardInvariantViolation);
}

TEST_CASE("poly-K points") {
  CHECK_NOTHROW(PolyKPoint{1.0, 0.5, 0.3, 0.5}.check());
  CHECK_THROWS_AS((PolyKPoint{0.5, 0.5, 0.3, 0.5}.check()), HardInvariantViolation);
  CHECK_THROWS_AS((PolyKPoint{1.0, 0.0, 0.3, 0.5}.check()), HardInvariantViolation);
  CHECK_THROWS_AS((PolyKPoint{1.0, 0.5, 0.3, 1.0}.check()), HardInvariantViolation);
}
