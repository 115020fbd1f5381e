// cachematch command-line front end.
//
//   cachematch simulate CONFIG [--scheme pcd] [--trials 1000] [--seed 1] [--out report.json]
//   cachematch rate-curve CONFIG [--param M] [--from 1 --to 100 --step 1] [--simulate] [--out curve.csv]
//   cachematch regime-map [--beta 0.5] [--nu 1] [--resolution 50] [--out map.csv]
//   cachematch verify-bounds CONFIG [--out report.json]
//
// Exit codes: 0 success, 1 an inequality failed, 2 invalid configuration or usage.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cachematch/bounds.hpp"
#include "cachematch/config.hpp"
#include "cachematch/csv.hpp"
#include "cachematch/montecarlo.hpp"
#include "cachematch/regimes.hpp"
#include "cachematch/scheme_hcm.hpp"
#include "cachematch/scheme_pam_shallow.hpp"
#include "cachematch/scheme_pam_steep.hpp"
#include "cachematch/scheme_pcd.hpp"
#include "cachematch/verify.hpp"

namespace cm = cachematch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInequality = 1;
constexpr int kExitInvalid = 2;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 1;
  std::int64_t trials = 1000;
  std::string out;
  unsigned workers = 0;
};

cm::SystemConfig load_config(const Common& common) {
  auto config = cm::config_from_fields(cm::read_config_fields(common.config_path));
  for (const auto& kv : common.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw cm::HardInvariantViolation("--set expects key=value, got '" + kv + "'");
    cm::set_config_field(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cm::validate(config);
  return config;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

void add_common(CLI::App* sub, Common& common, bool needs_config) {
  if (needs_config) {
    sub->add_option("config", common.config_path, "Configuration file (key = value lines)")->required();
    sub->add_option("--set", common.overrides, "Override a config field, key=value");
  }
  sub->add_option("--seed", common.seed, "Root seed");
  sub->add_option("--trials", common.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  sub->add_option("--out", common.out, "Output file (stdout when omitted)");
  sub->add_option("--workers", common.workers, "Worker threads (0 = all cores)");
}

int cmd_simulate(const Common& common, const std::string& scheme, std::optional<double> t) {
  cm::ExperimentSpec spec;
  spec.config = load_config(common);
  spec.scheme = cm::parse_scheme(scheme);
  spec.trials = common.trials;
  spec.seed = common.seed;
  spec.t_param = t;
  spec.workers = common.workers;
  const auto report = cm::run_experiment(spec);
  emit(common.out, cm::report_to_json(report, spec));
  return report.bound_satisfied ? kExitOk : kExitInequality;
}

struct Sweep {
  std::string param = "M";
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
  bool simulate = false;
};

std::vector<double> sweep_values(const Sweep& s) {
  if (!(s.step > 0.0)) throw cm::HardInvariantViolation("--step must be positive");
  if (s.to < s.from) throw cm::HardInvariantViolation("--to must not be below --from");
  const auto count = static_cast<std::int64_t>(std::floor((s.to - s.from) / s.step + 1e-9)) + 1;
  std::vector<double> values;
  for (std::int64_t i = 0; i < count; ++i) values.push_back(s.from + static_cast<double>(i) * s.step);
  return values;
}

std::string cell(const std::function<double()>& f) {
  try {
    return cm::csv_number(f());
  } catch (const std::domain_error&) {
    return "";
  } catch (const cm::InsufficientMemory&) {
    return "";
  }
}

int cmd_rate_curve(const Common& common, const Sweep& sweep) {
  const auto base = load_config(common);
  if (sweep.param != "M" && sweep.param != "d" && sweep.param != "beta") {
    throw cm::HardInvariantViolation("--param must be one of M, d, beta");
  }
  const auto values = sweep_values(sweep);
  const bool shallow = base.shallow();
  std::ostringstream os;
  os << sweep.param << ",rate_pcd,rate_pam";
  if (shallow) {
    os << ",rate_hcm,lower_bound";
  } else {
    os << ",rate_pam_order";
  }
  if (sweep.simulate) os << ",sim_pcd,sim_pam" << (shallow ? ",sim_hcm" : "");
  os << "\n";

  for (double v : values) {
    auto config = base;
    cm::set_config_field(config, sweep.param, cm::csv_number(v));
    cm::validate(config);
    if (config.shallow() != shallow) throw cm::HardInvariantViolation("a beta sweep must stay on one side of 1");
    os << cm::csv_number(v) << ',' << cell([&] { return cm::pcd_rate(config).total; });
    if (shallow) {
      os << ',' << cell([&] { return cm::pam_shallow_rate(config).rate; }) << ','
         << cell([&] { return cm::hcm_rate(config, config.t0).rate; }) << ','
         << cell([&] { return cm::shallow_lower_bound(config); });
    } else {
      const auto env = cm::pam_steep_rate(config);
      os << ',' << cm::csv_number(env.expected_uncached) << ',' << cm::csv_number(env.order_value);
    }
    if (sweep.simulate) {
      std::vector<cm::Scheme> schemes = {cm::Scheme::PCD, shallow ? cm::Scheme::PAM_SHALLOW : cm::Scheme::PAM_STEEP};
      if (shallow) schemes.push_back(cm::Scheme::HCM);
      for (auto scheme : schemes) {
        cm::ExperimentSpec spec{config, scheme, common.trials, common.seed, std::nullopt,
                                cm::EvictionRule::AllRequestsOfFile, common.workers};
        os << ',' << cm::csv_number(cm::run_experiment(spec).mean_rate);
      }
    }
    os << "\n";
  }
  emit(common.out, os.str());
  return kExitOk;
}

int cmd_regime_map(const Common& common, double beta, double nu, std::int64_t resolution) {
  cm::PolyKPoint{nu, 1.0, 0.0, beta}.check();
  std::ostringstream os;
  cm::write_regime_csv(os, cm::regime_map(beta, nu, resolution));
  emit(common.out, os.str());
  return kExitOk;
}

int cmd_verify(const Common& common) {
  const auto config = load_config(common);
  cm::VerifyOptions opt;
  opt.seed = common.seed;
  opt.trials = std::min<std::int64_t>(common.trials, 10000);
  const auto report = cm::verify_bounds(config, opt);
  std::cout << cm::verify_report_text(report);
  if (!common.out.empty()) emit(common.out, cm::verify_report_json(report));
  return report.all_passed() ? kExitOk : kExitInequality;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cache-aided delivery simulator for clustered small-cell networks"};
  app.require_subcommand(1);

  Common common;
  std::string scheme = "pcd";
  std::optional<double> t;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo rate of one scheme at a config (JSON report)");
  add_common(simulate, common, true);
  simulate->add_option("--scheme", scheme, "pcd, pam-shallow, pam-steep or hcm");
  simulate->add_option("--t", t, "HCM slack parameter in [0, t0]");

  Sweep sweep;
  auto* curve = app.add_subcommand("rate-curve", "Analytic (and optionally simulated) rates over a sweep (CSV)");
  add_common(curve, common, true);
  curve->add_option("--param", sweep.param, "Swept field: M, d or beta");
  curve->add_option("--from", sweep.from, "First value")->required();
  curve->add_option("--to", sweep.to, "Last value")->required();
  curve->add_option("--step", sweep.step, "Step");
  curve->add_flag("--simulate", sweep.simulate, "Add simulated mean-rate columns");

  double beta = 0.5;
  double nu = 1.0;
  std::int64_t resolution = 50;
  auto* regime = app.add_subcommand("regime-map", "Poly-K regime map over (delta, mu) (CSV)");
  add_common(regime, common, false);
  regime->add_option("--beta", beta, "Zipf exponent (not 1)");
  regime->add_option("--nu", nu, "Library exponent, N = K^nu");
  regime->add_option("--resolution", resolution, "Cells per axis")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify-bounds", "Check every applicable inequality at a config");
  add_common(verify, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*simulate) return cmd_simulate(common, scheme, t);
    if (*curve) return cmd_rate_curve(common, sweep);
    if (*regime) return cmd_regime_map(common, beta, nu, resolution);
    return cmd_verify(common);
  } catch (const cm::HardInvariantViolation& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
  } catch (const cm::IncompatibleScheme& e) {
    std::cerr << "incompatible scheme: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitInvalid;
}
