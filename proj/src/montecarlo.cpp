#include "cachematch/montecarlo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <thread>

#include "cachematch/popularity.hpp"
#include "cachematch/scheme_hcm.hpp"
#include "cachematch/scheme_pam_steep.hpp"
#include "cachematch/scheme_pcd.hpp"
#include "cachematch/traffic.hpp"
#include "json.hpp"

namespace cachematch {

namespace {

struct TrialOutcome {
  RateBreakdown rate;
  std::int64_t unmatched = 0;
  bool load_feasible = false;
};

struct Moments {
  double mean = 0.0;
  double stderr_mean = 0.0;
};

template <class F>
Moments moments(const std::vector<TrialOutcome>& xs, F get) {
  const auto n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (const auto& x : xs) sum += get(x);
  const double mean = sum / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const auto& x : xs) ss += (get(x) - mean) * (get(x) - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

void check_compatible(const ExperimentSpec& spec) {
  const auto& c = spec.config;
  const bool ok = (spec.scheme == Scheme::PCD) ||
                  ((spec.scheme == Scheme::PAM_SHALLOW || spec.scheme == Scheme::HCM) && c.shallow()) ||
                  (spec.scheme == Scheme::PAM_STEEP && c.steep());
  if (!ok) {
    throw IncompatibleScheme(std::string(to_string(spec.scheme)) + " does not apply at beta = " +
                             std::to_string(c.beta));
  }
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
}

double hcm_slack(const ExperimentSpec& spec) { return spec.t_param.value_or(spec.config.t0); }

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::PCD:
      return "pcd";
    case Scheme::PAM_SHALLOW:
      return "pam-shallow";
    case Scheme::PAM_STEEP:
      return "pam-steep";
    case Scheme::HCM:
      break;
  }
  return "hcm";
}

Scheme parse_scheme(const std::string& name) {
  std::string key;
  for (char ch : name) key += ch == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (Scheme s : {Scheme::PCD, Scheme::PAM_SHALLOW, Scheme::PAM_STEEP, Scheme::HCM}) {
    if (key == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

double analytic_rate(const ExperimentSpec& spec) {
  check_compatible(spec);
  switch (spec.scheme) {
    case Scheme::PCD:
      return pcd_rate(spec.config).total;
    case Scheme::PAM_SHALLOW:
      return pam_shallow_rate(spec.config).rate;
    case Scheme::PAM_STEEP:
      return pam_steep_rate(spec.config).expected_uncached;
    case Scheme::HCM:
      break;
  }
  return hcm_rate(spec.config, hcm_slack(spec)).rate;
}

RateReport run_experiment(const ExperimentSpec& spec) {
  validate(spec.config);
  check_compatible(spec);
  const SystemConfig& config = spec.config;
  const auto catalog = build_catalog(config.N, config.beta);
  const TrafficModel traffic(config, catalog);

  RateReport report;
  report.scheme = to_string(spec.scheme);
  report.trials = spec.trials;
  report.analytic_rate = analytic_rate(spec);
  if (!config.meets_cluster_floor()) {
    report.notes.push_back("d is below the cluster floor; analytic unmatched-user bounds are outside their regime");
  }

  std::optional<ProportionalPlacement> proportional;
  std::optional<KsPlacement> knapsack;
  std::optional<ColorPlan> colors;
  switch (spec.scheme) {
    case Scheme::PAM_SHALLOW:
      try {
        proportional = proportional_placement(config, catalog);
      } catch (const InsufficientMemory& e) {
        report.notes.push_back(std::string("server-only delivery: ") + e.what());
      }
      break;
    case Scheme::PAM_STEEP:
      knapsack = ks_placement(config, catalog);
      report.notes.push_back("order-of-growth envelope carries unverified constants; analytic rate is E[uncached files]");
      break;
    case Scheme::HCM:
      colors = build_color_plan(config, catalog, hcm_slack(spec));
      report.notes.push_back("chi includes the color balance factor g");
      if (colors->fallback) report.notes.push_back("log K < 2 g alpha; chi fell back to 1");
      break;
    case Scheme::PCD:
      break;
  }

  auto run_trial = [&](std::uint64_t trial) {
    const auto profile = traffic.sample(spec.seed, trial);
    TrialOutcome out;
    switch (spec.scheme) {
      case Scheme::PCD:
        out.rate = pcd_simulate(profile, config);
        out.unmatched = pcd_unmatched_users(profile, config);
        break;
      case Scheme::PAM_SHALLOW: {
        const auto served = proportional ? pam_shallow_serve(profile, *proportional, config, spec.eviction)
                                         : serve_from_server(profile);
        out.rate = served.rate;
        out.unmatched = proportional ? served.evicted_requests + served.unmatched_after_matching : profile.total();
        out.load_feasible = proportional && served.violating_caches == 0;
        break;
      }
      case Scheme::PAM_STEEP: {
        const auto served = pam_steep_serve(profile, *knapsack, spec.seed, trial);
        out.rate = served.rate;
        out.unmatched = served.unmatched_cached + served.uncached_requests;
        break;
      }
      case Scheme::HCM: {
        const auto served = hcm_simulate(profile, *colors, config);
        out.rate = served.rate;
        out.unmatched = served.unmatched;
        break;
      }
    }
    return out;
  };

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(spec.trials));
  unsigned workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, spec.trials));
  if (workers <= 1) {
    for (std::size_t i = 0; i < outcomes.size(); ++i) outcomes[i] = run_trial(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < outcomes.size(); i += workers) outcomes[i] = run_trial(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const auto total = moments(outcomes, [](const TrialOutcome& o) { return o.rate.total; });
  const auto unicast = moments(outcomes, [](const TrialOutcome& o) { return o.rate.unicast; });
  const auto unmatched = moments(outcomes, [](const TrialOutcome& o) { return static_cast<double>(o.unmatched); });
  report.mean_rate = total.mean;
  report.stderr_rate = total.stderr_mean;
  report.coded_mean = moments(outcomes, [](const TrialOutcome& o) { return o.rate.coded; }).mean;
  report.unicast_mean = unicast.mean;
  report.unicast_stderr = unicast.stderr_mean;
  report.unmatched_mean = unmatched.mean;
  report.unmatched_stderr = unmatched.stderr_mean;
  for (const auto& o : outcomes) {
    if (!o.load_feasible) continue;
    ++report.load_feasible_trials;
    if (o.unmatched > 0) ++report.load_feasible_trials_with_unmatched;
  }
  report.bound_satisfied = report.mean_rate <= report.analytic_rate + 3.0 * report.stderr_rate;
  return report;
}

std::string report_to_json(const RateReport& report, const ExperimentSpec& spec) {
  const auto& c = spec.config;
  nlohmann::ordered_json j;
  j["config"] = {{"K", c.K}, {"d", c.d}, {"N", c.N}, {"M", c.M}, {"rho", c.rho}, {"beta", c.beta}, {"t0", c.t0}};
  j["scheme"] = report.scheme;
  j["seed"] = spec.seed;
  j["trials"] = report.trials;
  if (spec.t_param) j["t"] = *spec.t_param;
  j["mean_rate"] = report.mean_rate;
  j["stderr"] = report.stderr_rate;
  j["decomposition"] = {{"coded", report.coded_mean}, {"unicast", report.unicast_mean}};
  j["unicast_stderr"] = report.unicast_stderr;
  j["unmatched_mean"] = report.unmatched_mean;
  j["unmatched_stderr"] = report.unmatched_stderr;
  j["analytic_rate"] = report.analytic_rate;
  j["bound_satisfied"] = report.bound_satisfied;
  if (spec.scheme == Scheme::PAM_SHALLOW) {
    j["load_feasible_trials"] = report.load_feasible_trials;
    j["load_feasible_trials_with_unmatched"] = report.load_feasible_trials_with_unmatched;
  }
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

}  // namespace cachematch
