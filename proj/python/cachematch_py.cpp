#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "cachematch/bounds.hpp"
#include "cachematch/config.hpp"
#include "cachematch/montecarlo.hpp"
#include "cachematch/regimes.hpp"
#include "cachematch/scheme_hcm.hpp"
#include "cachematch/scheme_pam_shallow.hpp"
#include "cachematch/scheme_pam_steep.hpp"
#include "cachematch/scheme_pcd.hpp"
#include "cachematch/verify.hpp"

namespace py = pybind11;
using namespace cachematch;

namespace {

py::dict breakdown(const RateBreakdown& r) {
  py::dict d;
  d["coded"] = r.coded;
  d["unicast"] = r.unicast;
  d["total"] = r.total;
  return d;
}

}  // namespace

PYBIND11_MODULE(_cachematch, m) {
  m.doc() = "Coded caching with user-to-cache matching";

  py::register_exception<HardInvariantViolation>(m, "HardInvariantViolation", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init([](std::int64_t K, std::int64_t d, std::int64_t N, double M, double rho, double beta, double t0) {
             return SystemConfig{K, d, N, M, rho, beta, t0};
           }),
           py::arg("K"), py::arg("d"), py::arg("N"), py::arg("M"), py::arg("rho"), py::arg("beta"), py::arg("t0"))
      .def_static("from_file", [](const std::string& path) { return config_from_fields(read_config_fields(path)); })
      .def_readwrite("K", &SystemConfig::K)
      .def_readwrite("d", &SystemConfig::d)
      .def_readwrite("N", &SystemConfig::N)
      .def_readwrite("M", &SystemConfig::M)
      .def_readwrite("rho", &SystemConfig::rho)
      .def_readwrite("beta", &SystemConfig::beta)
      .def_readwrite("t0", &SystemConfig::t0)
      .def_property_readonly("alpha", &SystemConfig::alpha)
      .def_property_readonly("cluster_floor", &SystemConfig::cluster_floor)
      .def("__eq__", [](const SystemConfig& a, const SystemConfig& b) { return a == b; })
      .def("__repr__", [](const SystemConfig& c) { return "SystemConfig(" + describe(c) + ")"; });

  py::class_<PolyKPoint>(m, "PolyKPoint")
      .def(py::init([](double nu, double delta, double mu, double beta) { return PolyKPoint{nu, delta, mu, beta}; }),
           py::arg("nu"), py::arg("delta"), py::arg("mu"), py::arg("beta"))
      .def_readwrite("nu", &PolyKPoint::nu)
      .def_readwrite("delta", &PolyKPoint::delta)
      .def_readwrite("mu", &PolyKPoint::mu)
      .def_readwrite("beta", &PolyKPoint::beta);

  m.def("validate", [](const SystemConfig& c) { return validate(c).warnings(); },
        "Raises HardInvariantViolation on hard failures, returns soft warnings.");

  m.def("pcd_rate", [](const SystemConfig& c) { return breakdown(pcd_rate(c)); });

  m.def("pam_shallow_rate", [](const SystemConfig& c) {
    const auto r = pam_shallow_rate(c);
    py::dict d;
    d["rate"] = r.rate;
    d["tighter"] = r.tighter;
    d["z"] = r.z;
    d["below_threshold"] = r.below_threshold;
    return d;
  });

  m.def("pam_steep_rate", [](const SystemConfig& c) {
    const auto r = pam_steep_rate(c);
    py::dict d;
    d["order_value"] = r.order_value;
    d["expected_uncached"] = r.expected_uncached;
    return d;
  });

  m.def("hcm_rate", [](const SystemConfig& c, std::optional<double> t) {
    const auto r = hcm_rate(c, t.value_or(c.t0));
    py::dict d;
    d["rate"] = r.rate;
    d["coded_sum"] = r.coded_sum;
    d["unmatched"] = r.unmatched;
    d["chi"] = r.chi;
    d["fallback"] = r.fallback;
    return d;
  }, py::arg("config"), py::arg("t") = py::none());

  m.def("lower_bound", &shallow_lower_bound);
  m.def("optimality_gap", &optimality_gap);

  m.def("classify", [](const PolyKPoint& p) {
    const auto v = classify(p);
    py::dict d;
    d["winner"] = to_string(v.winner);
    d["sigma_pcd"] = v.sigma_pcd;
    d["sigma_pam"] = v.sigma_pam;
    return d;
  });

  m.def("regime_map", [](double beta, double nu, std::int64_t resolution) {
    py::list out;
    for (const auto& cell : regime_map(beta, nu, resolution)) {
      out.append(py::make_tuple(cell.delta, cell.mu, to_string(cell.verdict.winner)));
    }
    return out;
  }, py::arg("beta"), py::arg("nu"), py::arg("resolution"));

  m.def("simulate", [](const SystemConfig& c, const std::string& scheme, std::int64_t trials, std::uint64_t seed,
                       std::optional<double> t, unsigned workers) {
    ExperimentSpec spec;
    spec.config = c;
    spec.scheme = parse_scheme(scheme);
    spec.trials = trials;
    spec.seed = seed;
    spec.t_param = t;
    spec.workers = workers;
    RateReport r;
    {
      py::gil_scoped_release release;
      r = run_experiment(spec);
    }
    py::dict d;
    d["scheme"] = r.scheme;
    d["trials"] = r.trials;
    d["mean_rate"] = r.mean_rate;
    d["stderr_rate"] = r.stderr_rate;
    d["unmatched_mean"] = r.unmatched_mean;
    d["analytic_rate"] = r.analytic_rate;
    d["bound_satisfied"] = r.bound_satisfied;
    d["json"] = report_to_json(r, spec);
    return d;
  }, py::arg("config"), py::arg("scheme"), py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("t") = py::none(),
     py::arg("workers") = 0);

  m.def("verify_bounds", [](const SystemConfig& c, std::uint64_t seed, std::int64_t trials) {
    VerifyOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    const auto r = verify_bounds(c, opt);
    return py::make_tuple(r.all_passed(), verify_report_text(r));
  }, py::arg("config"), py::arg("seed") = 1, py::arg("trials") = 200);
}
