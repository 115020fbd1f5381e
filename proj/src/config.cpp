#include "cachematch/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace cachematch {

namespace {

constexpr const char* kFieldNames[] = {"K", "d", "N", "M", "rho", "beta", "t0"};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    // Accept integral values written as reals, e.g. "1e3".
    double real = 0.0;
    try {
      std::size_t used = 0;
      real = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw HardInvariantViolation("config field '" + key + "' is not an integer: '" + text + "'");
    }
    if (real != std::floor(real) || std::abs(real) > 9.0e15) {
      throw HardInvariantViolation("config field '" + key + "' is not an integer: '" + text + "'");
    }
    value = static_cast<std::int64_t>(real);
  }
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(value)) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw HardInvariantViolation("config field '" + key + "' is not a real number: '" + text + "'");
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

double load_exponent(double rho) { return -std::log(2.0 * rho * std::exp(1.0 - 2.0 * rho)); }

double max_cluster_slack(std::int64_t K, std::int64_t d, double rho) {
  return load_exponent(rho) * static_cast<double>(d) / (2.0 * std::log(static_cast<double>(K))) - 1.0;
}

double SystemConfig::cluster_floor() const {
  return 2.0 * (1.0 + t0) / alpha() * std::log(static_cast<double>(K));
}

bool SystemConfig::meets_cluster_floor() const {
  return static_cast<double>(d) >= cluster_floor();
}

void PolyKPoint::check() const {
  std::vector<std::string> problems;
  if (!(nu >= 1.0)) problems.push_back("nu must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0)) problems.push_back("delta must lie in (0, 1]");
  if (!(mu >= 0.0 && mu <= 1.0)) problems.push_back("mu must lie in [0, 1]");
  if (!(mu <= nu)) problems.push_back("mu must not exceed nu");
  if (!(beta >= 0.0) || beta == 1.0) problems.push_back("beta must be >= 0 and != 1");
  if (problems.empty()) return;
  std::string msg = "invalid poly-K point:";
  for (const auto& p : problems) msg += " " + p + ";";
  throw HardInvariantViolation(msg);
}

bool ValidationReport::ok() const {
  for (const auto& c : checks) {
    if (c.hard && !c.passed) return false;
  }
  return true;
}

std::vector<std::string> ValidationReport::errors() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (c.hard && !c.passed) out.push_back(c.name + ": " + c.detail);
  }
  return out;
}

std::vector<std::string> ValidationReport::warnings() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.hard && !c.passed) out.push_back(c.name + ": " + c.detail);
  }
  return out;
}

ValidationReport inspect(const SystemConfig& config) {
  ValidationReport report;
  auto add = [&](std::string name, bool passed, bool hard, std::string detail) {
    report.checks.push_back({std::move(name), passed, hard, std::move(detail)});
  };

  add("K_positive", config.K >= 1, true, "K = " + std::to_string(config.K));
  add("d_positive", config.d >= 1, true, "d = " + std::to_string(config.d));
  add("N_positive", config.N >= 1, true, "N = " + std::to_string(config.N));
  const bool divides = config.d >= 1 && config.K >= 1 && config.K % config.d == 0;
  add("d_divides_K", divides, true,
      "d = " + std::to_string(config.d) + ", K = " + std::to_string(config.K));
  add("N_at_least_K", config.N >= config.K, true,
      "N = " + std::to_string(config.N) + ", K = " + std::to_string(config.K));
  add("M_nonnegative", std::isfinite(config.M) && config.M >= 0.0, true, "M = " + fmt(config.M));
  const bool rho_ok = config.rho > 0.0 && config.rho < 0.5;
  add("rho_in_open_half_interval", rho_ok, true, "rho = " + fmt(config.rho));
  add("beta_valid", config.beta >= 0.0 && config.beta != 1.0 && std::isfinite(config.beta), true,
      "beta = " + fmt(config.beta));
  add("t0_positive", config.t0 > 0.0 && std::isfinite(config.t0), true, "t0 = " + fmt(config.t0));

  if (rho_ok) {
    add("alpha_positive", config.alpha() > 0.0, true, "alpha = " + fmt(config.alpha()));
  }
  if (rho_ok && config.K >= 1 && config.d >= 1 && config.t0 > 0.0) {
    add("cluster_floor", config.meets_cluster_floor(), false,
        "d = " + std::to_string(config.d) + " vs required " + fmt(config.cluster_floor()) +
            "; analytic unmatched-user bounds are outside their proof regime");
  }
  return report;
}

ValidationReport validate(const SystemConfig& config) {
  ValidationReport report = inspect(config);
  if (!report.ok()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : report.errors()) msg += "\n  " + e;
    throw HardInvariantViolation(msg);
  }
  return report;
}

ConfigFields parse_config_fields(std::istream& in) {
  ConfigFields fields;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw HardInvariantViolation("config line " + std::to_string(line_no) +
                                   ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw HardInvariantViolation("config line " + std::to_string(line_no) +
                                   ": empty key or value");
    }
    fields[key] = value;
  }
  return fields;
}

ConfigFields read_config_fields(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw HardInvariantViolation("cannot open config file '" + path + "'");
  return parse_config_fields(in);
}

void set_config_field(SystemConfig& config, const std::string& key, const std::string& value) {
  if (key == "K") {
    config.K = parse_int(key, value);
  } else if (key == "d") {
    config.d = parse_int(key, value);
  } else if (key == "N") {
    config.N = parse_int(key, value);
  } else if (key == "M") {
    config.M = parse_real(key, value);
  } else if (key == "rho") {
    config.rho = parse_real(key, value);
  } else if (key == "beta") {
    config.beta = parse_real(key, value);
  } else if (key == "t0") {
    config.t0 = parse_real(key, value);
  } else {
    throw HardInvariantViolation("unknown config field '" + key + "'");
  }
}

SystemConfig config_from_fields(const ConfigFields& fields) {
  SystemConfig config;
  for (const char* name : kFieldNames) {
    const auto it = fields.find(name);
    if (it == fields.end()) {
      throw HardInvariantViolation(std::string("config field '") + name + "' is missing");
    }
  }
  for (const auto& [key, value] : fields) set_config_field(config, key, value);
  return config;
}

std::string to_config_text(const SystemConfig& config) {
  std::ostringstream os;
  os << "K = " << config.K << "\n"
     << "d = " << config.d << "\n"
     << "N = " << config.N << "\n"
     << "M = " << fmt(config.M) << "\n"
     << "rho = " << fmt(config.rho) << "\n"
     << "beta = " << fmt(config.beta) << "\n"
     << "t0 = " << fmt(config.t0) << "\n";
  return os.str();
}

std::string describe(const SystemConfig& config) {
  std::ostringstream os;
  os << "K=" << config.K << " d=" << config.d << " N=" << config.N << " M=" << fmt(config.M)
     << " rho=" << fmt(config.rho) << " beta=" << fmt(config.beta) << " t0=" << fmt(config.t0);
  return os.str();
}

}  // namespace cachematch
