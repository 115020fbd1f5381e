#include "cachematch/mathkit.hpp"

#include <cmath>
#include <stdexcept>

namespace cachematch {

namespace {

constexpr double kTailRelTol = 1e-14;

// Sums f(y) * pmf(y) for y = m, m+1, ... Terms are generated by the pmf
// recurrence from a log-space start so tiny tails stay representable.
template <typename Weight>
double upward_sum(double lambda, std::int64_t m, Weight weight) {
  if (lambda <= 0.0) return m <= 0 ? weight(0) : 0.0;
  std::int64_t y = m < 0 ? 0 : m;
  double pmf = poisson_pmf(lambda, y);
  CompensatedSum acc;
  for (;; ++y) {
    const double term = weight(y) * pmf;
    acc.add(term);
    const double next_ratio = lambda / static_cast<double>(y + 1);
    // Past the mode the pmf ratio is below one; the remaining tail is then at
    // most pmf * r / (1 - r) (times a slowly growing weight).
    if (next_ratio < 1.0) {
      const double tail = pmf * next_ratio / (1.0 - next_ratio) * (weight(y + 1) + 1.0);
      if (tail <= kTailRelTol * acc.value() || pmf == 0.0) break;
    }
    pmf *= next_ratio;
  }
  return acc.value();
}

}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

double cramer_h(double x) {
  if (x < 0.0) throw std::domain_error("cramer_h: x must be non-negative");
  if (x == 0.0) return 1.0;
  return x * std::log(x) + 1.0 - x;
}

double kl_bernoulli(double a, double b) {
  auto term = [](double p, double q) { return p == 0.0 ? 0.0 : p * std::log(p / q); };
  return term(a, b) + term(1.0 - a, 1.0 - b);
}

double poisson_log_pmf(double lambda, std::int64_t k) {
  if (k < 0) return -INFINITY;
  if (lambda == 0.0) return k == 0 ? 0.0 : -INFINITY;
  const double kd = static_cast<double>(k);
  return kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0);
}

double poisson_pmf(double lambda, std::int64_t k) { return std::exp(poisson_log_pmf(lambda, k)); }

double poisson_tail(double lambda, std::int64_t m) {
  if (m <= 0) return 1.0;
  // Sum the smaller side to avoid cancellation.
  if (static_cast<double>(m) > lambda) {
    return upward_sum(lambda, m, [](std::int64_t) { return 1.0; });
  }
  CompensatedSum below;
  for (std::int64_t y = 0; y < m; ++y) below.add(poisson_pmf(lambda, y));
  return 1.0 - below.value();
}

double poisson_expected_excess(double lambda, std::int64_t m) {
  if (m <= 0) return lambda - static_cast<double>(m);
  return upward_sum(lambda, m, [m](std::int64_t y) { return static_cast<double>(y - m); });
}

double poisson_conditional_mean(double lambda, std::int64_t m) {
  const double mass = upward_sum(lambda, m, [](std::int64_t) { return 1.0; });
  const double first = upward_sum(lambda, m, [](std::int64_t y) { return static_cast<double>(y); });
  return first / mass;
}

double poisson_chernoff_bound(double mu, double eps) { return std::exp(-mu * cramer_h(1.0 + eps)); }

double expected_unmatched_bound(std::int64_t m, double gamma) {
  if (m < 1) throw std::domain_error("expected_unmatched_bound: m must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::domain_error("expected_unmatched_bound: gamma must lie in (0, 1)");
  }
  const double md = static_cast<double>(m);
  return kInvSqrt2Pi * md * std::exp(md * (std::log(gamma) + 1.0 - gamma));
}

}  // namespace cachematch
