#pragma once

#include <cstdint>
#include <span>

namespace cachematch {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

/// [x]^+
inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// Cramer transform of a unit Poisson variable, h(x) = x log x + 1 - x.
double cramer_h(double x);

/// Binary relative entropy D(a || b) in nats.
double kl_bernoulli(double a, double b);

double poisson_log_pmf(double lambda, std::int64_t k);
double poisson_pmf(double lambda, std::int64_t k);

// Poisson tail functionals, evaluated by exact pmf summation. The upward sums
// stop once the remaining tail mass is below 1e-14 relative to the partial
// sum (the terms decay geometrically past the mode, so the bound is rigorous).

/// Pr{Y >= m}
double poisson_tail(double lambda, std::int64_t m);
/// E[(Y - m)^+]
double poisson_expected_excess(double lambda, std::int64_t m);
/// E[Y | Y >= m]
double poisson_conditional_mean(double lambda, std::int64_t m);

/// Chernoff bound e^{-mu h(1 + eps)} on Pr{X >= (1 + eps) mu}, X ~ Poisson(mu).
double poisson_chernoff_bound(double mu, double eps);

/// Bound (1/sqrt(2 pi)) m (gamma e^{1 - gamma})^m on E[(Y - m)^+] for
/// Y ~ Poisson(gamma m), m >= 1, gamma in (0, 1).
double expected_unmatched_bound(std::int64_t m, double gamma);

}  // namespace cachematch
