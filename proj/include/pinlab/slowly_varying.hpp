#pragma once

#include <functional>

namespace pinlab {

/// Slowly varying modulation of the power-law inter-arrival tail.
/// Two families: L(n) = c, and L(n) = c * (log(n+e))^p.
struct SlowlyVaryingSpec {
  enum class Kind { Constant, LogPower };

  Kind kind = Kind::Constant;
  double c = 1.0;
  double p = 0.0;

  static SlowlyVaryingSpec constant(double c = 1.0) { return {Kind::Constant, c, 0.0}; }
  static SlowlyVaryingSpec log_power(double c, double p) { return {Kind::LogPower, c, p}; }

  double operator()(double x) const;
  void validate() const;  // throws std::invalid_argument
  bool operator==(const SlowlyVaryingSpec&) const = default;
};

/// Integral of L(x) * x^{-1-alpha} * exp(-F*x) over [a, infinity), a >= 1, F >= 0.
/// Log-substitution Simpson rule; relative accuracy ~1e-9.
double tail_integral(const SlowlyVaryingSpec& L, double alpha, double a, double F = 0.0);

/// Integral of f over [a, infinity) for positive f with f(x)*x decaying like
/// x^{-rate} times a slowly varying factor, rate > 0.
double tail_integral_of(const std::function<double(double)>& f, double a, double rate);

}  // namespace pinlab
