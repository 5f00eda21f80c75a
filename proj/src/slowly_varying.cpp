#include "pinlab/slowly_varying.hpp"

#include <cmath>
#include <stdexcept>

namespace pinlab {

double SlowlyVaryingSpec::operator()(double x) const {
  switch (kind) {
    case Kind::Constant:
      return c;
    case Kind::LogPower:
      return c * std::pow(std::log(x + 2.718281828459045235360287), p);
  }
  return c;
}

void SlowlyVaryingSpec::validate() const {
  if (!(c > 0.0)) throw std::invalid_argument("SlowlyVaryingSpec: c must be > 0");
  if (!std::isfinite(c) || !std::isfinite(p))
    throw std::invalid_argument("SlowlyVaryingSpec: parameters must be finite");
}

namespace {

// Simpson rule on a uniform grid in t after the substitution x = a*e^t.
// The transformed integrand g(t) = f(a e^t) * a e^t decays like
// e^{-rate*t} (times the exp(-F x) factor), so we cut off once
// rate*t + F*a*(e^t - 1) exceeds ~70.
double integrate_log_substitution(const std::function<double(double)>& xf, double a, double rate,
                                  double F) {
  double t_max = 1.0;
  auto exhausted = [&](double t) { return rate * t + F * a * std::expm1(t) > 70.0; };
  while (!exhausted(t_max)) {
    t_max *= 2.0;
    if (t_max > 1e9) break;  // rate ~ 0 and F == 0: divergent-like, caller's problem
  }
  const int n = 8192;  // even
  const double h = t_max / n;
  auto g = [&](double t) {
    const double x = a * std::exp(t);
    return xf(x) * x;
  };
  double s = g(0.0) + g(t_max);
  for (int i = 1; i < n; ++i) s += g(i * h) * ((i % 2) ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

double tail_integral(const SlowlyVaryingSpec& L, double alpha, double a, double F) {
  auto f = [&](double x) { return L(x) * std::pow(x, -1.0 - alpha) * std::exp(-F * x); };
  return integrate_log_substitution(f, a, alpha, F);
}

double tail_integral_of(const std::function<double(double)>& f, double a, double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("tail_integral_of: rate must be > 0");
  return integrate_log_substitution(f, a, rate, 0.0);
}

}  // namespace pinlab
