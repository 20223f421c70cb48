#include "zetagram/theta.hpp"

#include <algorithm>
#include <cmath>

#include "zetagram/errors.hpp"

namespace zetagram {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 6.283185307179586476925286766559005768;

void require_positive_finite(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw validation_error(std::string(who) + ": t must be positive and finite");
}

}  // namespace

double theta1(double t) {
  require_positive_finite(t, "theta1");
  return 0.5 * t * (std::log(t / kTwoPi) - 1.0) - kPi / 8.0;
}

double theta1_derivative(double t) {
  require_positive_finite(t, "theta1_derivative");
  return 0.5 * std::log(t / kTwoPi);
}

double theta_full(double t) {
  if (!(t >= 10.0) || !std::isfinite(t))
    throw validation_error("theta_full: t must be >= 10");
  const double t2 = t * t;
  const double correction =
      1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t2) + 31.0 / (80640.0 * t * t2 * t2);
  return theta1(t) + correction;
}

double theta_full_error_bound(double t) {
  if (!(t >= 10.0) || !std::isfinite(t))
    throw validation_error("theta_full_error_bound: t must be >= 10");
  const double t2 = t * t;
  const double t7 = t2 * t2 * t2 * t;
  return 2.0 * 127.0 / (430080.0 * t7);
}

double theta1_inverse(double y) {
  if (!std::isfinite(y)) throw validation_error("theta1_inverse: y must be finite");
  const double y_floor = theta1(10.0);
  if (y < y_floor)
    throw validation_error("theta1_inverse: y below theta1(10), outside the monotone branch");

  // Seed: with x = t/2pi the equation is x(ln x - 1) = w, solved by
  // x = exp(1 + W(w/e)); a short Newton loop on v e^v = w/e is enough
  // because the main solve below is safeguarded anyway.
  const double w = (y + kPi / 8.0) / kPi;
  const double r = w / 2.718281828459045235360287471352662498;
  double v;
  if (r > 2.0) {
    v = std::log(r) - std::log(std::log(r));
  } else {
    v = std::log1p(std::max(r, -0.36));
  }
  for (int i = 0; i < 24; ++i) {
    const double ev = std::exp(v);
    const double f = v * ev - r;
    const double fp = ev * (1.0 + v);
    if (fp == 0.0) break;
    const double dv = f / fp;
    v -= dv;
    if (std::fabs(dv) <= 1e-14 * (1.0 + std::fabs(v))) break;
  }
  double t = kTwoPi * std::exp(1.0 + v);
  if (!(t >= 10.0) || !std::isfinite(t)) t = 10.0;

  // Bracket [lo, hi] with theta1(lo) <= y <= theta1(hi); theta1 is strictly
  // increasing on t >= 10.
  double lo = 10.0;
  double hi = std::max(t, 20.0);
  while (theta1(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (!(hi < 1e300)) throw numerical_error("theta1_inverse: bracket expansion overflow");
  }
  if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);

  const double accept = 1e-12 * std::max(1.0, std::fabs(y));
  const double target = 0.25 * accept;
  for (int iter = 0; iter < 64; ++iter) {
    const double f = theta1(t) - y;
    if (std::fabs(f) <= target) return t;
    if (f > 0.0) hi = t;
    else lo = t;
    const double fp = theta1_derivative(t);
    double tn = (fp > 0.0) ? t - f / fp : 0.5 * (lo + hi);
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (tn == t) {
      // Stuck at floating-point resolution; the residual decides.
      if (std::fabs(f) <= accept) return t;
      tn = std::nextafter(t, f > 0.0 ? lo : hi);
    }
    t = tn;
  }
  if (std::fabs(theta1(t) - y) <= accept) return t;
  throw numerical_error("theta1_inverse: Newton failed to converge in 64 iterations");
}

ThetaValue theta_value(double t, ThetaEngine engine) {
  if (engine == ThetaEngine::truncated) return ThetaValue{t, theta1(t), engine};
  return ThetaValue{t, theta_full(t), engine};
}

}  // namespace zetagram
