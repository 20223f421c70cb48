#include "zetagram/gram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "zetagram/errors.hpp"
#include "zetagram/theta.hpp"

namespace zetagram {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kPiHalf = 1.570796326794896619231321691639751442;
constexpr double kTwoPi = 6.283185307179586476925286766559005768;

void require_tau(double tau, const char* who) {
  if (!(tau >= -kPi && tau <= kPi))
    throw validation_error(std::string(who) + ": tau must lie in [-pi, pi]");
}

// Solver target (pi/2) nu + tau/2, computed as (pi/2)(nu + tau/pi) so that
// tau = +-pi contributes exactly +-1 to the index and the stitching identity
// g_nu(pi) = g_{nu+2}(-pi) holds bit for bit.
double gram_target(long long nu, double tau) {
  return kPiHalf * (static_cast<double>(nu) + tau / kPi);
}

}  // namespace

double omega(double T) {
  if (!(T > kTwoPi * 1.01) || !std::isfinite(T))
    throw std::domain_error("omega: T must exceed 2*pi*1.01");
  return kPi / std::log(T / kTwoPi);
}

GramPoint gram_point(long long nu, double tau) {
  if (nu < 1) throw std::domain_error("gram_point: nu must be >= 1");
  require_tau(tau, "gram_point");
  const double y = gram_target(nu, tau);
  if (!(y >= theta1(10.0)))
    throw std::domain_error("gram_point: target phase below theta1(10), off the monotone branch");
  const double t = theta1_inverse(y);
  const double residual = theta1(t) - y;
  const double cert = 1e-10 * std::max(1.0, kPiHalf * static_cast<double>(nu));
  if (!(std::fabs(residual) <= cert))
    throw numerical_error("gram_point: residual certificate violated");
  return GramPoint{nu, tau, t, residual};
}

IndexRange index_range(double T, double U, double tau) {
  if (!(T >= 1e3) || !std::isfinite(T))
    throw validation_error("index_range: T must be >= 1e3");
  if (!(U > 0.0) || !std::isfinite(U))
    throw validation_error("index_range: U must be positive and finite");
  require_tau(tau, "index_range");

  const double y_lo = theta1(T);
  const double y_hi = theta1(T + U);

  // Inversion estimate, then boundary verification by direct evaluation.
  long long nu_first = static_cast<long long>(std::ceil((2.0 * y_lo - tau) / kPi)) - 2;
  if (nu_first < 1) nu_first = 1;
  int guard = 0;
  while (nu_first > 1 && gram_point(nu_first, tau).t >= T) {
    --nu_first;
    if (++guard > 64) throw numerical_error("index_range: lower boundary walk diverged");
  }
  guard = 0;
  while (gram_point(nu_first, tau).t < T) {
    ++nu_first;
    if (++guard > 64) throw numerical_error("index_range: lower boundary walk diverged");
  }
  // Now gram_point(nu_first).t >= T and (nu_first == 1 or predecessor < T).

  long long nu_last = static_cast<long long>(std::floor((2.0 * y_hi - tau) / kPi)) + 2;
  if (nu_last < 1) nu_last = 1;
  guard = 0;
  while (gram_point(nu_last, tau).t > T + U) {
    --nu_last;
    if (nu_last < 1) break;
    if (++guard > 64) throw numerical_error("index_range: upper boundary walk diverged");
  }
  guard = 0;
  while (gram_point(nu_last + 1, tau).t <= T + U) {
    ++nu_last;
    if (++guard > 64) throw numerical_error("index_range: upper boundary walk diverged");
  }

  const long long count = nu_last >= nu_first ? nu_last - nu_first + 1 : 0;
  return IndexRange{nu_first, count, tau};
}

GridSpec GridSpec::make(double T, double U, long long M, double tau, bool paper_mode) {
  if (!(T >= 1e3) || !std::isfinite(T))
    throw validation_error("GridSpec: T must be >= 1e3");
  if (!(U > 0.0) || !std::isfinite(U))
    throw validation_error("GridSpec: U must be positive and finite");
  if (M < 0) throw validation_error("GridSpec: M must be >= 0");
  require_tau(tau, "GridSpec");
  const double w = zetagram::omega(T);
  const double ln_t = std::log(T);
  const double m_ceiling = std::cbrt(T) * ln_t;
  if (!(static_cast<double>(M) > ln_t && static_cast<double>(M) < m_ceiling)) {
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "GridSpec: M = %lld outside the admissible band (ln T, T^{1/3} ln T) = (%.6g, %.6g)",
                  M, ln_t, m_ceiling);
    if (paper_mode) throw validation_error(buf);
    log_warning(buf);
  }
  return GridSpec{T, U, w, M, tau};
}

SpacingModel make_spacing_model(double T, double U, double tau) {
  const IndexRange range = index_range(T, U, tau);
  if (range.count < 2)
    throw validation_error("make_spacing_model: window holds fewer than 2 grid points");
  const double anchor = gram_point(range.nu_first, tau).t;
  const double L = std::log(T / kTwoPi);
  const double omega_bar0 = kPi / L - (kPi * kPi / 2.0) / (T * L * L * L) -
                            kPi * (anchor - T) / (T * L * L);
  const double Q = kPi / (T * L * L);
  return SpacingModel{T, tau, range.nu_first, range.count - 1, anchor, omega_bar0, Q};
}

double spacing_defect(long long p, double Q) {
  if (p < 0) throw std::domain_error("spacing_defect: p must be >= 0");
  if (!(Q > 0.0 && Q < 1.0))
    throw validation_error("spacing_defect: Q must lie in (0, 1)");
  if (p == 0) return 0.0;
  // p - (1-Q)(1-(1-Q)^p)/Q without cancellation for tiny Q.
  return static_cast<double>(p) +
         (1.0 - Q) * std::expm1(static_cast<double>(p) * std::log1p(-Q)) / Q;
}

double spacing_predict(const SpacingModel& model, long long p) {
  if (p < 0 || p > model.n1 - 1)
    throw std::domain_error("spacing_predict: p outside [0, n1-1]");
  return model.anchor_t + model.omega_bar0 * static_cast<double>(p) -
         model.omega_bar0 * spacing_defect(p, model.Q);
}

std::vector<double> grid_samples(const GramPoint& g, const GridSpec& spec) {
  if (g.tau != spec.tau)
    throw validation_error("grid_samples: grid point tau does not match the GridSpec tau");
  if (!(g.t >= spec.T && g.t <= spec.T + spec.U))
    throw validation_error("grid_samples: grid point outside the window");
  std::vector<double> xs;
  xs.reserve(static_cast<size_t>(spec.M) + 1);
  for (long long k = 0; k <= spec.M; ++k)
    xs.push_back(g.t + static_cast<double>(k) * spec.omega);
  return xs;
}

}  // namespace zetagram
