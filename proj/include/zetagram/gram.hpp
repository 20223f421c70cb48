#pragma once

// Translated Gram grid. The grid point g_nu(tau) solves
//
//   theta1(g_nu(tau)) = (pi/2) nu + tau/2,   tau in [-pi, pi],
//
// so consecutive indices are ~omega(T) = pi/ln(T/2pi) apart (half the
// classical Gram spacing). The tau window spans a full index step on each
// side, so translates stitch two indices apart: g_nu(pi) = g_{nu+1}(0)
// = g_{nu+2}(-pi), exactly in bits here because the solver target is the
// canonical (pi/2)(nu + tau/pi) and tau/pi is exactly +-1 at the endpoints.

#include <cstdint>
#include <vector>

namespace zetagram {

struct GramPoint {
  long long nu;
  double tau;
  double t;         // the solved abscissa
  double residual;  // theta1(t) - ((pi/2) nu + tau/2)
};

// Gram indices whose points lie inside [T, T+U].
// count is the number of such points (0 when the window is empty);
// indices run nu_first .. nu_first + count - 1.
struct IndexRange {
  long long nu_first;
  long long count;
  double tau;
};

// Sampling lattice g_nu(tau) + k*omega, k = 0..M, attached to a window.
struct GridSpec {
  double T;
  double U;
  double omega;  // pi / ln(T/2pi), always derived from T
  long long M;
  double tau;

  // Validates ranges; in paper mode additionally requires
  // ln T < M < T^{1/3} ln T, otherwise only warns.
  static GridSpec make(double T, double U, long long M, double tau,
                       bool paper_mode = false);
};

// Local spacing model for the window anchored at its first grid point:
//   predict(p) = anchor + omega_bar0 * p - omega_bar0 * D(p),
//   D(p) = sum_{q=1..p} (1 - (1-Q)^q),  Q = pi / (T ln^2(T/2pi)),
//   omega_bar0 = pi/ln(T/2pi) - (pi^2/2)/(T ln^3(T/2pi))
//                - pi (anchor - T)/(T ln^2(T/2pi)).
struct SpacingModel {
  double T;
  double tau;
  long long nu_first;
  long long n1;  // count - 1: highest index offset inside the window
  double anchor_t;
  double omega_bar0;
  double Q;
};

// pre: nu >= 1, tau in [-pi, pi], and (pi/2) nu + tau/2 >= theta1(10).
// Deterministic; certifies |residual| <= 1e-10 * max(1, (pi/2) nu).
GramPoint gram_point(long long nu, double tau);

// pre: T >= 1e3, U > 0 finite, tau in [-pi, pi]. Exact: boundary indices are
// verified by direct evaluation, no off-by-one from the inversion formula.
IndexRange index_range(double T, double U, double tau);

// pre: the window holds at least 2 grid points.
SpacingModel make_spacing_model(double T, double U, double tau);

// Closed form of D(p): p + (1-Q) * expm1(p * log1p(-Q)) / Q.
double spacing_defect(long long p, double Q);

// Predicts gram_point(nu_first + p + 1, tau).t. pre: 0 <= p <= n1 - 1.
double spacing_predict(const SpacingModel& model, long long p);

// Mean grid step at height T: pi / ln(T/2pi). pre: T > 2pi * 1.01.
double omega(double T);

// The lattice [g.t + k*spec.omega : k = 0..M]. pre: g.t inside the window.
std::vector<double> grid_samples(const GramPoint& g, const GridSpec& spec);

}  // namespace zetagram
