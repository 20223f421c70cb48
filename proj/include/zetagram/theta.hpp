#pragma once

// Riemann-Siegel theta in binary64.
//
//   theta1(t)  = (t/2) ln(t/2pi) - t/2 - pi/8        (leading asymptotic form)
//   theta(t)   = theta1(t) + 1/(48t) + 7/(5760 t^3) + 31/(80640 t^5) + ...
//
// theta1 is the phase that defines the translated Gram grid; the corrected
// form is the phase of the functional equation, accurate enough at t >= 10
// that the next omitted term (~127/(430080 t^7)) is the error envelope.
// theta1 is strictly increasing for t > 2pi with derivative (1/2) ln(t/2pi).

namespace zetagram {

enum class ThetaEngine { truncated, full };

struct ThetaValue {
  double t;
  double value;
  ThetaEngine engine;
};

// Leading form. pre: t positive and finite. Plain evaluation; error is a few
// ulp of the intermediate (t/2)(ln(t/2pi) - 1).
double theta1(double t);

// d/dt theta1 = (1/2) ln(t / 2pi). pre: t positive and finite.
double theta1_derivative(double t);

// Corrected theta. pre: t >= 10 (below the floor the asymptotic correction
// series is not a trustworthy envelope; use the high-precision engine in
// hp.hpp instead).
double theta_full(double t);

// Bound on |theta(t) - theta_full(t)|: twice the first omitted term.
double theta_full_error_bound(double t);

// Solve theta1(t) = y on the monotone branch t >= 10.
// pre: y >= theta1(10). Safeguarded Newton from an asymptotic seed;
// post: |theta1(t) - y| <= 1e-12 * max(1, |y|).
// Throws numerical_error after 64 iterations without convergence.
double theta1_inverse(double y);

ThetaValue theta_value(double t, ThetaEngine engine);

}  // namespace zetagram
