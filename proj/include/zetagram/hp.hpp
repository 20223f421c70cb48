#pragma once

// High-precision kernel: a fixed 80-decimal-digit MPFR type, a minimal
// complex layer over it, lifted-Stirling complex log-gamma, Euler-Maclaurin
// zeta on the critical line, and the rotated real Z value. This is the slow,
// trusted route; the binary64 Riemann-Siegel engine in hardy_z.hpp is the
// fast route, and the two are compared against each other in the tests.

#include <boost/multiprecision/mpfr.hpp>

namespace zetagram::hp {

using real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80>,
                                            boost::multiprecision::et_off>;

struct complex {
  real re, im;
};

real pi();
real log2pi();

complex add(const complex& a, const complex& b);
complex sub(const complex& a, const complex& b);
complex mul(const complex& a, const complex& b);
complex div(const complex& a, const complex& b);
complex log(const complex& a);
complex exp(const complex& a);
real abs(const complex& a);

// x^s for real x > 0.
complex pow(const real& x, const complex& s);

// B_{2k}, cached; safe under concurrent first use.
real bernoulli_2k(unsigned k);

// log Gamma(z) for Re z > 0: recurrence lifting to Re z >= 80, then the
// Stirling series with 46 Bernoulli terms (residual ~1e-100 at |z| >= 80).
complex lngamma(const complex& z);

// theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) ln pi, exact route.
real theta(const real& t);

// zeta(1/2 + i t) by Euler-Maclaurin: cutoff N ~ 0.52 t + 90 + 1.3 digits,
// Bernoulli tail stopped once terms fall below 10^-(digits+12).
// Throws numerical_error if the tail fails to decay.
complex zeta_half_line(const real& t, int digits);

struct ZValue {
  real value;        // Re of e^{i theta} zeta(1/2 + it)
  real im_residual;  // Im of the same product; a self-check, ~0
};

ZValue z_value(const real& t, int digits);

}  // namespace zetagram::hp
