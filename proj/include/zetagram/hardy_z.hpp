#pragma once

// Hardy's Z on the critical line: Z(t) = e^{i theta(t)} zeta(1/2 + it),
// real for real t, with sign changes exactly at the odd-order zeros.
//
// Two engines:
//   z_rs  - binary64 Riemann-Siegel main sum plus five remainder orders;
//           carries an explicit error envelope (truncation + rounding).
//   z_em  - arbitrary-precision Euler-Maclaurin route (hp.hpp) for oracle
//           work and for t below the Riemann-Siegel floor.
// Signs are certified tri-state: a sample within its own error envelope of
// zero is 'uncertain' and is never counted as a sign change.

#include <vector>

namespace zetagram {

enum class Sign { negative, uncertain, positive };

struct SignSample {
  double t;
  double value;
  double err;  // certified |computed - Z(t)| envelope
  Sign sign;
};

struct ZrsValue {
  double value;
  double err;
};

// A certified sign change: Z has opposite certain signs at lo and hi.
// root is a polished interior estimate, refinement_width = hi - lo.
struct ZeroBracket {
  double lo;
  double hi;
  double root;
  double refinement_width;
};

struct ScanStats {
  std::vector<ZeroBracket> brackets;
  long long uncertain_unresolved = 0;  // probe pairs still uncertain at full depth
  long long samples = 0;
};

struct ScanOptions {
  int workers = 1;
  bool refine = true;  // censuses that only count can skip bisection
};

// Riemann-Siegel engine. pre: t >= 200 (below, use z_em).
// err <= 1e-3 (t/2pi)^{-11/4} + rounding envelope; <= ~1e-4 through t = 1e10.
// Phase arithmetic switches to extended precision at t >= 1e8.
ZrsValue z_rs(double t);

// Euler-Maclaurin engine. pre: 0 < t <= 1e6, 15 <= precision_digits <= 60.
// The value is computed at the requested precision and rounded once to
// binary64; the rotated imaginary part is verified below 10^-precision_digits.
double z_em(double t, int precision_digits);

// Routed sign: z_rs for t >= 200, else z_em at 20 digits.
SignSample sign_at(double t);

// Certified odd-order zero brackets in [lo, hi], scanning the left-anchored
// lattice lo + j*scan_step (pairs wholly inside the interval), with adaptive
// halving (depth <= 4) around uncertain samples and bisection refinement to
// width <= 1e-9 * max(1, lo). pre: 200 <= lo < hi, 0 < scan_step <= omega(lo)/2.
// Brackets are disjoint, ordered, deterministic for any worker count.
std::vector<ZeroBracket> zeros_in(double lo, double hi, double scan_step,
                                  int workers = 1);

// Same sweep with the uncertainty tally exposed (and optional refinement).
ScanStats scan_zeros(double lo, double hi, double scan_step,
                     const ScanOptions& opt = {});

}  // namespace zetagram
