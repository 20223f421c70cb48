#pragma once

// Main-term predictions the census counts are measured against, the window
// length U(T) those theorems assume, and the admissible band for the good
// segment budget H1. Everything here is closed-form double arithmetic; the
// heavy lifting lives in the census module.

#include <string>

#include "zetagram/psi.hpp"

namespace zetagram {

// U(T) = T^{5/12} psi(T) ln^3 T, the default census window length.
double u_of(double T, const PsiFunction& psi);

// Number of translated Gram points in [T, T+U]:
//   main term (U / pi) ln T, alternate (U / pi) ln(T / 2pi).
// The alternate is the refined form 1/omega(T) per unit length; the main
// term is the convention the asymptotic count statements use.
double predicted_gram_count(double T, double U);
double predicted_gram_count_alt(double T, double U);

// Exact count via the theta_1 phase: floor/ceil bracketing of
// (2/pi)(theta_1(t) - tau/2) at both endpoints. Matches index_range().
long long exact_gram_count(double T, double U, double tau);

// Zero count for [T, T+U]: main term (1/2pi) U ln T, alternate
// (1/2pi) U ln(T/2pi). The alternate matches the local mean spacing and is
// the one tight desk-scale window comparisons should use.
double predicted_zero_count(double T, double U);
double predicted_zero_count_alt(double T, double U);

// Admissible band for the good-segment budget H1 at window anchor T:
//   a1 = 10 / (pi epsilon),  a2 = a1 sqrt(2/pi),  P0 = sqrt(T/2pi),
//   xi = P0^{epsilon/5};  H1 window is [a1, a2 sqrt(ln P0)] and the
//   segment-length window is [1/ln xi, 1/sqrt(ln xi)] in omega units.
// a1 * omega(T) == 1 / ln xi exactly in this parametrization. At desk
// scale ln xi < 1 often inverts the length window; callers report both
// windows and never assert the inverted one.
struct H1Window {
  double epsilon = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double p0 = 0.0;
  double xi = 0.0;
  double h1_lo = 0.0;       // a1
  double h1_hi = 0.0;       // a2 sqrt(ln P0)
  double len_lo = 0.0;      // 1 / ln xi
  double len_hi = 0.0;      // 1 / sqrt(ln xi)
  bool len_window_proper = false;  // len_lo <= len_hi
  // Bracket diagnostic: omega-unit lengths of the H1 endpoints, flagged so
  // reports can show how the two windows sit against each other.
  double bracket_lo = 0.0;  // h1_lo * omega(T)
  double bracket_hi = 0.0;  // h1_hi * omega(T)
};

H1Window h1_window(double T, double epsilon);

// Shortest window length with a guaranteed zero under the strongest known
// unconditional exponent: U_K(T, eps) = T^{27/82 + eps}.
// pre: eps in (0, 1/10], else std::domain_error.
double karatsuba_exponent_u(double T, double eps);

struct Verdict {
  double measured = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;       // measured / predicted
  double abs_error = 0.0;
  double rel_error = 0.0;   // |measured - predicted| / |predicted|
  bool within = false;
  double tolerance = 0.0;   // the relative tolerance that was applied
  std::string note;
};

Verdict compare(double measured, double predicted, double rel_tolerance,
                const std::string& note = {});

}  // namespace zetagram
