#pragma once

// Slowly growing window functions. Two roles appear throughout the censuses:
// psi sizes the Selberg interval (t, t + psi(t)/ln t) and may diverge;
// psi_bar sizes the per-grid-point interval (g, g + psi_bar(g)) and is tied
// to psi by the finite-scale pairing proxy psi_bar(T+U) / psi(T)^{1/3} <= 0.5.

#include <memory>
#include <string>

namespace zetagram {

enum class PsiKind { lnlnln, powlog, constant, power_of };
enum class PsiRole { psi, psi_bar };

class PsiFunction {
 public:
  // ln ln ln t; needs t > e^e for positivity.
  static PsiFunction lnlnln(PsiRole role);
  // c * (ln t)^a with c > 0, a >= 0.
  static PsiFunction powlog(double a, double c, PsiRole role);
  static PsiFunction constant(double c, PsiRole role);
  // base(t)^exponent, exponent >= 0 (e.g. psi_bar = psi^{1/4}).
  static PsiFunction power_of(const PsiFunction& base, double exponent, PsiRole role);

  double operator()(double t) const;

  PsiKind kind() const { return kind_; }
  PsiRole role() const { return role_; }
  std::string describe() const;

  // factor * this(t); factor >= 0 (0 makes every census interval empty,
  // which the censuses count as a miss). Used by the scale-sweep experiments.
  PsiFunction scaled(double factor) const;

  // Endpoint checks on [t_lo, t_hi]: positivity and monotonicity always
  // throw on failure; the psi <= sqrt(ln t) ceiling (role psi only) throws
  // in paper mode and warns otherwise.
  void check_window(double t_lo, double t_hi, bool paper_mode) const;

 private:
  PsiFunction(PsiKind kind, PsiRole role) : kind_(kind), role_(role) {}
  PsiKind kind_;
  PsiRole role_;
  double a_ = 0.0;
  double c_ = 1.0;
  double scale_ = 1.0;
  std::shared_ptr<const PsiFunction> inner_;
};

}  // namespace zetagram
