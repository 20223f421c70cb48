#include "zetagram/psi.hpp"

#include <cmath>
#include <cstdio>

#include "zetagram/errors.hpp"

namespace zetagram {

namespace {

constexpr double kEE = 15.15426224147926418976043027262991190;  // e^e

std::string short_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

PsiFunction PsiFunction::lnlnln(PsiRole role) {
  return PsiFunction(PsiKind::lnlnln, role);
}

PsiFunction PsiFunction::powlog(double a, double c, PsiRole role) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw validation_error("PsiFunction::powlog: c must be positive and finite");
  if (!(a >= 0.0) || !std::isfinite(a))
    throw validation_error("PsiFunction::powlog: a must be >= 0 and finite");
  PsiFunction f(PsiKind::powlog, role);
  f.a_ = a;
  f.c_ = c;
  return f;
}

PsiFunction PsiFunction::constant(double c, PsiRole role) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw validation_error("PsiFunction::constant: c must be positive and finite");
  PsiFunction f(PsiKind::constant, role);
  f.c_ = c;
  return f;
}

PsiFunction PsiFunction::power_of(const PsiFunction& base, double exponent, PsiRole role) {
  if (!(exponent >= 0.0) || !std::isfinite(exponent))
    throw validation_error("PsiFunction::power_of: exponent must be >= 0 and finite");
  PsiFunction f(PsiKind::power_of, role);
  f.a_ = exponent;
  f.inner_ = std::make_shared<PsiFunction>(base);
  return f;
}

double PsiFunction::operator()(double t) const {
  if (!std::isfinite(t)) throw validation_error("PsiFunction: t must be finite");
  double v = 0.0;
  switch (kind_) {
    case PsiKind::lnlnln:
      if (!(t > kEE))
        throw validation_error("PsiFunction: lnlnln needs t > e^e for positivity");
      v = std::log(std::log(std::log(t)));
      break;
    case PsiKind::powlog:
      if (!(t > 1.0))
        throw validation_error("PsiFunction: powlog needs t > 1");
      v = c_ * std::pow(std::log(t), a_);
      break;
    case PsiKind::constant:
      v = c_;
      break;
    case PsiKind::power_of:
      v = std::pow((*inner_)(t), a_);
      break;
  }
  return scale_ * v;
}

std::string PsiFunction::describe() const {
  std::string body;
  switch (kind_) {
    case PsiKind::lnlnln:
      body = "lnlnln(t)";
      break;
    case PsiKind::powlog:
      body = short_num(c_) + "*ln(t)^" + short_num(a_);
      break;
    case PsiKind::constant:
      body = "const:" + short_num(c_);
      break;
    case PsiKind::power_of:
      body = "(" + inner_->describe() + ")^" + short_num(a_);
      break;
  }
  if (scale_ != 1.0) body = short_num(scale_) + "*" + body;
  return body;
}

PsiFunction PsiFunction::scaled(double factor) const {
  if (!(factor >= 0.0) || !std::isfinite(factor))
    throw validation_error("PsiFunction::scaled: factor must be nonnegative and finite");
  PsiFunction f = *this;
  f.scale_ *= factor;
  return f;
}

void PsiFunction::check_window(double t_lo, double t_hi, bool paper_mode) const {
  if (!(t_lo > 1.0) || !(t_hi > t_lo) || !std::isfinite(t_hi))
    throw validation_error("PsiFunction::check_window: need 1 < t_lo < t_hi finite");
  const double v_lo = (*this)(t_lo);
  const double v_hi = (*this)(t_hi);
  if (!(v_lo > 0.0))
    throw validation_error("PsiFunction::check_window: not positive at the left endpoint: " +
                           describe());
  // All supported kinds are nondecreasing for t > 1; this is a construction
  // sanity check at the endpoints.
  if (v_hi + 1e-12 * std::fabs(v_lo) < v_lo)
    throw validation_error("PsiFunction::check_window: decreasing on the window: " + describe());
  if (role_ == PsiRole::psi) {
    const bool lo_ok = v_lo <= std::sqrt(std::log(t_lo));
    const bool hi_ok = v_hi <= std::sqrt(std::log(t_hi));
    if (!lo_ok || !hi_ok) {
      const std::string msg =
          "PsiFunction::check_window: psi exceeds sqrt(ln t) on the window: " + describe();
      if (paper_mode) throw validation_error(msg);
      log_warning(msg);
    }
  }
}

}  // namespace zetagram
