#include "zetagram/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "zetagram/errors.hpp"
#include "zetagram/gram.hpp"

namespace zetagram {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 6.283185307179586476925286766559005768;

void require_window(double T, double U, const char* who) {
  if (!(T > 1.0) || !std::isfinite(T))
    throw validation_error(std::string(who) + ": T must exceed 1");
  if (!(U >= 0.0) || !std::isfinite(U))
    throw validation_error(std::string(who) + ": U must be nonnegative and finite");
}
}  // namespace

double u_of(double T, const PsiFunction& psi) {
  if (!(T > 1.0) || !std::isfinite(T))
    throw validation_error("u_of: T must exceed 1");
  const double lnT = std::log(T);
  return std::pow(T, 5.0 / 12.0) * psi(T) * lnT * lnT * lnT;
}

double predicted_gram_count(double T, double U) {
  require_window(T, U, "predicted_gram_count");
  return U * std::log(T) / kPi;
}

double predicted_gram_count_alt(double T, double U) {
  require_window(T, U, "predicted_gram_count_alt");
  if (!(T > kTwoPi))
    throw validation_error("predicted_gram_count_alt: T must exceed 2pi");
  return U * std::log(T / kTwoPi) / kPi;
}

long long exact_gram_count(double T, double U, double tau) {
  return index_range(T, U, tau).count;
}

double predicted_zero_count(double T, double U) {
  require_window(T, U, "predicted_zero_count");
  return U * std::log(T) / kTwoPi;
}

double predicted_zero_count_alt(double T, double U) {
  require_window(T, U, "predicted_zero_count_alt");
  if (!(T > kTwoPi))
    throw validation_error("predicted_zero_count_alt: T must exceed 2pi");
  return U * std::log(T / kTwoPi) / kTwoPi;
}

H1Window h1_window(double T, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.1))
    throw std::domain_error("h1_window: epsilon must lie in (0, 1/10]");
  if (!(T >= 1e3) || !std::isfinite(T))
    throw validation_error("h1_window: T must be >= 1e3");
  H1Window w;
  w.epsilon = epsilon;
  w.a1 = 10.0 / (kPi * epsilon);
  w.a2 = w.a1 * std::sqrt(2.0 / kPi);
  w.p0 = std::sqrt(T / kTwoPi);
  const double ln_p0 = std::log(w.p0);
  w.xi = std::pow(w.p0, epsilon / 5.0);
  const double ln_xi = std::log(w.xi);
  w.h1_lo = w.a1;
  w.h1_hi = w.a2 * std::sqrt(ln_p0);
  w.len_lo = 1.0 / ln_xi;
  w.len_hi = 1.0 / std::sqrt(ln_xi);
  w.len_window_proper = w.len_lo <= w.len_hi;
  const double om = omega(T);
  w.bracket_lo = w.h1_lo * om;
  w.bracket_hi = w.h1_hi * om;
  return w;
}

double karatsuba_exponent_u(double T, double eps) {
  if (!(eps > 0.0 && eps <= 0.1))
    throw std::domain_error("karatsuba_exponent_u: eps must lie in (0, 1/10]");
  if (!(T > 1.0) || !std::isfinite(T))
    throw validation_error("karatsuba_exponent_u: T must exceed 1");
  return std::pow(T, 27.0 / 82.0 + eps);
}

Verdict compare(double measured, double predicted, double rel_tolerance,
                const std::string& note) {
  if (!(rel_tolerance >= 0.0))
    throw validation_error("compare: tolerance must be nonnegative");
  Verdict v;
  v.measured = measured;
  v.predicted = predicted;
  v.tolerance = rel_tolerance;
  v.note = note;
  v.abs_error = std::fabs(measured - predicted);
  if (predicted != 0.0) {
    v.ratio = measured / predicted;
    v.rel_error = v.abs_error / std::fabs(predicted);
    v.within = v.rel_error <= rel_tolerance;
  } else if (measured == 0.0) {
    v.ratio = 1.0;
    v.rel_error = 0.0;
    v.within = true;
  } else {
    v.ratio = std::numeric_limits<double>::infinity();
    v.rel_error = std::numeric_limits<double>::infinity();
    v.within = false;
    if (!v.note.empty()) v.note += "; ";
    v.note += "infinite ratio: nonzero measurement against a zero prediction";
  }
  return v;
}

}  // namespace zetagram
