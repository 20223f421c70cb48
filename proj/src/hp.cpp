#include "zetagram/hp.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <cmath>
#include <mutex>
#include <vector>

#include "zetagram/errors.hpp"

namespace zetagram::hp {

namespace {

// Highest 2k index the Euler-Maclaurin tail may reach before it is declared
// non-convergent; the lngamma series uses 46 of these.
constexpr unsigned kMaxBernoulli = 220;

const std::vector<real>& bernoulli_table() {
  static std::vector<real> table;
  static std::once_flag flag;
  std::call_once(flag, [] {
    table.resize(kMaxBernoulli + 1);
    boost::math::bernoulli_b2n<real>(0, kMaxBernoulli + 1, table.begin());
  });
  return table;
}

real factorial_real(unsigned n) {
  real f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

real pi() {
  static const real value = boost::math::constants::pi<real>();
  return value;
}

real log2pi() {
  static const real value = boost::multiprecision::log(2 * pi());
  return value;
}

complex add(const complex& a, const complex& b) { return {a.re + b.re, a.im + b.im}; }
complex sub(const complex& a, const complex& b) { return {a.re - b.re, a.im - b.im}; }

complex mul(const complex& a, const complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

complex div(const complex& a, const complex& b) {
  const real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

complex log(const complex& a) {
  return {boost::multiprecision::log(sqrt(a.re * a.re + a.im * a.im)),
          atan2(a.im, a.re)};
}

complex exp(const complex& a) {
  const real e = boost::multiprecision::exp(a.re);
  return {e * cos(a.im), e * sin(a.im)};
}

real abs(const complex& a) { return sqrt(a.re * a.re + a.im * a.im); }

complex pow(const real& x, const complex& s) {
  if (!(x > 0)) throw validation_error("hp::pow: base must be positive");
  const real lx = boost::multiprecision::log(x);
  return exp(complex{s.re * lx, s.im * lx});
}

real bernoulli_2k(unsigned k) {
  const auto& table = bernoulli_table();
  if (k >= table.size()) throw validation_error("hp::bernoulli_2k: index beyond table");
  return table[k];
}

complex lngamma(const complex& z) {
  if (!(z.re > 0)) throw validation_error("hp::lngamma: requires Re z > 0");
  constexpr int kLiftTo = 80;
  constexpr unsigned kTerms = 46;

  // Lift: lnGamma(z) = lnGamma(z + n) - sum_{k<n} ln(z + k).
  complex acc{0, 0};
  complex zz = z;
  while (zz.re < kLiftTo) {
    acc = add(acc, log(zz));
    zz.re += 1;
  }

  // Stirling at the lifted argument.
  const complex lz = log(zz);
  complex res = mul(complex{zz.re - real(1) / 2, zz.im}, lz);
  res = sub(res, zz);
  res.re += log2pi() / 2;

  const complex one{1, 0};
  const complex zinv2 = div(one, mul(zz, zz));
  complex zpow = div(one, zz);  // zz^{-(2k-1)} for k = 1
  for (unsigned k = 1; k <= kTerms; ++k) {
    const real coef = bernoulli_2k(k) / (real(2 * k) * real(2 * k - 1));
    res = add(res, complex{coef * zpow.re, coef * zpow.im});
    zpow = mul(zpow, zinv2);
  }
  return sub(res, acc);
}

real theta(const real& t) {
  const complex lg = lngamma(complex{real(1) / 4, t / 2});
  return lg.im - t / 2 * boost::multiprecision::log(pi());
}

complex zeta_half_line(const real& t, int digits) {
  if (digits < 1 || digits > 72)
    throw validation_error("hp::zeta_half_line: digits must be in [1, 72]");
  const complex s{real(1) / 2, t};
  const real t_abs = t < 0 ? real(-t) : t;
  const long long N =
      static_cast<long long>(ceil(real("0.52") * t_abs + 90 + real("1.3") * digits));

  complex acc{0, 0};
  for (long long n = 1; n < N; ++n) {
    // n^{-s} = exp(-s ln n): real exp gives n^{-1/2}, sin/cos give the phase.
    const real ln_n = boost::multiprecision::log(real(n));
    const real mag = boost::multiprecision::exp(-s.re * ln_n);
    const real phase = -s.im * ln_n;
    acc.re += mag * cos(phase);
    acc.im += mag * sin(phase);
  }

  const real Nf(N);
  const complex s_minus_1{s.re - 1, s.im};
  acc = add(acc, div(pow(Nf, complex{-s_minus_1.re, -s_minus_1.im}), s_minus_1));
  const complex ns = pow(Nf, complex{-s.re, -s.im});
  acc.re += ns.re / 2;
  acc.im += ns.im / 2;

  // Bernoulli tail: B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}.
  complex poch = s;                              // (s)_1
  complex npow = mul(ns, complex{Nf, 0});        // N^{-s+1}
  const real n2 = real(1) / (Nf * Nf);
  const real tol = boost::multiprecision::pow(real(10), -(digits + 12));
  real prev;
  bool have_prev = false;
  for (unsigned k = 1; k <= kMaxBernoulli; ++k) {
    npow = mul(npow, complex{n2, 0});  // N^{-s-2k+1}
    const real coef = bernoulli_2k(k) / factorial_real(2 * k);
    const complex term = mul(mul(complex{coef, 0}, poch), npow);
    acc = add(acc, term);
    const real mag = abs(term);
    if (mag < tol) return acc;
    if (have_prev && k > 4 && mag > prev * 2)
      throw numerical_error("hp::zeta_half_line: Euler-Maclaurin tail diverged");
    prev = mag;
    have_prev = true;
    poch = mul(poch, mul(complex{s.re + real(2 * k - 1), s.im},
                         complex{s.re + real(2 * k), s.im}));
  }
  throw numerical_error("hp::zeta_half_line: Euler-Maclaurin tail failed to converge");
}

ZValue z_value(const real& t, int digits) {
  const complex zet = zeta_half_line(t, digits);
  const real th = theta(t);
  const complex rot{cos(th), sin(th)};
  const complex z = mul(rot, zet);
  return ZValue{z.re, z.im};
}

}  // namespace zetagram::hp
