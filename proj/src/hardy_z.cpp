#include "zetagram/hardy_z.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "zetagram/errors.hpp"
#include "zetagram/gram.hpp"
#include "zetagram/hp.hpp"
#include "zetagram/parallel.hpp"
#include "zetagram/theta.hpp"

namespace zetagram {

namespace {

#include "rs_coeffs.inc"

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 6.283185307179586476925286766559005768;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

// t at which main-sum phase arithmetic moves to extended precision.
constexpr double kExtendedPhaseFloor = 1e8;

// ln n and n^{-1/2} caches; the main sum length stays below this for
// t <= 2 pi * 65536^2 ~ 2.7e10 and falls back to live evaluation beyond.
constexpr long long kCacheN = 65536;

struct Caches {
  std::vector<double> ln;
  std::vector<double> rsqrt;
  std::vector<long double> lnl;
};

const Caches& caches() {
  static Caches c;
  static std::once_flag flag;
  std::call_once(flag, [] {
    c.ln.resize(kCacheN + 1, 0.0);
    c.rsqrt.resize(kCacheN + 1, 0.0);
    c.lnl.resize(kCacheN + 1, 0.0L);
    for (long long n = 1; n <= kCacheN; ++n) {
      c.ln[n] = std::log(static_cast<double>(n));
      c.rsqrt[n] = 1.0 / std::sqrt(static_cast<double>(n));
      c.lnl[n] = logl(static_cast<long double>(n));
    }
  });
  return c;
}

template <size_t N>
double horner(const double (&c)[N], double u) {
  double s = 0.0;
  for (size_t i = N; i-- > 0;) s = s * u + c[i];
  return s;
}

// theta with the same three correction terms as theta_full, in extended
// precision for the high-t main-sum path.
long double theta_full_ld(long double t) {
  const long double t2 = t * t;
  return 0.5L * t * (logl(t / kTwoPiL) - 1.0L) - kPiL / 8.0L + 1.0L / (48.0L * t) +
         7.0L / (5760.0L * t * t2) + 31.0L / (80640.0L * t * t2 * t2);
}

SignSample make_sample(double t, double value, double err) {
  Sign s = Sign::uncertain;
  if (value > err) s = Sign::positive;
  else if (value < -err) s = Sign::negative;
  return SignSample{t, value, err, s};
}

}  // namespace

ZrsValue z_rs(double t) {
  if (!(t >= 200.0) || !std::isfinite(t))
    throw std::domain_error("z_rs: t must be >= 200 (use z_em below)");
  const Caches& cache = caches();
  const double a = std::sqrt(t / kTwoPi);
  const long long m = static_cast<long long>(std::floor(a));
  const double p = a - static_cast<double>(m);
  const double u = p - 0.5;

  double main_sum;
  double theta_abs;
  if (t < kExtendedPhaseFloor) {
    const double th = theta_full(t);
    double s = 0.0;
    for (long long n = 1; n <= m; ++n) {
      const double ln_n = n <= kCacheN ? cache.ln[n] : std::log(static_cast<double>(n));
      const double rs = n <= kCacheN ? cache.rsqrt[n] : 1.0 / std::sqrt(static_cast<double>(n));
      s += rs * std::cos(th - t * ln_n);
    }
    main_sum = 2.0 * s;
    theta_abs = std::fabs(th);
  } else {
    const long double tl = static_cast<long double>(t);
    const long double th = theta_full_ld(tl);
    long double s = 0.0L;
    for (long long n = 1; n <= m; ++n) {
      const long double ln_n = n <= kCacheN ? cache.lnl[n] : logl(static_cast<long double>(n));
      const double rs = n <= kCacheN ? cache.rsqrt[n] : 1.0 / std::sqrt(static_cast<double>(n));
      s += static_cast<long double>(rs) * cosl(th - tl * ln_n);
    }
    main_sum = static_cast<double>(2.0L * s);
    theta_abs = std::fabs(static_cast<double>(th));
  }

  // Five remainder orders in powers of (2pi/t)^{1/2}, each a polynomial in u.
  const double q = kTwoPi / t;
  const double sq = std::sqrt(q);
  double corr = horner(kRsC4, u);
  corr = corr * sq + horner(kRsC3, u);
  corr = corr * sq + horner(kRsC2, u);
  corr = corr * sq + horner(kRsC1, u);
  corr = corr * sq + horner(kRsC0, u);
  const double parity = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m-1}
  const double value = main_sum + parity * std::pow(q, 0.25) * corr;

  // Envelope: frozen truncation constant (empirical max ~7.7e-5 against the
  // exact engine, kept with a 13x margin) plus phase-rounding growth.
  const double err_trunc = 1e-3 * std::pow(t / kTwoPi, -2.75);
  const double eps = t < kExtendedPhaseFloor ? 1.1102230246251565e-16   // 2^-53
                                             : 5.421010862427522e-20;  // 2^-64
  const double phase_mag = theta_abs + t * std::log(static_cast<double>(m));
  const double err_round =
      16.0 * eps * phase_mag * std::sqrt(static_cast<double>(m)) + 1e-15;
  return ZrsValue{value, err_trunc + err_round};
}

double z_em(double t, int precision_digits) {
  if (!(t > 0.0) || !(t <= 1e6))
    throw std::domain_error("z_em: t must lie in (0, 1e6]");
  if (precision_digits < 15 || precision_digits > 60)
    throw validation_error("z_em: precision_digits must lie in [15, 60]");
  const hp::ZValue zv = hp::z_value(hp::real(t), precision_digits);
  const hp::real bound =
      boost::multiprecision::pow(hp::real(10), -precision_digits);
  const hp::real resid =
      zv.im_residual < 0 ? hp::real(-zv.im_residual) : zv.im_residual;
  if (!(resid < bound))
    throw numerical_error("z_em: rotated imaginary residual exceeds the requested precision");
  return zv.value.convert_to<double>();
}

SignSample sign_at(double t) {
  if (t >= 200.0) {
    const ZrsValue v = z_rs(t);
    return make_sample(t, v.value, v.err);
  }
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::domain_error("sign_at: t must be positive and finite");
  const double v = z_em(t, 20);
  // 20-digit evaluation rounded once to binary64.
  const double err = 1e-15 * std::max(1.0, std::fabs(v));
  return make_sample(t, v, err);
}

namespace {

// Sign changes hiding behind uncertain lattice samples: subdivide the pair
// to a fixed depth; emit certified raw brackets in left-to-right order.
void resolve_pair(const SignSample& a, const SignSample& b, int depth,
                  std::vector<std::pair<SignSample, SignSample>>& out,
                  long long& unresolved, long long& probes) {
  if (a.sign != Sign::uncertain && b.sign != Sign::uncertain) {
    if (a.sign != b.sign) out.emplace_back(a, b);
    return;
  }
  if (depth <= 0) {
    ++unresolved;
    return;
  }
  const double mid = 0.5 * (a.t + b.t);
  if (!(mid > a.t && mid < b.t)) {
    ++unresolved;  // floating-point resolution exhausted
    return;
  }
  ++probes;
  const SignSample m = sign_at(mid);
  resolve_pair(a, m, depth - 1, out, unresolved, probes);
  resolve_pair(m, b, depth - 1, out, unresolved, probes);
}

constexpr int kResolveDepth = 4;

ZeroBracket refine_bracket(SignSample a, SignSample b, double target_width,
                           long long& probes) {
  while (b.t - a.t > target_width) {
    const double mid = 0.5 * (a.t + b.t);
    if (!(mid > a.t && mid < b.t)) break;
    ++probes;
    SignSample m = sign_at(mid);
    if (m.sign == Sign::uncertain) {
      // The midpoint sits inside the zero's own envelope; try short lateral
      // probes, else accept mid as the root.
      const double w = b.t - a.t;
      bool resolved = false;
      for (double frac : {0.125, -0.125, 0.25, -0.25}) {
        const double x = mid + frac * w;
        if (!(x > a.t && x < b.t)) continue;
        ++probes;
        const SignSample side = sign_at(x);
        if (side.sign != Sign::uncertain) {
          m = side;
          resolved = true;
          break;
        }
      }
      if (!resolved) return ZeroBracket{a.t, b.t, mid, b.t - a.t};
    }
    if (m.sign == a.sign) a = m;
    else b = m;
  }
  // Secant polish from the endpoint values.
  double root = 0.5 * (a.t + b.t);
  if (a.value != b.value) {
    double x0 = a.t, f0 = a.value, x1 = b.t, f1 = b.value;
    double cand = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (cand > a.t && cand < b.t) {
      ++probes;
      const SignSample r = sign_at(cand);
      root = cand;
      if (r.sign != Sign::uncertain && r.value != 0.0) {
        if (r.sign == a.sign) {
          x0 = cand;
          f0 = r.value;
        } else {
          x1 = cand;
          f1 = r.value;
        }
        if (f0 != f1) {
          cand = x1 - f1 * (x1 - x0) / (f1 - f0);
          if (cand > a.t && cand < b.t) root = cand;
        }
      }
    }
  }
  return ZeroBracket{a.t, b.t, root, b.t - a.t};
}

long long lattice_size(double lo, double hi, double step) {
  long long n = static_cast<long long>(std::floor((hi - lo) / step)) + 1;
  if (n < 1) n = 1;
  while (n > 1 && lo + static_cast<double>(n - 1) * step > hi) --n;
  while (lo + static_cast<double>(n) * step <= hi) ++n;
  return n;
}

}  // namespace

ScanStats scan_zeros(double lo, double hi, double scan_step, const ScanOptions& opt) {
  if (!(lo >= 200.0) || !(lo < hi) || !std::isfinite(hi))
    throw validation_error("scan_zeros: need 200 <= lo < hi, finite");
  if (!(scan_step > 0.0) || !(scan_step <= omega(lo) / 2.0))
    throw validation_error("scan_zeros: scan_step must lie in (0, omega(lo)/2]");

  const long long n = lattice_size(lo, hi, scan_step);
  if (n > 200000000)
    throw validation_error("scan_zeros: lattice exceeds 2e8 samples; enlarge scan_step");

  std::vector<SignSample> samples(static_cast<size_t>(n));
  parallel_chunks(n, opt.workers, [&](long long, long long c_lo, long long c_hi) {
    for (long long j = c_lo; j < c_hi; ++j)
      samples[static_cast<size_t>(j)] =
          sign_at(lo + static_cast<double>(j) * scan_step);
  });

  ScanStats stats;
  stats.samples = n;

  // Serial pair sweep keeps raw brackets ordered and worker-independent.
  std::vector<std::pair<SignSample, SignSample>> raw;
  for (long long j = 0; j + 1 < n; ++j) {
    const SignSample& a = samples[static_cast<size_t>(j)];
    const SignSample& b = samples[static_cast<size_t>(j + 1)];
    if (a.sign != Sign::uncertain && b.sign != Sign::uncertain) {
      if (a.sign != b.sign) raw.emplace_back(a, b);
    } else {
      resolve_pair(a, b, kResolveDepth, raw, stats.uncertain_unresolved, stats.samples);
    }
  }

  stats.brackets.resize(raw.size());
  if (!opt.refine) {
    for (size_t i = 0; i < raw.size(); ++i) {
      const auto& [a, b] = raw[i];
      stats.brackets[i] = ZeroBracket{a.t, b.t, 0.5 * (a.t + b.t), b.t - a.t};
    }
    return stats;
  }

  const double target_width = 1e-9 * std::max(1.0, lo);
  std::vector<long long> chunk_probes(static_cast<size_t>(chunk_count(
                                          static_cast<long long>(raw.size()))),
                                      0);
  parallel_chunks(static_cast<long long>(raw.size()), opt.workers,
                  [&](long long c, long long c_lo, long long c_hi) {
                    for (long long i = c_lo; i < c_hi; ++i) {
                      const auto& [a, b] = raw[static_cast<size_t>(i)];
                      stats.brackets[static_cast<size_t>(i)] =
                          refine_bracket(a, b, target_width,
                                         chunk_probes[static_cast<size_t>(c)]);
                    }
                  });
  for (const long long p : chunk_probes) stats.samples += p;
  return stats;
}

std::vector<ZeroBracket> zeros_in(double lo, double hi, double scan_step, int workers) {
  ScanOptions opt;
  opt.workers = workers;
  opt.refine = true;
  return scan_zeros(lo, hi, scan_step, opt).brackets;
}

}  // namespace zetagram
