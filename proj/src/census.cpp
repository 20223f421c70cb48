#include "zetagram/census.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "zetagram/asymptotics.hpp"
#include "zetagram/errors.hpp"
#include "zetagram/hardy_z.hpp"
#include "zetagram/parallel.hpp"

namespace zetagram {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 6.283185307179586476925286766559005768;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

double resolve_step(double T, const CensusOptions& opt) {
  if (opt.scan_step > 0.0) {
    if (!std::isfinite(opt.scan_step))
      throw validation_error("census: scan_step must be finite");
    return opt.scan_step;
  }
  return omega(T) / 4.0;
}

std::vector<GramPoint> enumerate_points(const IndexRange& range, double tau, int workers) {
  std::vector<GramPoint> pts(static_cast<size_t>(range.count));
  parallel_chunks(range.count, workers, [&](long long, long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i)
      pts[static_cast<size_t>(i)] = gram_point(range.nu_first + i, tau);
  });
  return pts;
}

// Admissibility checks throw in paper mode and demote to warnings otherwise.
void check_psi_window(const PsiFunction& f, double lo, double hi, bool paper_mode) {
  if (paper_mode) {
    f.check_window(lo, hi, true);
    return;
  }
  try {
    f.check_window(lo, hi, false);
  } catch (const std::exception& e) {
    log_warning(std::string("exploration mode: ") + e.what());
  }
}

// Outcome codes for per-point interval censuses.
enum : unsigned char { kMiss = 0, kHit = 1, kUncertain = 2 };

unsigned char zero_exists(double lo, double len, double step) {
  if (!(len > 0.0)) return kMiss;
  ScanOptions so;
  so.workers = 1;
  so.refine = false;
  const ScanStats st = scan_zeros(lo, lo + len, step, so);
  if (!st.brackets.empty()) return kHit;
  return st.uncertain_unresolved > 0 ? kUncertain : kMiss;
}

CensusReport assemble(std::string label, double T, double U, double tau,
                      long long total, long long hits, long long uncertain,
                      double predicted, double predicted_alt, bool paper_mode,
                      std::string anchor, std::string overrides) {
  CensusReport r;
  r.label = std::move(label);
  r.T = T;
  r.U = U;
  r.tau = tau;
  r.total = total;
  r.hits = hits;
  r.uncertain = uncertain;
  r.fraction = total > 0 ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
  r.predicted_main_term = predicted;
  r.predicted_alt = predicted_alt;
  r.ratio = predicted != 0.0 ? static_cast<double>(hits) / predicted
                             : std::numeric_limits<double>::infinity();
  r.ratio_alt = predicted_alt != 0.0 ? static_cast<double>(hits) / predicted_alt
                                     : std::numeric_limits<double>::infinity();
  r.paper_mode = paper_mode;
  r.anchor = std::move(anchor);
  r.overrides = std::move(overrides);
  return r;
}

std::string num_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

CensusReport census_theorem1(double T, const PsiFunction& psi,
                             const PsiFunction& psi_bar, double tau,
                             std::optional<double> U_override,
                             const CensusOptions& opt) {
  if (psi.role() != PsiRole::psi || psi_bar.role() != PsiRole::psi_bar)
    throw validation_error("census_theorem1: expected roles (psi, psi_bar)");
  if (opt.paper_mode && U_override)
    throw validation_error("census_theorem1: U_override is an exploration device; not valid in paper mode");
  const double U = U_override ? *U_override : u_of(T, psi);
  if (!(U > 0.0) || !std::isfinite(U))
    throw validation_error("census_theorem1: window length must be positive and finite");
  check_psi_window(psi, T, T + U, opt.paper_mode);
  check_psi_window(psi_bar, T, T + U, opt.paper_mode);
  if (opt.paper_mode) {
    const double pairing = psi_bar(T + U) / std::cbrt(psi(T));
    if (!(pairing <= 0.5))
      throw validation_error("census_theorem1: pairing proxy psi_bar(T+U)/psi(T)^{1/3} exceeds 0.5");
  }

  const double step = resolve_step(T, opt);
  const IndexRange range = index_range(T, U, tau);
  const auto pts = enumerate_points(range, tau, opt.workers);
  std::vector<unsigned char> outcome(static_cast<size_t>(range.count), kMiss);
  parallel_chunks(range.count, opt.workers, [&](long long, long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i) {
      const double g = pts[static_cast<size_t>(i)].t;
      outcome[static_cast<size_t>(i)] = zero_exists(g, psi_bar(g), step);
    }
  });
  long long hits = 0, uncertain = 0;
  for (const unsigned char o : outcome) {
    hits += o == kHit;
    uncertain += o == kUncertain;
  }

  const double lnT = std::log(T);
  std::string overrides;
  if (U_override) overrides = "U_override=" + num_str(*U_override);
  CensusReport r = assemble("census-theorem1", T, U, tau, range.count, hits, uncertain,
                            U * lnT / kPi, U * std::log(T / kTwoPi) / kPi,
                            opt.paper_mode, "(1/pi) U ln T", overrides);
  r.params["scan_step"] = step;
  r.params["nu_first"] = static_cast<double>(range.nu_first);
  r.params["omega"] = omega(T);
  return r;
}

CensusReport census_selberg_c(double T, double epsilon, const PsiFunction& psi,
                              double grid_step, std::optional<double> span_override,
                              const CensusOptions& opt) {
  if (!(T >= 1e3) || !std::isfinite(T))
    throw validation_error("census_selberg_c: T must be >= 1e3");
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    throw validation_error("census_selberg_c: epsilon must lie in (0, 1/2]");
  if (!(grid_step > 0.0) || !std::isfinite(grid_step))
    throw validation_error("census_selberg_c: grid_step must be positive and finite");
  if (psi.role() != PsiRole::psi)
    throw validation_error("census_selberg_c: psi role required");
  const double span = span_override ? *span_override : std::pow(T, 0.5 + epsilon);
  if (!(span > 0.0) || !std::isfinite(span))
    throw validation_error("census_selberg_c: span must be positive and finite");
  check_psi_window(psi, T, T + span, opt.paper_mode);

  const double step = resolve_step(T, opt);
  long long n = static_cast<long long>(std::floor(span / grid_step)) + 1;
  if (n < 1) n = 1;
  while (n > 1 && static_cast<double>(n - 1) * grid_step > span) --n;
  while (static_cast<double>(n) * grid_step <= span) ++n;
  if (n > 50000000)
    throw validation_error("census_selberg_c: grid exceeds 5e7 points; enlarge grid_step");

  std::vector<unsigned char> outcome(static_cast<size_t>(n), kMiss);
  parallel_chunks(n, opt.workers, [&](long long, long long lo, long long hi) {
    for (long long j = lo; j < hi; ++j) {
      const double t = T + static_cast<double>(j) * grid_step;
      outcome[static_cast<size_t>(j)] = zero_exists(t, psi(t) / std::log(t), step);
    }
  });
  long long hits = 0, uncertain = 0;
  for (const unsigned char o : outcome) {
    hits += o == kHit;
    uncertain += o == kUncertain;
  }

  std::string overrides;
  if (span_override) overrides = "span_override=" + num_str(*span_override);
  CensusReport r = assemble("census-selberg-c", T, span, 0.0, n, hits, uncertain,
                            span, span, opt.paper_mode,
                            "m(S) ~ T^{1/2+eps} (reported against the span)", overrides);
  // For this census the ratio is the measure estimate against the span.
  r.ratio = r.fraction;
  r.ratio_alt = r.fraction;
  r.params["epsilon"] = epsilon;
  r.params["grid_step"] = grid_step;
  r.params["scan_step"] = step;
  r.params["measure_estimate"] = r.fraction * span;
  return r;
}

CensusReport count_sign_preserving_r(const GridSpec& spec, const CensusOptions& opt) {
  if (spec.M < 1)
    throw validation_error("count_sign_preserving_r: M must be >= 1");
  const IndexRange range = index_range(spec.T, spec.U, spec.tau);
  const auto pts = enumerate_points(range, spec.tau, opt.workers);
  std::vector<unsigned char> outcome(static_cast<size_t>(range.count), kMiss);
  parallel_chunks(range.count, opt.workers, [&](long long, long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i) {
      const double g = pts[static_cast<size_t>(i)].t;
      bool pos = false, neg = false, unc = false;
      for (long long k = 1; k <= spec.M; ++k) {
        const SignSample s = sign_at(g + static_cast<double>(k) * spec.omega);
        if (s.sign == Sign::positive) pos = true;
        else if (s.sign == Sign::negative) neg = true;
        else unc = true;
        if (pos && neg) break;  // certain sign change: definitely not preserved
      }
      unsigned char o = kMiss;
      if (pos && neg) o = kMiss;
      else if (unc) o = kUncertain;
      else o = kHit;
      outcome[static_cast<size_t>(i)] = o;
    }
  });
  long long hits = 0, uncertain = 0;
  for (const unsigned char o : outcome) {
    hits += o == kHit;
    uncertain += o == kUncertain;
  }
  const double lnT = std::log(spec.T);
  const double lnTa = std::log(spec.T / kTwoPi);
  CensusReport r = assemble("sign-preserving-r", spec.T, spec.U, spec.tau, range.count,
                            hits, uncertain, spec.U * lnT * lnT / static_cast<double>(spec.M),
                            spec.U * lnTa * lnTa / static_cast<double>(spec.M),
                            opt.paper_mode, "U ln^2 T / M", "");
  r.params["M"] = static_cast<double>(spec.M);
  r.params["omega"] = spec.omega;
  r.params["nu_first"] = static_cast<double>(range.nu_first);
  return r;
}

namespace {

// Per-grid-point first-fit search shared by both good-segment definitions.
// Pair index k spans [k_lo, k_hi]; pair k covers
// [g + (k + pair_base) w, g + (k + pair_base + 1) w].
struct SegmentCandidate {
  long long k = -1;          // smallest certified pair index, -1 if none
  long long first_unc = -1;  // smallest uncertain-blocked pair index, -1 if none
  double lo = 0.0;
  double hi = 0.0;
};

SegmentCandidate first_fit(double g, double w, long long k_lo, long long k_hi,
                           long long pair_base) {
  SegmentCandidate cand;
  if (k_hi < k_lo) return cand;
  SignSample prev = sign_at(g + static_cast<double>(k_lo + pair_base) * w);
  for (long long k = k_lo; k <= k_hi; ++k) {
    const double hi_t = g + static_cast<double>(k + pair_base + 1) * w;
    const SignSample next = sign_at(hi_t);
    if (prev.sign != Sign::uncertain && next.sign != Sign::uncertain) {
      if (prev.sign != next.sign) {
        cand.k = k;
        cand.lo = prev.t;
        cand.hi = next.t;
        return cand;
      }
    } else if (cand.first_unc < 0) {
      cand.first_unc = k;
    }
    prev = next;
  }
  return cand;
}

struct SweepResult {
  long long hits = 0;
  long long uncertain = 0;
};

// Greedy left-to-right acceptance of non-intersecting candidate segments.
// Candidates are fixed per grid point (first-fit); a candidate overlapping
// the previously accepted segment is skipped, not re-searched.
SweepResult greedy_sweep(const std::vector<SegmentCandidate>& cands, long long budget) {
  SweepResult res;
  double last_hi = -std::numeric_limits<double>::infinity();
  for (const auto& c : cands) {
    if (c.k >= 0 && c.k <= budget) {
      if (c.lo >= last_hi) {
        ++res.hits;
        last_hi = c.hi;
      }
    } else if (c.first_unc >= 0 && c.first_unc <= budget) {
      ++res.uncertain;
    }
  }
  return res;
}

}  // namespace

CensusReport good_segments_g1(double T, double U, double delta, double tau,
                              const CensusOptions& opt) {
  if (!(delta > 1.0) || !std::isfinite(delta))
    throw validation_error("good_segments_g1: delta must exceed 1");
  const IndexRange range = index_range(T, U, tau);
  const auto pts = enumerate_points(range, tau, opt.workers);
  const double w = omega(T);
  const long long M2 = static_cast<long long>(std::floor(delta * std::log(T)));

  std::vector<SegmentCandidate> cands(static_cast<size_t>(range.count));
  parallel_chunks(range.count, opt.workers, [&](long long, long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i)
      cands[static_cast<size_t>(i)] = first_fit(pts[static_cast<size_t>(i)].t, w, 0, M2, 0);
  });
  const SweepResult res = greedy_sweep(cands, M2);

  CensusReport r = assemble("good-segments-g1", T, U, tau, range.count, res.hits,
                            res.uncertain, U, U, opt.paper_mode,
                            "A(psi, delta) U (lower-bound form; ratio reports A)", "");
  r.params["delta"] = delta;
  r.params["M2"] = static_cast<double>(M2);
  r.params["omega"] = w;
  r.params["nu_first"] = static_cast<double>(range.nu_first);
  return r;
}

CensusReport good_segments_g3(double T, double U, long long H1, double tau,
                              const CensusOptions& opt) {
  if (H1 < 1) throw validation_error("good_segments_g3: H1 must be >= 1");
  if (opt.paper_mode) {
    const H1Window win = h1_window(T, opt.epsilon);
    if (!(static_cast<double>(H1) >= win.h1_lo && static_cast<double>(H1) <= win.h1_hi)) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "good_segments_g3: H1 = %lld outside [a1, a2 sqrt(ln P0)] = [%.6g, %.6g]",
                    H1, win.h1_lo, win.h1_hi);
      throw validation_error(buf);
    }
  }
  const IndexRange range = index_range(T, U, tau);
  const auto pts = enumerate_points(range, tau, opt.workers);
  const double w = omega(T);
  // Definition-2 budget: 1 <= k <= N1 with N1 the window depth, capped by H1.
  const long long budget = std::min(H1, range.count - 1);

  std::vector<SegmentCandidate> cands(static_cast<size_t>(range.count));
  parallel_chunks(range.count, opt.workers, [&](long long, long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i)
      cands[static_cast<size_t>(i)] =
          first_fit(pts[static_cast<size_t>(i)].t, w, 1, budget, -1);
  });
  const SweepResult res = greedy_sweep(cands, budget);

  const double lnT = std::log(T);
  CensusReport r = assemble("good-segments-g3", T, U, tau, range.count, res.hits,
                            res.uncertain, U * lnT, U * std::log(T / kTwoPi),
                            opt.paper_mode, "A(eps) U ln T (two-sided; ratio reports A)", "");
  r.params["H1"] = static_cast<double>(H1);
  r.params["budget"] = static_cast<double>(budget);
  r.params["omega"] = w;
  r.params["nu_first"] = static_cast<double>(range.nu_first);
  return r;
}

G3Scan good_segments_g3_scan(double T, double U, double tau, double epsilon,
                             const CensusOptions& opt) {
  const H1Window win = h1_window(T, epsilon);
  const long long h_lo = static_cast<long long>(std::ceil(win.h1_lo));
  const long long h_hi = static_cast<long long>(std::floor(win.h1_hi));
  if (h_hi < h_lo)
    throw validation_error("good_segments_g3_scan: integer H1 band is empty at this T, epsilon");
  const IndexRange range = index_range(T, U, tau);
  const auto pts = enumerate_points(range, tau, opt.workers);
  const double w = omega(T);
  const long long budget_max = std::min(h_hi, range.count - 1);

  // First-fit once at the maximal budget; every smaller budget's candidate
  // set is the subset with k (or the blocking index) within that budget.
  std::vector<SegmentCandidate> cands(static_cast<size_t>(range.count));
  parallel_chunks(range.count, opt.workers, [&](long long, long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i)
      cands[static_cast<size_t>(i)] =
          first_fit(pts[static_cast<size_t>(i)].t, w, 1, budget_max, -1);
  });

  G3Scan scan;
  long long best_hits = -1;
  for (long long h1 = h_lo; h1 <= h_hi; ++h1) {
    const long long budget = std::min(h1, range.count - 1);
    const SweepResult res = greedy_sweep(cands, budget);
    scan.counts.emplace_back(h1, res.hits);
    if (res.hits > best_hits) {
      best_hits = res.hits;
      scan.best_h1 = h1;
      const double lnT = std::log(T);
      scan.best = assemble("good-segments-g3", T, U, tau, range.count, res.hits,
                           res.uncertain, U * lnT, U * std::log(T / kTwoPi),
                           opt.paper_mode, "A(eps) U ln T (two-sided; ratio reports A)",
                           "H1_scan=max over [" + std::to_string(h_lo) + "," +
                               std::to_string(h_hi) + "]");
      scan.best.params["H1"] = static_cast<double>(h1);
      scan.best.params["budget"] = static_cast<double>(budget);
      scan.best.params["omega"] = w;
      scan.best.params["epsilon"] = epsilon;
      scan.best.params["nu_first"] = static_cast<double>(range.nu_first);
    }
  }
  return scan;
}

CensusReport n0_increment(double T, double U, double scan_step, const CensusOptions& opt) {
  if (!(T >= 1e3) || !std::isfinite(T))
    throw validation_error("n0_increment: T must be >= 1e3");
  if (!(U > 0.0) || !std::isfinite(U))
    throw validation_error("n0_increment: U must be positive and finite");
  CensusOptions eff = opt;
  eff.scan_step = scan_step;
  const double step = resolve_step(T, eff);
  ScanOptions so;
  so.workers = opt.workers;
  so.refine = false;
  const ScanStats st = scan_zeros(T, T + U, step, so);
  const long long hits = static_cast<long long>(st.brackets.size());
  const long long uncertain = st.uncertain_unresolved;

  CensusReport r = assemble("n0", T, U, 0.0, hits + uncertain, hits, uncertain,
                            U * std::log(T) / kTwoPi, U * std::log(T / kTwoPi) / kTwoPi,
                            opt.paper_mode, "(1/2pi) U ln T", "");
  r.params["scan_step"] = step;
  r.params["samples"] = static_cast<double>(st.samples);
  return r;
}

namespace {

struct Kahan {
  long double sum = 0.0L;
  long double comp = 0.0L;
  void add(long double x) {
    const long double y = x - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct PairGrid {
  IndexRange range;
  std::vector<double> g;          // binary64 grid points, the shared truth
  std::vector<long double> lnl;   // ln n for n = 0..nmax
  long long nmax = 0;             // largest integer < P0
  long double ln_p0 = 0.0L;
  long double w = 0.0L;
  std::vector<std::pair<int, int>> pairs;  // (m, n), m < n, n-major order
};

PairGrid exp_sum_setup(double T, double U, double tau, const char* who) {
  if (!(T >= 1e3) || !std::isfinite(T))
    throw validation_error(std::string(who) + ": T must be >= 1e3");
  if (!(T <= 1e5)) {
    const double p0 = std::sqrt(T / kTwoPi);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%s: T above the 1e5 cost ceiling (P0 ~ %.3g implies ~%.3g pair terms per grid point)",
                  who, p0, 0.5 * p0 * p0);
    throw validation_error(buf);
  }
  PairGrid pg;
  pg.range = index_range(T, U, tau);
  pg.g.resize(static_cast<size_t>(pg.range.count));
  const auto pts = enumerate_points(pg.range, tau, default_workers());
  for (size_t i = 0; i < pts.size(); ++i) pg.g[i] = pts[i].t;

  const long double p0 = sqrtl(static_cast<long double>(T) / kTwoPiL);
  pg.nmax = static_cast<long long>(ceill(p0)) - 1;
  pg.ln_p0 = logl(p0);
  pg.w = kPiL / logl(static_cast<long double>(T) / kTwoPiL);
  pg.lnl.resize(static_cast<size_t>(pg.nmax) + 1, 0.0L);
  for (long long n = 1; n <= pg.nmax; ++n) pg.lnl[static_cast<size_t>(n)] = logl(static_cast<long double>(n));
  for (int n = 2; n <= static_cast<int>(pg.nmax); ++n)
    for (int m = 1; m < n; ++m) pg.pairs.emplace_back(m, n);
  return pg;
}

// Ordered fold of per-chunk compensated sums: aggregates are bit-identical
// for any worker count because chunk boundaries are fixed.
template <class PerPair>
long double fold_pairs(const PairGrid& pg, int workers, PerPair&& per_pair) {
  const long long npairs = static_cast<long long>(pg.pairs.size());
  std::vector<Kahan> chunk_acc(static_cast<size_t>(chunk_count(npairs)));
  parallel_chunks(npairs, workers, [&](long long c, long long lo, long long hi) {
    Kahan& acc = chunk_acc[static_cast<size_t>(c)];
    for (long long i = lo; i < hi; ++i)
      acc.add(per_pair(pg.pairs[static_cast<size_t>(i)].first,
                       pg.pairs[static_cast<size_t>(i)].second));
  });
  Kahan total;
  for (const Kahan& a : chunk_acc) total.add(a.sum + a.comp);
  return total.sum;
}

}  // namespace

double exp_sum_s1(double T, double U, double tau, int k, int l) {
  if (k < 0 || l < 0)
    throw validation_error("exp_sum_s1: sample offsets k, l must be >= 0");
  const PairGrid pg = exp_sum_setup(T, U, tau, "exp_sum_s1");
  if (pg.range.count == 0 || pg.pairs.empty()) return 0.0;
  const long double kw = static_cast<long double>(k) * pg.w;
  const long double lw = static_cast<long double>(l) * pg.w;
  const long double total = fold_pairs(pg, default_workers(), [&](int m, int n) {
    const long double ln_m = pg.lnl[static_cast<size_t>(m)];
    const long double ln_n = pg.lnl[static_cast<size_t>(n)];
    const long double ln_ratio = ln_n - ln_m;
    const long double phi1 = kw * (pg.ln_p0 - ln_m) - lw * (pg.ln_p0 - ln_n);
    long double inner = 0.0L;
    for (const double g : pg.g)
      inner += cosl(static_cast<long double>(g) * ln_ratio + phi1);
    return inner / sqrtl(static_cast<long double>(m) * static_cast<long double>(n));
  });
  return static_cast<double>(total);
}

double exp_sum_s2(double T, double U, double tau, int k, int l) {
  if (k < 0 || l < 0)
    throw validation_error("exp_sum_s2: sample offsets k, l must be >= 0");
  const PairGrid pg = exp_sum_setup(T, U, tau, "exp_sum_s2");
  if (pg.range.count == 0 || pg.pairs.empty()) return 0.0;
  const long double kw = static_cast<long double>(k) * pg.w;
  const long double lw = static_cast<long double>(l) * pg.w;

  // Real part of e^{-i tau} sum of (-1)^nu e^{i (g ln(mn) + phi2)}.
  const long double re = fold_pairs(pg, default_workers(), [&](int m, int n) {
    const long double phi2 = -kw * (pg.ln_p0 - pg.lnl[static_cast<size_t>(n)]) -
                             lw * (pg.ln_p0 - pg.lnl[static_cast<size_t>(m)]);
    const long double ln_mn = pg.lnl[static_cast<size_t>(m)] + pg.lnl[static_cast<size_t>(n)];
    long double inner = 0.0L;
    for (size_t i = 0; i < pg.g.size(); ++i) {
      const long long nu = pg.range.nu_first + static_cast<long long>(i);
      const long double s = (nu % 2 == 0) ? 1.0L : -1.0L;
      inner += s * cosl(static_cast<long double>(pg.g[i]) * ln_mn + phi2);
    }
    return inner / sqrtl(static_cast<long double>(m) * static_cast<long double>(n));
  });
  const long double im = fold_pairs(pg, default_workers(), [&](int m, int n) {
    const long double phi2 = -kw * (pg.ln_p0 - pg.lnl[static_cast<size_t>(n)]) -
                             lw * (pg.ln_p0 - pg.lnl[static_cast<size_t>(m)]);
    const long double ln_mn = pg.lnl[static_cast<size_t>(m)] + pg.lnl[static_cast<size_t>(n)];
    long double inner = 0.0L;
    for (size_t i = 0; i < pg.g.size(); ++i) {
      const long long nu = pg.range.nu_first + static_cast<long long>(i);
      const long double s = (nu % 2 == 0) ? 1.0L : -1.0L;
      inner += s * sinl(static_cast<long double>(pg.g[i]) * ln_mn + phi2);
    }
    return inner / sqrtl(static_cast<long double>(m) * static_cast<long double>(n));
  });
  const long double tl = static_cast<long double>(tau);
  return static_cast<double>(cosl(tl) * re + sinl(tl) * im);
}

MomentReport moments(const GridSpec& spec, ThetaEngine theta_variant,
                     const CensusOptions& opt) {
  const IndexRange range = index_range(spec.T, spec.U, spec.tau);
  const auto pts = enumerate_points(range, spec.tau, opt.workers);

  struct Part {
    double j = 0.0, kre = 0.0, kim = 0.0, n = 0.0;
  };
  std::vector<Part> parts(static_cast<size_t>(chunk_count(range.count)));
  parallel_chunks(range.count, opt.workers, [&](long long c, long long lo, long long hi) {
    Part& p = parts[static_cast<size_t>(c)];
    for (long long i = lo; i < hi; ++i) {
      const double g = pts[static_cast<size_t>(i)].t;
      double inner = 0.0;
      double k_re = 0.0, k_im = 0.0;
      for (long long k = 0; k <= spec.M; ++k) {
        const double x = g + static_cast<double>(k) * spec.omega;
        const double z = sign_at(x).value;
        const double th = theta_variant == ThetaEngine::truncated ? theta1(x) : theta_full(x);
        inner += z;
        k_re += z * std::cos(th) - 1.0;
        k_im += -z * std::sin(th);
      }
      p.j += inner * inner;
      p.kre += k_re;
      p.kim += k_im;
      p.n += k_re * k_re + k_im * k_im;
    }
  });
  MomentReport r;
  for (const Part& p : parts) {
    r.j_bar += p.j;
    r.k_bar_re += p.kre;
    r.k_bar_im += p.kim;
    r.n_bar += p.n;
  }
  r.T = spec.T;
  r.U = spec.U;
  r.tau = spec.tau;
  r.M = spec.M;
  r.total = range.count;
  const double lnT = std::log(spec.T);
  const double denom = static_cast<double>(spec.M) * spec.U * lnT * lnT;
  if (spec.M > 0 && denom > 0.0) {
    r.normalized_j = r.j_bar / denom;
    r.normalized_n = r.n_bar / denom;
  } else {
    r.normalized_j = 0.0;
    r.normalized_n = 0.0;
    r.overrides = "M=0: normalization undefined, reported as 0";
  }
  r.theta_variant = theta_variant == ThetaEngine::truncated ? "theta1" : "theta_full";
  r.paper_mode = opt.paper_mode;
  return r;
}

CensusReport merge_additive(const CensusReport& a, const CensusReport& b) {
  if (a.label != b.label)
    throw validation_error("merge_additive: reports of different kinds");
  if (a.label.rfind("good-segments", 0) == 0)
    throw validation_error("merge_additive: good-segment sweeps do not compose across a window boundary");
  if (a.tau != b.tau)
    throw validation_error("merge_additive: tau mismatch");
  if (a.paper_mode != b.paper_mode)
    throw validation_error("merge_additive: paper-mode mismatch");
  const CensusReport& first = a.T <= b.T ? a : b;
  const CensusReport& second = a.T <= b.T ? b : a;
  const double seam = first.T + first.U;
  if (!(std::fabs(seam - second.T) <= 1e-9 * std::max(1.0, std::fabs(second.T))))
    throw validation_error("merge_additive: windows are not disjoint and adjacent");

  CensusReport r = assemble(first.label, first.T, first.U + second.U, first.tau,
                            first.total + second.total, first.hits + second.hits,
                            first.uncertain + second.uncertain,
                            first.predicted_main_term + second.predicted_main_term,
                            first.predicted_alt + second.predicted_alt, first.paper_mode,
                            first.anchor, first.overrides);
  if (!second.overrides.empty() && second.overrides != first.overrides) {
    if (!r.overrides.empty()) r.overrides += ";";
    r.overrides += second.overrides;
  }
  if (first.label == "census-selberg-c") {
    r.ratio = r.fraction;
    r.ratio_alt = r.fraction;
  }
  for (const auto& [key, value] : first.params) {
    const auto it = second.params.find(key);
    if (it != second.params.end() && it->second == value) r.params[key] = value;
  }
  return r;
}

}  // namespace zetagram
