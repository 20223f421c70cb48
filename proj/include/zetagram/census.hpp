#pragma once

// Censuses over translated Gram grids: which grid intervals contain an
// odd-order zero, how often short intervals to the right of t do, how many
// consecutive-sample sign preservations and good segments a window holds,
// and the grid exponential sums / moments those counts are compared against.
//
// Every census partitions its index range into fixed chunks and folds chunk
// results in order, so aggregates are identical for any worker count. Good
// segments additionally need their greedy sweep run in index order; the
// parallel phase only computes per-index candidates and the sweep is serial.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zetagram/gram.hpp"
#include "zetagram/psi.hpp"
#include "zetagram/theta.hpp"

namespace zetagram {

struct CensusOptions {
  int workers = 1;
  bool paper_mode = false;   // admissibility violations throw instead of warn
  double scan_step = 0.0;    // 0 -> omega(T)/4
  double epsilon = 0.1;      // only used by paper-mode H1 validation in G3
};

struct CensusReport {
  std::string label;   // e.g. "census-theorem1"
  double T = 0.0;
  double U = 0.0;
  double tau = 0.0;
  long long total = 0;
  long long hits = 0;
  long long uncertain = 0;       // hits + misses + uncertain == total
  double fraction = 0.0;         // hits / total
  double predicted_main_term = 0.0;  // ln T convention
  double predicted_alt = 0.0;        // ln(T/2pi) convention
  double ratio = 0.0;            // hits / predicted_main_term
  double ratio_alt = 0.0;
  bool paper_mode = false;
  std::string anchor;            // which main-term formula the ratio uses
  std::string overrides;         // semicolon list of exploration overrides
  std::map<std::string, double> params;
};

struct MomentReport {
  double T = 0.0;
  double U = 0.0;
  double tau = 0.0;
  long long M = 0;
  long long total = 0;     // grid points entering the outer sum
  double j_bar = 0.0;      // sum over nu of (sum_k Z)^2
  double k_bar_re = 0.0;   // sum over nu of K(nu)
  double k_bar_im = 0.0;
  double n_bar = 0.0;      // sum over nu of |K(nu)|^2
  double normalized_j = 0.0;  // j_bar / (M U ln^2 T), 0 when M = 0
  double normalized_n = 0.0;
  std::string theta_variant;
  bool paper_mode = false;
  std::string overrides;
};

// Interval (g, g + psi_bar(g)) to the right of every grid point in [T, T+U]:
// hit when it certifiably contains an odd-order zero. Without U_override the
// window length is T^{5/12} psi(T) ln^3 T; overriding it is an exploration
// device and is stamped into the report.
CensusReport census_theorem1(double T, const PsiFunction& psi,
                             const PsiFunction& psi_bar, double tau,
                             std::optional<double> U_override,
                             const CensusOptions& opt = {});

// Interval (t, t + psi(t)/ln t) over the uniform lattice T + j*grid_step,
// j = 0..floor(span/grid_step), span = T^{1/2+epsilon} unless overridden.
// fraction estimates the relative measure of the covered set.
CensusReport census_selberg_c(double T, double epsilon, const PsiFunction& psi,
                              double grid_step,
                              std::optional<double> span_override,
                              const CensusOptions& opt = {});

// Grid points whose samples Z(g + k omega), k = 1..M, all carry the same
// certain sign. Compared against the bound U ln^2 T / M.
CensusReport count_sign_preserving_r(const GridSpec& spec,
                                     const CensusOptions& opt = {});

// Non-intersecting good segments, first definition: smallest k in [0, M2],
// M2 = floor(delta ln T), with a certified sign change across
// [g + k omega, g + (k+1) omega]; greedy left-to-right disjoint sweep.
CensusReport good_segments_g1(double T, double U, double delta, double tau,
                              const CensusOptions& opt = {});

// Second definition: segment budget k in [1, min(H1, count-1)]; in paper
// mode H1 must lie in the h1_window(T, opt.epsilon) band.
CensusReport good_segments_g3(double T, double U, long long H1, double tau,
                              const CensusOptions& opt = {});

struct G3Scan {
  long long best_h1 = 0;
  CensusReport best;
  std::vector<std::pair<long long, long long>> counts;  // (H1, hits)
};

// Scans every integer H1 in the admissible band and reports the maximizer
// (smallest H1 on ties). Grid samples are evaluated once and reused.
G3Scan good_segments_g3_scan(double T, double U, double tau, double epsilon,
                             const CensusOptions& opt = {});

// Certified zero count of the whole window [T, T+U] against (1/2pi) U ln T.
CensusReport n0_increment(double T, double U, double scan_step,
                          const CensusOptions& opt = {});

// Grid exponential sums over pairs m < n < P0 = sqrt(T/2pi):
//   S1: sum (mn)^{-1/2} sum_nu cos(g_nu(tau) ln(n/m) + phi1),
//       phi1 = k omega ln(P0/m) - l omega ln(P0/n)
//   S2: Re of e^{-i tau} sum (mn)^{-1/2} sum_nu (-1)^nu
//       e^{i (g_nu(tau) ln(mn) + phi2)},  phi2 = -k omega ln(P0/n) - l omega ln(P0/m)
// Extended-precision phases, compensated accumulation. pre: T <= 1e5.
double exp_sum_s1(double T, double U, double tau, int k, int l);
double exp_sum_s2(double T, double U, double tau, int k, int l);

// Grid moments over nu in the window, k = 0..M per grid point:
//   j_bar = sum (sum_k Z)^2,   K(nu) = sum_k (e^{-i theta} Z - 1),
//   n_bar = sum |K(nu)|^2,     normalized by M U ln^2 T.
// theta_variant picks the phase used inside K.
MomentReport moments(const GridSpec& spec, ThetaEngine theta_variant,
                     const CensusOptions& opt = {});

// Additive merge for disjoint adjacent windows (not valid for good-segment
// reports; see report.hpp for the file-level rules).
CensusReport merge_additive(const CensusReport& a, const CensusReport& b);

}  // namespace zetagram
