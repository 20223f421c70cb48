#include <cmath>
#include <optional>
#include <string>

#include "doctest.h"
#include "oracle.hpp"
#include "zetagram/asymptotics.hpp"
#include "zetagram/census.hpp"
#include "zetagram/errors.hpp"
#include "zetagram/gram.hpp"

using namespace zetagram;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 6.283185307179586476925286766559005768;

bool close(double got, double want, double rel) {
  return std::fabs(got - want) <= rel * std::max(1.0, std::fabs(want));
}

PsiFunction default_psi() { return PsiFunction::lnlnln(PsiRole::psi); }

PsiFunction default_psi_bar() {
  return PsiFunction::power_of(default_psi(), 0.25, PsiRole::psi_bar);
}

}  // namespace

TEST_CASE("census_theorem1 report satisfies its structural invariants") {
  const CensusReport r =
      census_theorem1(1e3, default_psi(), default_psi_bar(), 0.0, 40.0);
  const IndexRange range = index_range(1e3, 40.0, 0.0);
  CHECK(r.label == "census-theorem1");
  CHECK(r.T == 1e3);
  CHECK(r.U == 40.0);
  CHECK(r.tau == 0.0);
  CHECK(r.total == range.count);
  CHECK(r.hits >= 1);
  CHECK(r.hits + r.uncertain <= r.total);
  CHECK(r.fraction == static_cast<double>(r.hits) / static_cast<double>(r.total));
  CHECK(close(r.predicted_main_term, 40.0 * std::log(1e3) / kPi, 1e-14));
  CHECK(close(r.predicted_alt, 40.0 * std::log(1e3 / kTwoPi) / kPi, 1e-14));
  CHECK(r.ratio == static_cast<double>(r.hits) / r.predicted_main_term);
  CHECK(r.overrides == "U_override=40");
  CHECK(r.anchor == "(1/pi) U ln T");
  CHECK_FALSE(r.paper_mode);
  CHECK(close(r.params.at("scan_step"), omega(1e3) / 4.0, 1e-14));
  CHECK(close(r.params.at("omega"), omega(1e3), 1e-14));
  CHECK(r.params.at("nu_first") == static_cast<double>(range.nu_first));
}

TEST_CASE("census_theorem1 with a zero-length interval counts every point a miss") {
  const CensusReport r = census_theorem1(
      1e3, default_psi(), default_psi_bar().scaled(0.0), 0.0, 40.0);
  CHECK(r.total > 0);
  CHECK(r.hits == 0);
  CHECK(r.uncertain == 0);
}

TEST_CASE("census_theorem1 hits are monotone in the interval scale") {
  long long last = -1;
  for (const double c : {0.31, 0.62, 1.24}) {
    const PsiFunction bar = PsiFunction::constant(c, PsiRole::psi_bar);
    const CensusReport r = census_theorem1(1e3, default_psi(), bar, 0.0, 40.0);
    CHECK(r.hits >= last);
    last = r.hits;
  }
  CHECK(last >= 1);
}

TEST_CASE("census_theorem1 paper mode") {
  CensusOptions paper;
  paper.paper_mode = true;
  // The window override is an exploration-only device.
  CHECK_THROWS_AS(
      census_theorem1(1e3, default_psi(), default_psi_bar(), 0.0, 40.0, paper),
      validation_error);
  // Admissible paper run: U = T^{5/12} psi(T) ln^3 T with a small constant
  // psi, and a psi_bar far inside the pairing proxy.
  const PsiFunction psi = PsiFunction::constant(0.05, PsiRole::psi);
  const PsiFunction bar = PsiFunction::constant(0.01, PsiRole::psi_bar);
  const CensusReport r =
      census_theorem1(1e3, psi, bar, 0.0, std::nullopt, paper);
  CHECK(r.paper_mode);
  CHECK(r.overrides.empty());
  CHECK(close(r.U, u_of(1e3, psi), 1e-14));
  // The 0.01-length intervals hold no whole scan pair: everything misses.
  CHECK(r.hits == 0);
  CHECK(r.uncertain == 0);
  // Pairing proxy violation: psi_bar(T+U) / psi(T)^{1/3} = 1 > 0.5.
  const PsiFunction bar_big = PsiFunction::constant(0.3684, PsiRole::psi_bar);
  CHECK_THROWS_AS(census_theorem1(1e3, psi, bar_big, 0.0, std::nullopt, paper),
                  validation_error);
}

TEST_CASE("census_theorem1 rejects swapped roles") {
  const PsiFunction as_bar = PsiFunction::constant(1.0, PsiRole::psi_bar);
  const PsiFunction as_psi = PsiFunction::constant(1.0, PsiRole::psi);
  CHECK_THROWS_AS(census_theorem1(1e3, as_bar, as_bar, 0.0, 40.0), validation_error);
  CHECK_THROWS_AS(census_theorem1(1e3, as_psi, as_psi, 0.0, 40.0), validation_error);
}

TEST_CASE("census_theorem1 at tau = +-pi stitches to identical counts") {
  const CensusReport at_pi =
      census_theorem1(1e3, default_psi(), default_psi_bar(), kPi, 40.0);
  const CensusReport at_minus =
      census_theorem1(1e3, default_psi(), default_psi_bar(), -kPi, 40.0);
  CHECK(at_pi.total == at_minus.total);
  CHECK(at_pi.hits == at_minus.hits);
  CHECK(at_pi.uncertain == at_minus.uncertain);
  CHECK(at_minus.params.at("nu_first") == at_pi.params.at("nu_first") + 2.0);
}

TEST_CASE("census_theorem1 aggregates are worker-count independent") {
  CensusOptions one, three;
  one.workers = 1;
  three.workers = 3;
  const CensusReport a =
      census_theorem1(1e3, default_psi(), default_psi_bar(), 0.0, 40.0, one);
  const CensusReport b =
      census_theorem1(1e3, default_psi(), default_psi_bar(), 0.0, 40.0, three);
  CHECK(a.total == b.total);
  CHECK(a.hits == b.hits);
  CHECK(a.uncertain == b.uncertain);
  CHECK(a.fraction == b.fraction);
}

TEST_CASE("census_selberg_c lattice, overrides, and measure bookkeeping") {
  const PsiFunction psi = PsiFunction::powlog(0.5, 1.0, PsiRole::psi);
  const CensusReport r = census_selberg_c(1e3, 0.1, psi, 2.0, 62.0);
  CHECK(r.label == "census-selberg-c");
  CHECK(r.total == 32);  // floor(62/2) + 1 lattice points
  CHECK(r.U == 62.0);
  CHECK(r.tau == 0.0);
  CHECK(r.predicted_main_term == 62.0);
  CHECK(r.ratio == r.fraction);
  CHECK(r.ratio_alt == r.fraction);
  CHECK(r.overrides == "span_override=62");
  CHECK(r.params.at("epsilon") == 0.1);
  CHECK(r.params.at("grid_step") == 2.0);
  CHECK(close(r.params.at("scan_step"), omega(1e3) / 4.0, 1e-14));
  CHECK(r.params.at("measure_estimate") == r.fraction * 62.0);
  CHECK(r.hits >= 1);
}

TEST_CASE("census_selberg_c hits are monotone in the psi scale") {
  const PsiFunction base = PsiFunction::powlog(0.5, 0.5, PsiRole::psi);
  long long last = -1;
  for (const double s : {0.4, 0.8, 1.6}) {
    const CensusReport r = census_selberg_c(1e3, 0.1, base.scaled(s), 2.0, 62.0);
    CHECK(r.hits >= last);
    last = r.hits;
  }
}

TEST_CASE("census_selberg_c validation") {
  const PsiFunction psi = PsiFunction::powlog(0.5, 1.0, PsiRole::psi);
  const PsiFunction bar = PsiFunction::constant(1.0, PsiRole::psi_bar);
  CHECK_THROWS_AS(census_selberg_c(500.0, 0.1, psi, 2.0, 62.0), validation_error);
  CHECK_THROWS_AS(census_selberg_c(1e3, 0.0, psi, 2.0, 62.0), validation_error);
  CHECK_THROWS_AS(census_selberg_c(1e3, 0.6, psi, 2.0, 62.0), validation_error);
  CHECK_THROWS_AS(census_selberg_c(1e3, 0.1, psi, 0.0, 62.0), validation_error);
  CHECK_THROWS_AS(census_selberg_c(1e3, 0.1, bar, 2.0, 62.0), validation_error);
  CHECK_THROWS_AS(census_selberg_c(1e3, 0.1, psi, 2.0, -5.0), validation_error);
}

TEST_CASE("count_sign_preserving_r shrinks as the sample depth grows") {
  const GridSpec two{1e3, 40.0, omega(1e3), 2, 0.0};
  const GridSpec six{1e3, 40.0, omega(1e3), 6, 0.0};
  const CensusReport a = count_sign_preserving_r(two);
  const CensusReport b = count_sign_preserving_r(six);
  CHECK(a.label == "sign-preserving-r");
  CHECK(a.total == index_range(1e3, 40.0, 0.0).count);
  CHECK(close(a.predicted_main_term, 40.0 * std::log(1e3) * std::log(1e3) / 2.0, 1e-14));
  if (a.uncertain == 0 && b.uncertain == 0) CHECK(a.hits >= b.hits);
  CHECK(a.params.at("M") == 2.0);
  const GridSpec zero{1e3, 40.0, omega(1e3), 0, 0.0};
  CHECK_THROWS_AS(count_sign_preserving_r(zero), validation_error);
}

TEST_CASE("good_segments_g1 finds segments and validates delta") {
  const CensusReport r = good_segments_g1(1e3, 40.0, 1.2, 0.0);
  CHECK(r.label == "good-segments-g1");
  CHECK(r.params.at("M2") == std::floor(1.2 * std::log(1e3)));
  CHECK(r.hits >= 1);
  CHECK(r.hits <= r.total);
  CHECK(r.predicted_main_term == 40.0);
  CHECK_THROWS_AS(good_segments_g1(1e3, 40.0, 1.0, 0.0), validation_error);
}

TEST_CASE("good_segments_g1 sweep is worker-count independent") {
  CensusOptions one, three;
  one.workers = 1;
  three.workers = 3;
  const CensusReport a = good_segments_g1(1e3, 40.0, 1.5, 0.0, one);
  const CensusReport b = good_segments_g1(1e3, 40.0, 1.5, 0.0, three);
  CHECK(a.total == b.total);
  CHECK(a.hits == b.hits);
  CHECK(a.uncertain == b.uncertain);
}

TEST_CASE("good_segments_g3 budget and paper-mode band") {
  const CensusReport r = good_segments_g3(1e3, 40.0, 3, 0.0);
  CHECK(r.label == "good-segments-g3");
  CHECK(r.params.at("H1") == 3.0);
  CHECK(r.params.at("budget") == 3.0);
  // Budget is capped by the window depth.
  const CensusReport capped = good_segments_g3(1e3, 40.0, 1000, 0.0);
  CHECK(capped.params.at("budget") == static_cast<double>(capped.total - 1));
  CHECK_THROWS_AS(good_segments_g3(1e3, 40.0, 0, 0.0), validation_error);
  // Paper mode pins H1 to [a1, a2 sqrt(ln P0)] ~ [31.8, 40.4] at this T.
  CensusOptions paper;
  paper.paper_mode = true;
  CHECK_THROWS_AS(good_segments_g3(1e3, 40.0, 3, 0.0, paper), validation_error);
  CHECK_NOTHROW(good_segments_g3(1e3, 40.0, 35, 0.0, paper));
}

TEST_CASE("good_segments_g3_scan walks the integer band and keeps the best") {
  const G3Scan scan = good_segments_g3_scan(1e3, 40.0, 0.0, 0.1);
  // ceil(31.83) .. floor(40.44) = 32 .. 40: nine candidates.
  REQUIRE(scan.counts.size() == 9);
  CHECK(scan.counts.front().first == 32);
  CHECK(scan.counts.back().first == 40);
  long long best_hits = -1, best_h1 = 0;
  for (const auto& [h1, hits] : scan.counts) {
    if (hits > best_hits) {
      best_hits = hits;
      best_h1 = h1;
    }
  }
  CHECK(scan.best_h1 == best_h1);  // smallest maximizer wins ties
  CHECK(scan.best.hits == best_hits);
  CHECK(scan.best.overrides == "H1_scan=max over [32,40]");
  // The winner reproduces a direct run at that budget.
  const CensusReport direct = good_segments_g3(1e3, 40.0, scan.best_h1, 0.0);
  CHECK(direct.hits == scan.best.hits);
  CHECK(direct.uncertain == scan.best.uncertain);
}

TEST_CASE("n0_increment counts certified zeros against the density prediction") {
  const CensusReport r = n0_increment(1e3, 40.0, 0.0);
  CHECK(r.label == "n0");
  CHECK(r.total == r.hits + r.uncertain);
  CHECK(close(r.predicted_alt, 40.0 * std::log(1e3 / kTwoPi) / kTwoPi, 1e-14));
  // ~32.3 zeros expected in [1000, 1040].
  CHECK(std::fabs(static_cast<double>(r.hits) - r.predicted_alt) <= 6.0);
  CHECK(r.params.at("samples") > 0.0);
  // Halving the step never loses a certified zero.
  const CensusReport fine = n0_increment(1e3, 40.0, omega(1e3) / 8.0);
  CHECK(fine.hits >= r.hits);
  CHECK_THROWS_AS(n0_increment(999.0, 40.0, 0.0), validation_error);
  CHECK_THROWS_AS(n0_increment(1e3, 0.0, 0.0), validation_error);
}

TEST_CASE("n0_increment aggregates are worker-count independent") {
  CensusOptions one, four;
  one.workers = 1;
  four.workers = 4;
  const CensusReport a = n0_increment(1e3, 40.0, 0.0, one);
  const CensusReport b = n0_increment(1e3, 40.0, 0.0, four);
  CHECK(a.total == b.total);
  CHECK(a.hits == b.hits);
  CHECK(a.uncertain == b.uncertain);
}

TEST_CASE("exponential sums match the naive high-precision oracle") {
  const double T = 1e3, U = 20.0, tau = 0.7;
  for (const auto& [k, l] : {std::pair<int, int>{0, 0}, std::pair<int, int>{1, 2}}) {
    const double s1 = exp_sum_s1(T, U, tau, k, l);
    const double s1_want = oracle::s1_naive(T, U, tau, k, l);
    CHECK(std::fabs(s1 - s1_want) <= std::max(1e-10, 1e-8 * std::fabs(s1_want)));
    const double s2 = exp_sum_s2(T, U, tau, k, l);
    const double s2_want = oracle::s2_naive(T, U, tau, k, l);
    CHECK(std::fabs(s2 - s2_want) <= std::max(1e-10, 1e-8 * std::fabs(s2_want)));
  }
}

TEST_CASE("exponential sums validate their cost ceiling and offsets") {
  CHECK_THROWS_AS(exp_sum_s1(2e5, 20.0, 0.0, 0, 0), validation_error);
  CHECK_THROWS_AS(exp_sum_s2(2e5, 20.0, 0.0, 0, 0), validation_error);
  CHECK_THROWS_AS(exp_sum_s1(1e3, 20.0, 0.0, -1, 0), validation_error);
  CHECK_THROWS_AS(exp_sum_s2(1e3, 20.0, 0.0, 0, -1), validation_error);
}

TEST_CASE("moments normalize against M U ln^2 T and name their phase") {
  const GridSpec spec{1e3, 30.0, omega(1e3), 10, 0.0};
  const MomentReport a = moments(spec, ThetaEngine::truncated);
  const MomentReport b = moments(spec, ThetaEngine::full);
  CHECK(a.theta_variant == "theta1");
  CHECK(b.theta_variant == "theta_full");
  CHECK(a.total == index_range(1e3, 30.0, 0.0).count);
  CHECK(a.j_bar >= 0.0);
  CHECK(a.n_bar >= 0.0);
  const double denom = 10.0 * 30.0 * std::log(1e3) * std::log(1e3);
  CHECK(a.normalized_j == a.j_bar / denom);
  CHECK(a.normalized_n == a.n_bar / denom);
  // j_bar ignores the phase variant; K-moments feel it.
  CHECK(a.j_bar == b.j_bar);
}

TEST_CASE("moments at M = 0 report the undefined normalization as zero") {
  const GridSpec spec{1e3, 30.0, omega(1e3), 0, 0.0};
  const MomentReport r = moments(spec, ThetaEngine::full);
  CHECK(r.normalized_j == 0.0);
  CHECK(r.normalized_n == 0.0);
  CHECK(r.j_bar > 0.0);  // the k = 0 sample still enters the outer sum
  CHECK(r.overrides == "M=0: normalization undefined, reported as 0");
}

TEST_CASE("moments aggregates are worker-count independent") {
  const GridSpec spec{1e3, 30.0, omega(1e3), 10, 0.0};
  CensusOptions one, three;
  one.workers = 1;
  three.workers = 3;
  const MomentReport a = moments(spec, ThetaEngine::full, one);
  const MomentReport b = moments(spec, ThetaEngine::full, three);
  CHECK(a.j_bar == b.j_bar);
  CHECK(a.k_bar_re == b.k_bar_re);
  CHECK(a.k_bar_im == b.k_bar_im);
  CHECK(a.n_bar == b.n_bar);
}

TEST_CASE("merge_additive composes adjacent windows and recomputes ratios") {
  const CensusReport a = n0_increment(1e3, 40.0, 0.0);
  const CensusReport b = n0_increment(1040.0, 40.0, 0.0);
  const CensusReport m = merge_additive(a, b);
  CHECK(m.T == 1e3);
  CHECK(m.U == 80.0);
  CHECK(m.total == a.total + b.total);
  CHECK(m.hits == a.hits + b.hits);
  CHECK(m.uncertain == a.uncertain + b.uncertain);
  CHECK(m.predicted_main_term == a.predicted_main_term + b.predicted_main_term);
  CHECK(m.ratio ==
        static_cast<double>(m.hits) / (a.predicted_main_term + b.predicted_main_term));
  // Window-specific params that disagree are dropped.
  CHECK(m.params.find("scan_step") == m.params.end());
  // Argument order does not matter.
  const CensusReport m2 = merge_additive(b, a);
  CHECK(m2.hits == m.hits);
  CHECK(m2.T == m.T);
}

TEST_CASE("merge_additive rejects incompatible reports") {
  const CensusReport a = n0_increment(1e3, 40.0, 0.0);
  const CensusReport far = n0_increment(1100.0, 40.0, 0.0);
  CHECK_THROWS_AS(merge_additive(a, far), validation_error);
  const CensusReport t0 =
      census_theorem1(1e3, default_psi(), default_psi_bar(), 0.0, 40.0);
  const CensusReport t5 =
      census_theorem1(1040.0, default_psi(), default_psi_bar(), 0.5, 40.0);
  CHECK_THROWS_AS(merge_additive(t0, t5), validation_error);
  CHECK_THROWS_AS(merge_additive(a, t0), validation_error);
  const CensusReport g1a = good_segments_g1(1e3, 40.0, 1.5, 0.0);
  const CensusReport g1b = good_segments_g1(1040.0, 40.0, 1.5, 0.0);
  CHECK_THROWS_AS(merge_additive(g1a, g1b), validation_error);
}
