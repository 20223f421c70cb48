#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "zetagram/asymptotics.hpp"
#include "zetagram/errors.hpp"
#include "zetagram/gram.hpp"
#include "zetagram/psi.hpp"

using namespace zetagram;

namespace {

// Frozen with mpmath at 60 significant digits, independently of this library.
constexpr double kExpFiveTwelfths = 1.5168967963882133955398076502624356;
constexpr double kUOf1e6Lnlnln = 805008.10622958678739576457217863126;
constexpr double kKaratsuba1e6 = 188.629561908168768570918732282255859;
constexpr double kH1A1 = 31.8309886183790671537767526745028724;
constexpr double kH1A2 = 25.3974543736963879143053219738544081;
constexpr double kH1P0 = 398.942280401432677939946059934381868;
constexpr double kH1Xi = 1.12724469810086497661704952894472716;
constexpr double kH1Hi = 62.1528003376458656772101647753700194;
constexpr double kH1LenLo = 8.34889463519709558100682177517388228;
constexpr double kH1LenHi = 2.88944538539787866692079980975020394;
constexpr double kZeroAlt1e6U200 = 381.259915344800859479068040400136795;

bool close(double got, double want, double rel) {
  return std::fabs(got - want) <= rel * std::max(1.0, std::fabs(want));
}

}  // namespace

TEST_CASE("u_of reproduces frozen window lengths") {
  const PsiFunction one = PsiFunction::constant(1.0, PsiRole::psi);
  CHECK(close(u_of(M_E, one), kExpFiveTwelfths, 1e-14));
  const PsiFunction triple = PsiFunction::lnlnln(PsiRole::psi);
  CHECK(close(u_of(1e6, triple), kUOf1e6Lnlnln, 1e-12));
  CHECK_THROWS_AS(u_of(1.0, one), validation_error);
  CHECK_THROWS_AS(u_of(std::numeric_limits<double>::infinity(), one), validation_error);
}

TEST_CASE("predicted counts follow their closed forms") {
  constexpr double kPi = 3.141592653589793238462643383279502884;
  constexpr double kTwoPi = 6.283185307179586476925286766559005768;
  CHECK(close(predicted_gram_count(1e5, 77.0), 77.0 * std::log(1e5) / kPi, 1e-14));
  CHECK(close(predicted_gram_count_alt(1e5, 77.0),
              77.0 * std::log(1e5 / kTwoPi) / kPi, 1e-14));
  CHECK(close(predicted_zero_count(1e5, 77.0), 77.0 * std::log(1e5) / kTwoPi, 1e-14));
  CHECK(close(predicted_zero_count_alt(1e6, 200.0), kZeroAlt1e6U200, 1e-13));
  // The alternate convention needs ln(T/2pi) > 0.
  CHECK_THROWS_AS(predicted_gram_count_alt(kTwoPi, 1.0), validation_error);
  CHECK_THROWS_AS(predicted_zero_count_alt(6.0, 1.0), validation_error);
  CHECK_THROWS_AS(predicted_gram_count(0.5, 1.0), validation_error);
  CHECK_THROWS_AS(predicted_zero_count(1e5, -1.0), validation_error);
  CHECK_THROWS_AS(
      predicted_gram_count(1e5, std::numeric_limits<double>::infinity()),
      validation_error);
}

TEST_CASE("exact_gram_count agrees with the index range and its prediction") {
  const long long n = exact_gram_count(1e6, 500.0, 0.0);
  CHECK(n == index_range(1e6, 500.0, 0.0).count);
  CHECK(std::fabs(static_cast<double>(n) - predicted_gram_count_alt(1e6, 500.0)) <= 2.0);
}

TEST_CASE("karatsuba_exponent_u frozen value and domain") {
  CHECK(close(karatsuba_exponent_u(1e6, 0.05), kKaratsuba1e6, 1e-13));
  CHECK_THROWS_AS(karatsuba_exponent_u(1e6, 0.0), std::domain_error);
  CHECK_THROWS_AS(karatsuba_exponent_u(1e6, 0.2), std::domain_error);
  CHECK_THROWS_AS(karatsuba_exponent_u(0.5, 0.05), validation_error);
}

TEST_CASE("h1_window reproduces the frozen band at T = 1e6") {
  const H1Window w = h1_window(1e6, 0.1);
  CHECK(close(w.a1, kH1A1, 1e-12));
  CHECK(close(w.a2, kH1A2, 1e-12));
  CHECK(close(w.p0, kH1P0, 1e-12));
  CHECK(close(w.xi, kH1Xi, 1e-12));
  CHECK(w.h1_lo == w.a1);
  CHECK(close(w.h1_hi, kH1Hi, 1e-12));
  CHECK(close(w.len_lo, kH1LenLo, 1e-12));
  CHECK(close(w.len_hi, kH1LenHi, 1e-12));
  CHECK_FALSE(w.len_window_proper);  // desk scale: ln xi < 1 inverts the window
  // a1 * omega(T) == 1 / ln xi, algebraically exact in this parametrization.
  CHECK(close(w.bracket_lo, w.len_lo, 1e-12));
  CHECK(w.bracket_hi == w.h1_hi * omega(1e6));
  // Integer budget band walked by the G3 scan.
  CHECK(std::ceil(w.h1_lo) == 32.0);
  CHECK(std::floor(w.h1_hi) == 62.0);
  CHECK_THROWS_AS(h1_window(1e6, 0.5), std::domain_error);
  CHECK_THROWS_AS(h1_window(500.0, 0.1), validation_error);
}

TEST_CASE("compare classifies measurements against predictions") {
  const Verdict ok = compare(1.02, 1.0, 0.05);
  CHECK(ok.within);
  CHECK(ok.ratio == 1.02);
  CHECK(close(ok.rel_error, 0.02, 1e-12));
  CHECK(ok.note.empty());

  const Verdict bad = compare(1.2, 1.0, 0.05);
  CHECK_FALSE(bad.within);

  // The tolerance is inclusive (exactly representable boundary).
  CHECK(compare(1.5, 1.0, 0.5).within);

  const Verdict zz = compare(0.0, 0.0, 0.1);
  CHECK(zz.within);
  CHECK(zz.ratio == 1.0);
  CHECK(zz.rel_error == 0.0);

  const Verdict inf = compare(5.0, 0.0, 0.1, "probe");
  CHECK_FALSE(inf.within);
  CHECK(std::isinf(inf.ratio));
  CHECK(inf.note ==
        "probe; infinite ratio: nonzero measurement against a zero prediction");
  const Verdict inf_bare = compare(5.0, 0.0, 0.1);
  CHECK(inf_bare.note ==
        "infinite ratio: nonzero measurement against a zero prediction");

  CHECK_THROWS_AS(compare(1.0, 1.0, -0.1), validation_error);
}
