#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "pspec/closedform.hpp"
#include "pspec/enumerate.hpp"

using namespace pspec;
using std::complex;

namespace {

PatternSet set_of(std::string_view text) { return PatternSet::from_string(text); }

// Alternating permutations counted directly: descent word ababab...
BigInt count_alternating(int n) {
  if (n <= 1) return 1;
  BigInt count = 0;
  for (const Pattern& p : all_patterns(n)) {
    bool ok = true;
    for (int i = 0; i + 1 < n && ok; ++i) {
      const bool ascent = p[i] < p[i + 1];
      ok = (i % 2 == 0) ? ascent : !ascent;
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("123 ladder values") {
  CHECK(eigenvalues_123(0) == doctest::Approx(0.8269933431326881).epsilon(1e-14));
  CHECK(eigenvalues_123(-1) == doctest::Approx(-0.4134966715663440).epsilon(1e-14));
  CHECK(eigenvalues_123(1) == doctest::Approx(0.2067483357831720).epsilon(1e-14));
  for (int k = 2; k <= 60; ++k) {
    CHECK(std::abs(eigenvalues_123(k)) < std::abs(eigenvalues_123(k - 1)));
    CHECK(std::abs(eigenvalues_123(-k)) < std::abs(eigenvalues_123(-(k - 1))));
  }
}

TEST_CASE("123 ladder interleaves") {
  // l_0 > -l_{-1} > l_1 > -l_{-2} > ... > 0
  for (int k = 0; k <= 50; ++k) {
    CHECK(eigenvalues_123(k) > -eigenvalues_123(-k - 1));
    CHECK(-eigenvalues_123(-k - 1) > eigenvalues_123(k + 1));
    CHECK(eigenvalues_123(k + 1) > 0);
  }
}

TEST_CASE("123 expansion against exact counts") {
  const CountTable t = pyramid_count(set_of("{123}"), 30);
  const double exact20 = t.alpha_over_nfact(20);
  CHECK(std::abs(exact20 - asymptotic_123(20, 1)) / exact20 <= 1e-7);

  const double a4 = asymptotic_123(4, 0);
  CHECK(a4 == doctest::Approx(0.7080834117951766).epsilon(1e-12));
  CHECK(t.alpha(4) == 17);
  CHECK(std::abs(a4 - 17.0 / 24.0) < 5e-4);

  for (int n = 2; n <= 100; ++n) CHECK(asymptotic_123(n, 0) > 0);
}

TEST_CASE("123 expansion error is controlled by the next eigenvalue") {
  const CountTable t = pyramid_count(set_of("{123}"), 30);
  for (int K = 0; K <= 2; ++K) {
    const double r = std::numbers::sqrt3 / (2 * std::numbers::pi * (K + 1 - 1.0 / 3.0));
    double worst = 0;
    for (int n = 10; n <= 30; ++n) {
      if (std::pow(r, n) < 1e-13) break;  // below that the gap is rounding noise
      const double gap = std::abs(t.alpha_over_nfact(n) - asymptotic_123(n, K));
      worst = std::max(worst, gap / std::pow(r, n));
    }
    CHECK(worst < 10.0);
    CHECK(worst > 0.0);
  }
}

TEST_CASE("error function") {
  CHECK(erf_real(0.0) == 0.0);
  for (double x : {0.3, 1.1, 2.7, 5.5}) CHECK(erf_real(-x) == -erf_real(x));
  CHECK(erf_real(1.0 / (std::numbers::sqrt2 * 0.7839769312)) ==
        doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-9));
  CHECK_THROWS_AS(erf_real(6.5), OutOfRange);
}

TEST_CASE("erf series matches the real error function inside its range") {
  for (double x = -2.5; x <= 2.5; x += 0.125) {
    const complex<double> s = erf_series({x, 0.0});
    CHECK(std::abs(s.real() - std::erf(x)) < 1e-13);
    CHECK(std::abs(s.imag()) < 1e-15);
  }
  const complex<double> z{1.3, -0.8};
  const complex<double> a = erf_series(z);
  const complex<double> b = erf_series(std::conj(z));
  CHECK(std::abs(a - std::conj(b)) == 0.0);
}

TEST_CASE("dominant 213 root") {
  const double l0 = solve_213_dominant(1e-10);
  CHECK(std::abs(l0 - 0.7839769312) <= 1e-9);
  CHECK(std::abs(erf_real(1.0 / (std::numbers::sqrt2 * l0)) -
                 std::sqrt(2.0 / std::numbers::pi)) <= 1e-9);
  CHECK_THROWS_AS(solve_213_dominant(1e-13), OutOfRange);
}

TEST_CASE("polished complex 213 roots") {
  const complex<double> l1 = polish_213_complex_root({0.21, 0.21}, 1e-12);
  CHECK(std::abs(l1 - complex<double>{0.2141426360, 0.2085807022}) <= 1e-8);
  const complex<double> l3 = polish_213_complex_root({-0.17, 0.24}, 1e-12);
  CHECK(std::abs(l3 - complex<double>{-0.1677323922, 0.2418627350}) <= 1e-8);

  const complex<double> conj_root = polish_213_complex_root({0.21, -0.21}, 1e-12);
  CHECK(std::abs(conj_root - std::conj(l1)) <= 1e-12);

  CHECK(std::abs(l1) == doctest::Approx(0.298936411).epsilon(1e-8));

  // residual of the eigenvalue equation at every returned root
  const double target = std::sqrt(2.0 / std::numbers::pi);
  for (const complex<double> root : {l1, l3, conj_root}) {
    const complex<double> g = erf_series(1.0 / (std::numbers::sqrt2 * root)) - target;
    CHECK(std::abs(g) <= 1e-11);  // 10x the polish tolerance
  }
  CHECK(std::abs(erf_real(1.0 / (std::numbers::sqrt2 * solve_213_dominant(1e-12))) - target) <=
        1e-11);
}

TEST_CASE("213 asymptotics against exact counts") {
  const CountTable t = pyramid_count(set_of("{213}"), 25);
  const double exact20 = t.alpha_over_nfact(20);
  CHECK(std::abs(exact20 - asymptotic_213(20)) / exact20 <= 1e-6);

  // two-term expansion improves on one term while the second term is still
  // well above double rounding noise
  double one = 0, two = 0;
  for (int n = 10; n <= 18; ++n) {
    const double exact = t.alpha_over_nfact(n);
    one += std::abs(exact - asymptotic_213(n));
    two += std::abs(exact - asymptotic_213(n) - next_term_213(n));
  }
  // the remaining error carries the third conjugate pair, whose modulus
  // (0.2943) sits just under the second pair's (0.2989)
  CHECK(two < 0.2 * one);
}

TEST_CASE("213 second term constants match the coefficient quotient") {
  const complex<double> l1 = polish_213_complex_root({0.21, 0.21}, 1e-13);
  const complex<double> c1 = std::exp(1.0 / (2.0 * l1 * l1));
  CHECK(std::abs(c1) == doctest::Approx(1.158597034).epsilon(1e-7));
  CHECK(std::arg(l1) == doctest::Approx(0.7722415374).epsilon(1e-7));
  CHECK(std::arg(c1) ==
        doctest::Approx(-5.593221320 + 2 * std::numbers::pi).epsilon(1e-7));
}

TEST_CASE("index equation rejects the five leading roots") {
  const double l0 = solve_213_dominant(1e-10);
  const complex<double> l1 = polish_213_complex_root({0.21, 0.21}, 1e-12);
  const complex<double> l3 = polish_213_complex_root({-0.17, 0.24}, 1e-12);
  for (const complex<double> l :
       {complex<double>{l0, 0.0}, l1, std::conj(l1), l3, std::conj(l3)}) {
    CHECK_FALSE(check_213_index(l));
    CHECK(index_residual_213(l) > 1e-3);
  }
}

TEST_CASE("index equation accepts a synthetic root") {
  // real root of exp(-1/(2 l^2)) = l - 1, bracketed on (1, 2)
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::exp(-1.0 / (2.0 * mid * mid)) - (mid - 1.0) > 0 ? lo : hi) = mid;
  }
  CHECK(check_213_index({lo, 0.0}));
}

TEST_CASE("Euler numbers from the Seidel triangle") {
  const EulerTable t = euler_numbers(15);
  const long expected[] = {1, 1, 1, 2, 5, 16, 61, 272};
  for (int n = 0; n <= 7; ++n) CHECK(t.at(n) == expected[n]);
  for (int n = 0; n <= 9; ++n) CHECK(t.at(n) == count_alternating(n));
  CHECK(t.at(15) == 1903757312);
}

TEST_CASE("2 E_n equals the alternating avoider count") {
  const EulerTable t = euler_numbers(8);
  for (int n = 2; n <= 8; ++n)
    CHECK(2 * t.at(n) == brute_force_count(set_of("{123,321}"), n));
}

TEST_CASE("E_n/n! ratios decrease") {
  const EulerTable t = euler_numbers(20);
  for (int n = 2; n <= 20; ++n) {
    // E_n/n! < E_{n-1}/(n-1)!
    CHECK(t.at(n) < BigInt(n) * t.at(n - 1));
  }
}

TEST_CASE("Euler expansion") {
  const EulerTable t = euler_numbers(12);
  const double e6 = ratio_to_double(t.at(6), factorial(6));
  CHECK(std::abs(euler_expansion(6, 99) - e6) <= 1e-10);

  CHECK(euler_expansion(1, 1) ==
        doctest::Approx(8.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-12));

  // partial sums straddle the limit while terms alternate
  CHECK((euler_expansion(6, 1) - e6) * (euler_expansion(6, 3) - e6) < 0);

  CHECK_THROWS_AS(euler_expansion(6, 100), NotOdd);
}

TEST_CASE("triple pattern ladder and counts") {
  CHECK(eigenvalues_triple(1) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
  CHECK(eigenvalues_triple(3) ==
        doctest::Approx(-2.0 / (3.0 * std::numbers::pi)).epsilon(1e-12));
  CHECK_THROWS_AS(eigenvalues_triple(4), NotOdd);

  CHECK(exact_count_triple(4) == 8);
  CHECK(exact_count_triple(4) == brute_force_count(set_of("{123,231,312}"), 4));
  CHECK(triple_coefficient(2.0 / std::numbers::pi) ==
        doctest::Approx(8.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("triple pattern series converges to the exact ratio") {
  const CountTable t = pyramid_count(set_of("{123,231,312}"), 14);
  // j <= 999 reaches ~5e-11 at n = 4 (tail of a p-series); from n = 5 on the
  // partial sums sit within 1e-12 of the exact value
  CHECK(std::abs(triple_series(4, 999) - t.alpha_over_nfact(4)) <= 1e-10);
  for (int n = 5; n <= 14; ++n)
    CHECK(std::abs(triple_series(n, 999) - t.alpha_over_nfact(n)) <= 1e-12);
}

TEST_CASE("expansion term lists") {
  const auto e123 = expansion_terms_123(1);
  REQUIRE(e123.size() == 3);
  CHECK(e123[0].lambda.real() == doctest::Approx(0.8269933431).epsilon(1e-9));
  CHECK(e123[1].lambda.real() == doctest::Approx(-0.4134966716).epsilon(1e-9));
  CHECK(e123[1].c.real() < 0);  // odd-index sign
  CHECK(e123[2].lambda.real() == doctest::Approx(0.2067483358).epsilon(1e-9));

  const auto e213 = expansion_terms_213(1e-12);
  REQUIRE(e213.size() == 5);
  CHECK(e213[0].lambda.real() == doctest::Approx(0.7839769312).epsilon(1e-9));
  CHECK(e213[1].lambda == std::conj(e213[2].lambda));
  CHECK(e213[3].lambda == std::conj(e213[4].lambda));
}
