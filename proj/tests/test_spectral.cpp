#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "pspec/closedform.hpp"
#include "pspec/spectral.hpp"

using namespace pspec;
using std::complex;

namespace {

PatternSet set_of(std::string_view text) { return PatternSet::from_string(text); }

GridFunction random_function(GridSpec spec, std::mt19937& rng, bool complex_valued = true) {
  GridFunction f(spec);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = complex_valued ? complex<double>(dist(rng), dist(rng)) : complex<double>(dist(rng));
  return f;
}

// Direct-summation oracle built from chi on node values, independent of the
// rank-code kernel. The integration node sits mid-cell, so each cell's
// indicator average equals the half-sum of chi just below and just above it;
// away from ties both evaluations coincide with chi at the node.
GridFunction oracle_apply_T(const PatternSet& s, const GridFunction& f) {
  const GridSpec spec = f.spec();
  const int m = spec.m, N = spec.N;
  const double h = 1.0 / (4.0 * N);
  GridFunction out(spec);
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (std::size_t o = 0; o < out.size(); ++o) {
    out.decode(o, idx);
    complex<double> acc = 0.0;
    for (int t = 0; t < N; ++t) {
      std::vector<double> window{spec.node(t)};
      for (int a = 0; a < m; ++a) window.push_back(spec.node(idx[static_cast<std::size_t>(a)]));
      std::vector<int> in_idx{t};
      for (int a = 0; a + 1 < m; ++a) in_idx.push_back(idx[static_cast<std::size_t>(a)]);
      double w = 0.0;
      for (const double shift : {-h, h}) {
        window[0] = spec.node(t) + shift;
        w += 0.5 * chi(s, window);
      }
      acc += w * f[f.encode(in_idx)];
    }
    out[o] = acc / static_cast<double>(N);
  }
  return out;
}

GridFunction oracle_apply_T_adjoint(const PatternSet& s, const GridFunction& f) {
  const GridSpec spec = f.spec();
  const int m = spec.m, N = spec.N;
  const double h = 1.0 / (4.0 * N);
  GridFunction out(spec);
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (std::size_t o = 0; o < out.size(); ++o) {
    out.decode(o, idx);
    complex<double> acc = 0.0;
    for (int u = 0; u < N; ++u) {
      std::vector<double> window;
      for (int a = 0; a < m; ++a) window.push_back(spec.node(idx[static_cast<std::size_t>(a)]));
      window.push_back(spec.node(u));
      std::vector<int> in_idx(idx.begin() + 1, idx.end());
      in_idx.push_back(u);
      double w = 0.0;
      for (const double shift : {-h, h}) {
        window.back() = spec.node(u) + shift;
        w += 0.5 * chi(s, window);
      }
      acc += w * f[f.encode(in_idx)];
    }
    out[o] = acc / static_cast<double>(N);
  }
  return out;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

bool has_tied_indices(const GridFunction& f, std::size_t flat) {
  std::vector<int> idx(static_cast<std::size_t>(f.spec().m));
  f.decode(flat, idx);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (idx[a] == idx[b]) return true;
  return false;
}

double max_abs_diff_untied(const GridFunction& a, const GridFunction& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (has_tied_indices(a, i)) continue;
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

// Closed-form eigenfunction of the double-ascent operator; diagonal nodes
// carry the mean of the two one-sided branch values, matching the kernel's
// tie averaging.
GridFunction analytic_phi_123(GridSpec spec, double lambda) {
  GridFunction f(spec);
  const double s32 = std::numbers::sqrt3 / 2.0;
  for (int i = 0; i < spec.N; ++i) {
    for (int j = 0; j < spec.N; ++j) {
      const double x = spec.node(i);
      const double damp = std::exp(-x / (2.0 * lambda));
      const double below = damp * std::cos(std::numbers::pi / 6.0 + s32 * x / lambda);
      const double above = damp * std::sin(std::numbers::pi / 3.0 + s32 * x / lambda);
      const double value = i < j ? below : i > j ? above : 0.5 * (below + above);
      std::vector<int> idx{i, j};
      f[f.encode(idx)] = value;
    }
  }
  return f;
}

}  // namespace

TEST_CASE("apply_T matches the direct-summation oracle off the tie set") {
  std::mt19937 rng(3);
  for (const char* text : {"{123}", "{213}", "{132,231}", "{123,321}"}) {
    const PatternSet s = set_of(text);
    const GridFunction f = random_function({2, 4}, rng);
    CHECK(max_abs_diff_untied(apply_T(s, f), oracle_apply_T(s, f)) < 1e-15);
    CHECK(max_abs_diff_untied(apply_T_adjoint(s, f), oracle_apply_T_adjoint(s, f)) < 1e-15);
  }
  const PatternSet s3 = PatternSet(3, {Pattern::from_string("1234"), Pattern::from_string("2143")});
  const GridFunction f3 = random_function({3, 4}, rng);
  CHECK(max_abs_diff_untied(apply_T(s3, f3), oracle_apply_T(s3, f3)) < 1e-15);
  CHECK(max_abs_diff_untied(apply_T_adjoint(s3, f3), oracle_apply_T_adjoint(s3, f3)) < 1e-15);
}

TEST_CASE("tied outputs average over the local orderings") {
  // At output (x,x) for the double-ascent set: cells below x allow half of
  // the two orderings, the triple tie allows 5 of 6, cells above allow all.
  const GridSpec spec{2, 4};
  std::mt19937 rng(7);
  const GridFunction f = random_function(spec, rng);
  const GridFunction out = apply_T(set_of("{123}"), f);
  for (int i = 0; i < spec.N; ++i) {
    complex<double> expect = 0.0;
    for (int t = 0; t < spec.N; ++t) {
      const double w = t < i ? 0.5 : t == i ? 5.0 / 6.0 : 1.0;
      std::vector<int> in_idx{t, i};
      expect += w * f[f.encode(in_idx)];
    }
    expect /= spec.N;
    std::vector<int> out_idx{i, i};
    CHECK(std::abs(out[out.encode(out_idx)] - expect) < 1e-15);
  }
}

TEST_CASE("parallel kernels agree with the serial reference exactly") {
  std::mt19937 rng(11);
  const PatternSet s = set_of("{213}");
  const GridFunction f = random_function({2, 32}, rng);
  const GridFunction a = apply_T(s, f);
  const GridFunction b = apply_T_serial(s, f);
  CHECK(a.values() == b.values());
  const GridFunction c = apply_T_adjoint(s, f);
  const GridFunction d = apply_T_adjoint_serial(s, f);
  CHECK(c.values() == d.values());
}

TEST_CASE("forbidding every pattern kills the operator") {
  std::mt19937 rng(5);
  const PatternSet all(2, all_patterns(3));
  const GridFunction f = random_function({2, 8}, rng);
  CHECK(norm(apply_T(all, f)) == 0.0);
  CHECK(norm(apply_T_adjoint(all, f)) == 0.0);
}

TEST_CASE("empty set fixes the constant function exactly") {
  for (const GridSpec spec : {GridSpec{2, 8}, GridSpec{3, 4}}) {
    const GridFunction one = GridFunction::constant(spec);
    const GridFunction out = apply_T(PatternSet(spec.m), one);
    for (std::size_t o = 0; o < out.size(); ++o) CHECK(out[o] == complex<double>(1.0));
  }
}

TEST_CASE("123 window count at N=4") {
  // ascending output pair (x1 < x2): cells with t strictly below x1 realize
  // the forbidden window, the cell at t = x1 contributes its allowed half,
  // everything above x1 is allowed: (N - i1 - 1/2)/N
  const GridSpec spec{2, 4};
  const GridFunction out = apply_T(set_of("{123}"), GridFunction::constant(spec));
  std::vector<int> idx(2);
  for (std::size_t o = 0; o < out.size(); ++o) {
    out.decode(o, idx);
    if (idx[0] < idx[1])
      CHECK(out[o].real() == doctest::Approx((spec.N - idx[0] - 0.5) / spec.N).epsilon(1e-15));
  }
}

TEST_CASE("adjointness identity") {
  std::mt19937 rng(17);
  for (const GridSpec spec : {GridSpec{2, 16}, GridSpec{3, 8}}) {
    const PatternSet s =
        spec.m == 2 ? set_of("{123}") : PatternSet(3, {Pattern::from_string("1243")});
    for (int trial = 0; trial < 100; ++trial) {
      const GridFunction f = random_function(spec, rng);
      const GridFunction g = random_function(spec, rng);
      const complex<double> lhs = inner_product(apply_T(s, f), g);
      const complex<double> rhs = inner_product(f, apply_T_adjoint(s, g));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * norm(f) * norm(g));
    }
  }
}

TEST_CASE("inner product basics") {
  const GridSpec spec{2, 16};
  const GridFunction one = GridFunction::constant(spec);
  CHECK(inner_product(one, one) == complex<double>(1.0));
  std::mt19937 rng(23);
  const GridFunction f = random_function(spec, rng);
  CHECK(inner_product(f, f).real() >= 0.0);
  CHECK(std::abs(inner_product(f, f).imag()) < 1e-15);
  CHECK_THROWS_AS(inner_product(f, GridFunction::constant({2, 8})), ArityMismatch);
}

TEST_CASE("analytic eigenfunction pairing value") {
  const double l0 = eigenvalues_123(0);
  const GridSpec spec{2, 64};
  const GridFunction phi = analytic_phi_123(spec, l0);
  const GridFunction one = GridFunction::constant(spec);
  const double expected = std::numbers::sqrt3 / 2.0 * l0 * l0;
  CHECK(inner_product(phi, one).real() == doctest::Approx(expected).epsilon(2e-2));
}

TEST_CASE("positivity, norm bound, conjugation") {
  std::mt19937 rng(29);
  const GridSpec spec{2, 16};
  for (const char* text : {"{123}", "{213}", "{123,321}"}) {
    const PatternSet s = set_of(text);
    GridFunction f = random_function(spec, rng, false);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::abs(f[i].real());
    const GridFunction tf = apply_T(s, f);
    for (std::size_t i = 0; i < tf.size(); ++i) CHECK(tf[i].real() >= 0.0);

    const GridFunction g = random_function(spec, rng);
    CHECK(norm(apply_T(s, g)) <= norm(g) * (1 + 1e-15));

    GridFunction conj_g = g;
    for (std::size_t i = 0; i < conj_g.size(); ++i) conj_g[i] = std::conj(conj_g[i]);
    const GridFunction a = apply_T(s, conj_g);
    const GridFunction b = apply_T(s, g);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == std::conj(b[i]));
  }
}

TEST_CASE("involutions J and R") {
  std::mt19937 rng(31);
  for (const GridSpec spec : {GridSpec{2, 16}, GridSpec{3, 6}}) {
    const GridFunction f = random_function(spec, rng);
    const GridFunction jj = involution_J(involution_J(f));
    const GridFunction rr = involution_R(involution_R(f));
    CHECK(jj.values() == f.values());
    CHECK(rr.values() == f.values());
  }
}

TEST_CASE("J symmetry holds exactly for reverse-complement closed sets") {
  CHECK(kernel_J_symmetric(set_of("{123}")));
  CHECK(kernel_J_symmetric(set_of("{123,321}")));
  CHECK(kernel_J_symmetric(set_of("{123,231,312}")));
  CHECK_FALSE(kernel_J_symmetric(set_of("{213}")));

  std::mt19937 rng(37);
  const GridSpec spec{2, 16};
  for (const char* text : {"{123}", "{123,321}", "{123,231,312}"}) {
    const PatternSet s = set_of(text);
    const GridFunction f = random_function(spec, rng);
    const GridFunction lhs = apply_T_adjoint(s, f);
    const GridFunction rhs = involution_J(apply_T(s, involution_J(f)));
    CHECK(max_abs_diff(lhs, rhs) <= 1e-13);  // same terms, different sum order
  }
}

TEST_CASE("213 breaks the J symmetry with an explicit witness") {
  const PatternSet s = set_of("{213}");
  const GridSpec spec{2, 4};
  double worst = 0;
  for (std::size_t b = 0; b < spec.size(); ++b) {
    GridFunction f(spec);
    f[b] = 1.0;
    const GridFunction lhs = apply_T_adjoint(s, f);
    const GridFunction rhs = involution_J(apply_T(s, involution_J(f)));
    worst = std::max(worst, max_abs_diff(lhs, rhs));
  }
  CHECK(worst > 0.05);
}

TEST_CASE("R symmetry for a reverse-closed set") {
  const PatternSet s = set_of("{132,231}");  // closed under reversal
  std::mt19937 rng(41);
  const GridFunction f = random_function({2, 16}, rng);
  const GridFunction lhs = apply_T_adjoint(s, f);
  const GridFunction rhs = involution_R(apply_T(s, involution_R(f)));
  CHECK(max_abs_diff(lhs, rhs) <= 1e-13);
}

TEST_CASE("power iteration on the known dominant eigenvalues") {
  const EigenPair p123 = power_iteration(set_of("{123}"), {2, 128});
  CHECK(std::abs(p123.eigenvalue.real() - 0.8269933431326881) < 1.5e-2);
  CHECK(std::abs(p123.eigenvalue.imag()) < 1e-12);
  CHECK(p123.residual < 1e-8);

  // re-verify the stored residual with one extra application
  GridFunction diff = apply_T(set_of("{123}"), p123.phi);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= p123.eigenvalue * p123.phi[i];
  CHECK(norm(diff) <= p123.residual + 1e-12);

  // adjoint eigenfunction pairs to the same eigenvalue
  GridFunction adj = apply_T_adjoint(set_of("{123}"), p123.psi);
  for (std::size_t i = 0; i < adj.size(); ++i) adj[i] -= p123.eigenvalue * p123.psi[i];
  CHECK(norm(adj) < 1e-7);

  // coefficient approaches lambda^3 exp(1/(2 lambda)) as N grows
  const double lam = 0.8269933431326881;
  const double c_exact = lam * lam * lam * std::exp(1.0 / (2.0 * lam));
  CHECK(std::abs(p123.coefficient.real() - c_exact) < 2e-2);

  const EigenPair p213 = power_iteration(set_of("{213}"), {2, 128});
  CHECK(std::abs(p213.eigenvalue.real() - 0.7839769312) < 1.5e-2);

  CHECK_THROWS_AS(power_iteration(set_of("{123,321}"), {2, 32}), NotDominated);
  CHECK_THROWS_AS(power_iteration(PatternSet(2, all_patterns(3)), {2, 16}),
                  DegenerateOperator);
}

TEST_CASE("richardson extrapolation") {
  CHECK(richardson(0.8300, 0.8285) == doctest::Approx(0.8270).epsilon(1e-12));
  CHECK(richardson(0.5, 0.5) == 0.5);
  const double l64 = power_iteration(set_of("{123}"), {2, 64}).eigenvalue.real();
  const double l128 = power_iteration(set_of("{123}"), {2, 128}).eigenvalue.real();
  CHECK(std::abs(richardson(l64, l128) - 0.8269933431326881) < 2e-4);
}

TEST_CASE("extrapolated dominants meet the closed forms") {
  // every family with a closed-form dominant eigenvalue agrees with the
  // extrapolated grid value to 1e-3
  const struct {
    const char* text;
    double expected;
  } cases[] = {
      {"{123}", 0.8269933431326881},
      {"{213}", 0.7839769312},
      {"{123,231,312}", 2.0 / std::numbers::pi},
  };
  for (const auto& c : cases) {
    const double a = power_iteration(set_of(c.text), {2, 64}).eigenvalue.real();
    const double b = power_iteration(set_of(c.text), {2, 128}).eigenvalue.real();
    CHECK(std::abs(richardson(a, b) - c.expected) < 1e-3);
  }
}

TEST_CASE("arnoldi finds the 123 ladder head") {
  const ArnoldiResult r = arnoldi_eigs(set_of("{123}"), {2, 128}, 3, 24);
  REQUIRE(r.pairs.size() == 3);
  CHECK_FALSE(r.breakdown);
  CHECK(r.pairs[0].eigenvalue.real() == doctest::Approx(0.8269933431).epsilon(2e-2));
  CHECK(r.pairs[1].eigenvalue.real() == doctest::Approx(-0.4134966716).epsilon(3e-2));
  CHECK(r.pairs[2].eigenvalue.real() == doctest::Approx(0.2067483358).epsilon(9e-2));
  for (const EigenPair& p : r.pairs) {
    GridFunction diff = apply_T(set_of("{123}"), p.phi);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= p.eigenvalue * p.phi[i];
    CHECK(norm(diff) <= p.residual + 1e-10);
  }
}

TEST_CASE("arnoldi resolves the alternating pair") {
  // the tie-cell coupling splits the discrete +/- pair by O(1/N)
  const ArnoldiResult lo = arnoldi_eigs(set_of("{123,321}"), {2, 64}, 2, 24);
  REQUIRE(lo.pairs.size() == 2);
  const double split64 = std::abs(lo.pairs[0].eigenvalue + lo.pairs[1].eigenvalue);
  CHECK(split64 < 2e-2);
  const ArnoldiResult hi = arnoldi_eigs(set_of("{123,321}"), {2, 128}, 2, 24);
  const double split128 = std::abs(hi.pairs[0].eigenvalue + hi.pairs[1].eigenvalue);
  CHECK(split128 < 0.75 * split64);
  const double two_over_pi = 2.0 / std::numbers::pi;
  const double extrapolated =
      richardson(std::abs(lo.pairs[0].eigenvalue), std::abs(hi.pairs[0].eigenvalue));
  CHECK(std::abs(extrapolated - two_over_pi) < 5e-3);
}

TEST_CASE("arnoldi reports the 213 complex pairs as exact conjugates") {
  const ArnoldiResult r = arnoldi_eigs(set_of("{213}"), {2, 128}, 5, 30);
  REQUIRE(r.pairs.size() >= 5);
  CHECK(r.pairs[0].eigenvalue.real() == doctest::Approx(0.7839769312).epsilon(2e-2));
  // both known conjugate pairs appear among the top five, up to grid error
  const complex<double> root1{0.2141426360, 0.2085807022};
  const complex<double> root3{-0.1677323922, 0.2418627350};
  for (const complex<double> target : {root1, root3}) {
    double best = 1.0;
    for (const EigenPair& p : r.pairs) best = std::min(best, std::abs(p.eigenvalue - target));
    CHECK(best < 2.5e-2);
  }
  // conjugate symmetrization is exact
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    if (std::abs(r.pairs[i].eigenvalue.imag()) == 0.0) continue;
    bool mate = false;
    for (std::size_t j = 0; j < r.pairs.size(); ++j)
      if (j != i && r.pairs[j].eigenvalue == std::conj(r.pairs[i].eigenvalue)) mate = true;
    CHECK(mate);
  }
}

TEST_CASE("arnoldi breakdown on the zero operator") {
  const ArnoldiResult r = arnoldi_eigs(PatternSet(2, all_patterns(3)), {2, 8}, 1, 8);
  CHECK(r.breakdown);
  REQUIRE(!r.pairs.empty());
  CHECK(std::abs(r.pairs[0].eigenvalue) == 0.0);
  CHECK_THROWS_AS(arnoldi_eigs(set_of("{123}"), {2, 8}, 5, 4), OutOfRange);
  CHECK_THROWS_AS(arnoldi_eigs(set_of("{123}"), {2, 8}, 5, 100), OutOfRange);
}

TEST_CASE("analytic 123 eigenfunctions satisfy the eigenvalue equation on the grid") {
  for (const int k : {0, -1, 1}) {
    const double lk = eigenvalues_123(k);
    for (const int N : {64, 128, 256}) {
      const GridSpec spec{2, N};
      const GridFunction phi = analytic_phi_123(spec, lk);
      GridFunction diff = apply_T(set_of("{123}"), phi);
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= lk * phi[i];
      CHECK(norm(diff) / norm(phi) <= 5.0 / N);
    }
  }
}

TEST_CASE("key identity against exact counts") {
  const PatternSet s = set_of("{123}");
  const CountTable t = pyramid_count(s, 10);
  const auto rows64 = verify_key_identity(s, {2, 64}, 6, t);
  CHECK(rows64[0].grid_value == 1.0);
  CHECK(rows64[0].exact_value == 1.0);
  CHECK(rows64[1].exact_value == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  // single-window sums are exact under the ordering-average quadrature;
  // deeper powers pick up an O(1/N^2) gap
  for (const auto& row : rows64) {
    if (row.k <= 1)
      CHECK(std::abs(row.gap) <= 1e-14);
    else
      CHECK(std::abs(row.gap) <= 1e-2 * row.exact_value);
  }
  // the ordering-average quadrature makes these grid sums exact up to
  // rounding, so the doubling comparison needs a noise floor
  const auto rows128 = verify_key_identity(s, {2, 128}, 6, t);
  for (std::size_t i = 1; i < rows128.size(); ++i)
    CHECK(std::abs(rows128[i].gap) <= std::max(0.7 * std::abs(rows64[i].gap), 1e-13));
  CHECK_THROWS_AS(verify_key_identity(s, {2, 16}, 10, t), OutOfRange);
}

TEST_CASE("grid function file round trip") {
  std::mt19937 rng(43);
  GridFunction f = random_function({2, 8}, rng, false);
  std::stringstream buf;
  save_grid_function(buf, f);
  CHECK(buf.str().size() == 16 + 8 * f.size());
  const GridFunction g = load_grid_function(buf);
  CHECK(g.spec() == f.spec());
  CHECK(g.values() == f.values());

  std::stringstream bad("short");
  CHECK_THROWS_AS(load_grid_function(bad), Error);
}

TEST_CASE("eigen report json shape") {
  const EigenPair p = power_iteration(set_of("{123}"), {2, 32});
  const nlohmann::json j = eigen_report_json(set_of("{123}"), {2, 32}, {p}, 0.827);
  CHECK(j["pattern_set"] == "{123}");
  CHECK(j["N"] == 32);
  CHECK(j["eigenvalues"].size() == 1);
  CHECK(j["eigenvalues"][0].contains("residual"));
  CHECK(j["extrapolated_dominant"] == 0.827);
}
