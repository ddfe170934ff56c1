#include "pspec/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <istream>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pspec {

namespace {

void check_dims(const PatternSet& s, const GridFunction& f) {
  if (f.spec().m != s.m())
    throw ArityMismatch("grid dimension " + std::to_string(f.spec().m) +
                        " does not match pattern window order " + std::to_string(s.m()));
}

// Average of the window indicator over independent within-cell perturbations
// of tied coordinates: uniform over the relative orderings of each tied
// group. Coincides with the plain indicator on tie-free windows.
double window_weight(const ChiTable& table, std::span<const int> window) {
  const int k = static_cast<int>(window.size());
  std::vector<int> order(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return window[static_cast<std::size_t>(a)] < window[static_cast<std::size_t>(b)]; });
  // group boundaries over equal values, in sorted position space
  std::vector<std::pair<int, int>> groups;
  int start = 0;
  for (int i = 1; i <= k; ++i) {
    if (i == k || window[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] !=
                      window[static_cast<std::size_t>(order[static_cast<std::size_t>(start)])]) {
      groups.push_back({start, i});
      start = i;
    }
  }
  int pw[9];
  pw[0] = 1;
  for (int i = 1; i < k; ++i) pw[i] = pw[i - 1] * k;
  std::vector<int> rank(static_cast<std::size_t>(k));
  double total = 0;
  long combos = 0;
  // odometer over per-group permutations of within-group ranks
  std::vector<std::vector<int>> offsets;
  for (const auto& [lo, hi] : groups) {
    std::vector<int> ids(static_cast<std::size_t>(hi - lo));
    for (int i = 0; i < hi - lo; ++i) ids[static_cast<std::size_t>(i)] = i;
    offsets.push_back(std::move(ids));
  }
  while (true) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto [lo, hi] = groups[g];
      for (int i = lo; i < hi; ++i)
        rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
            lo + offsets[g][static_cast<std::size_t>(i - lo)];
    }
    int code = 0;
    for (int i = 0; i < k; ++i) code += rank[static_cast<std::size_t>(i)] * pw[i];
    total += table.at_code(code);
    ++combos;
    std::size_t g = 0;
    while (g < offsets.size() && !std::next_permutation(offsets[g].begin(), offsets[g].end()))
      ++g;
    if (g == offsets.size()) break;
  }
  return total / static_cast<double>(combos);
}

template <typename Fn>
void run_chunks(std::int64_t total, bool parallel, Fn&& fn) {
  if (!parallel) {
    fn(std::int64_t{0}, total);
    return;
  }
#pragma omp parallel
  {
#ifdef _OPENMP
    const int threads = omp_get_num_threads();
    const int id = omp_get_thread_num();
#else
    const int threads = 1;
    const int id = 0;
#endif
    const std::int64_t chunk = (total + threads - 1) / threads;
    const std::int64_t lo = std::min<std::int64_t>(total, id * chunk);
    const std::int64_t hi = std::min<std::int64_t>(total, lo + chunk);
    fn(lo, hi);
  }
}

GridFunction apply_T_impl(const PatternSet& s, const GridFunction& f, bool parallel) {
  check_dims(s, f);
  const GridSpec spec = f.spec();
  const int m = spec.m;
  const int N = spec.N;
  const int k = m + 1;
  const ChiTable table(s);
  int pw[9];
  pw[0] = 1;
  for (int i = 1; i <= m; ++i) pw[i] = pw[i - 1] * k;
  GridFunction out(spec);
  const auto* in = f.values().data();
  auto* ov = out.values().data();
  const std::size_t lower = spec.size() / static_cast<std::size_t>(N);  // N^(m-1)
  run_chunks(static_cast<std::int64_t>(spec.size()), parallel, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (std::int64_t o = lo; o < hi; ++o) {
      std::size_t rest = static_cast<std::size_t>(o);
      for (int a = 0; a < m; ++a) {
        idx[static_cast<std::size_t>(a)] = static_cast<int>(rest % static_cast<std::size_t>(N));
        rest /= static_cast<std::size_t>(N);
      }
      // window tuple is (t, x1..xm): slot 0 varies with t, slots 1..m are fixed
      int base = 0;
      bool output_tied = false;
      for (int a = 0; a < m; ++a) {
        int r = 0;
        for (int b = 0; b < m; ++b) {
          r += idx[static_cast<std::size_t>(b)] < idx[static_cast<std::size_t>(a)];
          if (b != a && idx[static_cast<std::size_t>(b)] == idx[static_cast<std::size_t>(a)])
            output_tied = true;
        }
        base += r * pw[a + 1];
      }
      const std::size_t in_base =
          static_cast<std::size_t>(N) * (static_cast<std::size_t>(o) % lower);
      std::complex<double> acc = 0.0;
      if (output_tied) {  // rare: fall back to the general ordering average
        std::vector<int> window(static_cast<std::size_t>(m + 1));
        std::copy(idx.begin(), idx.end(), window.begin() + 1);
        for (int t = 0; t < N; ++t) {
          window[0] = t;
          const double w = window_weight(table, window);
          if (w != 0.0) acc += w * in[in_base + static_cast<std::size_t>(t)];
        }
        ov[o] = acc / static_cast<double>(N);
        continue;
      }
      for (int t = 0; t < N; ++t) {
        int code = base;
        int rank_t = 0;
        int tie = -1;
        for (int a = 0; a < m; ++a) {
          const int xa = idx[static_cast<std::size_t>(a)];
          rank_t += xa < t;
          code += (t < xa) * pw[a + 1];
          if (xa == t) tie = a;
        }
        code += rank_t;  // pw[0] == 1
        double w;
        if (tie < 0) {
          w = table.at_code(code);
        } else {
          // t sits exactly mid-cell on the tied node: the cell average of the
          // indicator is the half-sum over the two adjacent orderings
          w = 0.5 * (table.at_code(code + pw[tie + 1]) + table.at_code(code + 1));
        }
        if (w != 0.0) acc += w * in[in_base + static_cast<std::size_t>(t)];
      }
      ov[o] = acc / static_cast<double>(N);
    }
  });
  return out;
}

GridFunction apply_T_adjoint_impl(const PatternSet& s, const GridFunction& f, bool parallel) {
  check_dims(s, f);
  const GridSpec spec = f.spec();
  const int m = spec.m;
  const int N = spec.N;
  const int k = m + 1;
  const ChiTable table(s);
  int pw[9];
  pw[0] = 1;
  for (int i = 1; i <= m; ++i) pw[i] = pw[i - 1] * k;
  GridFunction out(spec);
  const auto* in = f.values().data();
  auto* ov = out.values().data();
  const std::size_t lower = spec.size() / static_cast<std::size_t>(N);  // N^(m-1)
  run_chunks(static_cast<std::int64_t>(spec.size()), parallel, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (std::int64_t o = lo; o < hi; ++o) {
      std::size_t rest = static_cast<std::size_t>(o);
      for (int a = 0; a < m; ++a) {
        idx[static_cast<std::size_t>(a)] = static_cast<int>(rest % static_cast<std::size_t>(N));
        rest /= static_cast<std::size_t>(N);
      }
      // window tuple is (x1..xm, u): slots 0..m-1 fixed, slot m varies with u
      int base = 0;
      bool output_tied = false;
      for (int a = 0; a < m; ++a) {
        int r = 0;
        for (int b = 0; b < m; ++b) {
          r += idx[static_cast<std::size_t>(b)] < idx[static_cast<std::size_t>(a)];
          if (b != a && idx[static_cast<std::size_t>(b)] == idx[static_cast<std::size_t>(a)])
            output_tied = true;
        }
        base += r * pw[a];
      }
      const std::size_t in_base = static_cast<std::size_t>(o) / static_cast<std::size_t>(N);
      std::complex<double> acc = 0.0;
      if (output_tied) {
        std::vector<int> window(static_cast<std::size_t>(m + 1));
        std::copy(idx.begin(), idx.end(), window.begin());
        for (int u = 0; u < N; ++u) {
          window[static_cast<std::size_t>(m)] = u;
          const double w = window_weight(table, window);
          if (w != 0.0) acc += w * in[in_base + lower * static_cast<std::size_t>(u)];
        }
        ov[o] = acc / static_cast<double>(N);
        continue;
      }
      for (int u = 0; u < N; ++u) {
        int code = base;
        int rank_u = 0;
        int tie = -1;
        for (int a = 0; a < m; ++a) {
          const int xa = idx[static_cast<std::size_t>(a)];
          rank_u += xa < u;
          code += (u < xa) * pw[a];
          if (xa == u) tie = a;
        }
        code += rank_u * pw[m];
        double w;
        if (tie < 0) {
          w = table.at_code(code);
        } else {
          w = 0.5 * (table.at_code(code + pw[tie]) + table.at_code(code + pw[m]));
        }
        if (w != 0.0) acc += w * in[in_base + lower * static_cast<std::size_t>(u)];
      }
      ov[o] = acc / static_cast<double>(N);
    }
  });
  return out;
}

}  // namespace

GridFunction apply_T(const PatternSet& s, const GridFunction& f) {
  return apply_T_impl(s, f, true);
}
GridFunction apply_T_serial(const PatternSet& s, const GridFunction& f) {
  return apply_T_impl(s, f, false);
}
GridFunction apply_T_adjoint(const PatternSet& s, const GridFunction& f) {
  return apply_T_adjoint_impl(s, f, true);
}
GridFunction apply_T_adjoint_serial(const PatternSet& s, const GridFunction& f) {
  return apply_T_adjoint_impl(s, f, false);
}

std::complex<double> inner_product(const GridFunction& f, const GridFunction& g) {
  if (!(f.spec() == g.spec())) throw ArityMismatch("grid specs differ");
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
  return acc / static_cast<double>(f.size());
}

double norm(const GridFunction& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += std::norm(f[i]);
  return std::sqrt(acc / static_cast<double>(f.size()));
}

GridFunction involution_J(const GridFunction& f) {
  const GridSpec spec = f.spec();
  const int m = spec.m;
  GridFunction out(spec);
  std::vector<int> idx(static_cast<std::size_t>(m)), jdx(static_cast<std::size_t>(m));
  for (std::size_t o = 0; o < out.size(); ++o) {
    out.decode(o, idx);
    for (int a = 0; a < m; ++a)
      jdx[static_cast<std::size_t>(a)] = spec.N - 1 - idx[static_cast<std::size_t>(m - 1 - a)];
    out[o] = f[f.encode(jdx)];
  }
  return out;
}

GridFunction involution_R(const GridFunction& f) {
  const GridSpec spec = f.spec();
  const int m = spec.m;
  GridFunction out(spec);
  std::vector<int> idx(static_cast<std::size_t>(m)), jdx(static_cast<std::size_t>(m));
  for (std::size_t o = 0; o < out.size(); ++o) {
    out.decode(o, idx);
    for (int a = 0; a < m; ++a)
      jdx[static_cast<std::size_t>(a)] = idx[static_cast<std::size_t>(m - 1 - a)];
    out[o] = f[f.encode(jdx)];
  }
  return out;
}

bool kernel_J_symmetric(const PatternSet& s) {
  for (const Pattern& p : s.members())
    if (!s.contains(reverse(complement(p)))) return false;
  return true;
}

namespace {

void axpy(GridFunction& y, std::complex<double> a, const GridFunction& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void scale(GridFunction& f, std::complex<double> a) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= a;
}

// Unit norm with the leading non-negligible component rotated to the
// positive real axis.
void normalize_phase(GridFunction& f) {
  const double n = norm(f);
  if (n > 0) scale(f, 1.0 / n);
  double peak = 0;
  for (std::size_t i = 0; i < f.size(); ++i) peak = std::max(peak, std::abs(f[i]));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(f[i]) > 1e-12 * peak) {
      scale(f, std::conj(f[i]) / std::abs(f[i]));
      break;
    }
  }
}

// Start vector: 1 plus a tiny seeded dither. A start of exactly 1 can carry
// zero weight on one eigenfunction of a dominant +/- pair (the alternating
// case does this), which would hide the tie from the oscillation detector.
GridFunction dithered_start(GridSpec spec, std::uint64_t seed) {
  GridFunction x = GridFunction::constant(spec);
  std::mt19937_64 rng(seed);
  // 1e-3 amplitude: the projection onto any unit mode carries a 1/sqrt(N^m)
  // averaging loss and still has to clear the oscillation detector floor
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] += 1e-3 * (static_cast<double>(rng() >> 11) * 0x1p-53 - 0.5);
  return x;
}

double unit_distance(const GridFunction& a, const GridFunction& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return std::sqrt(acc / static_cast<double>(a.size()));
}

double dominant_estimate(const PatternSet& s, GridSpec spec, bool adjoint, double tol,
                         int max_iter, std::uint64_t seed, GridFunction& vec_out) {
  GridFunction x = dithered_start(spec, seed);
  scale(x, 1.0 / norm(x));
  GridFunction x_prev = x;
  double lambda = 0.0;
  double prev = 0.0;
  std::deque<double> window;
  for (int iter = 0; iter < max_iter; ++iter) {
    GridFunction y = adjoint ? apply_T_adjoint(s, x) : apply_T(s, x);
    const double ny = norm(y);
    if (!(ny > 0.0) || !std::isfinite(ny))
      throw DegenerateOperator("operator annihilated the iterate");
    lambda = inner_product(y, x).real();
    scale(y, 1.0 / ny);
    // a dominant +/- pair settles into a period-2 cycle of iterates; the
    // Rayleigh estimate alone can miss it (first-order cancellation)
    if (iter >= 2) {
      const double step = unit_distance(y, x);
      const double stride = unit_distance(y, x_prev);
      if (step > 10.0 * tol && step > 30.0 * stride)
        throw NotDominated("iterates oscillate with period 2; dominant pair or tie");
    }
    x_prev = std::move(x);
    x = std::move(y);
    if (iter > 0 && std::abs(lambda - prev) <= tol * std::abs(lambda)) break;
    prev = lambda;
    window.push_back(lambda);
    if (window.size() > 50) window.pop_front();
    if (window.size() == 50) {
      const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
      int flips = 0;
      for (std::size_t i = 2; i < window.size(); ++i) {
        const double d1 = window[i - 1] - window[i - 2];
        const double d2 = window[i] - window[i - 1];
        if (d1 * d2 < 0) ++flips;
      }
      if (*hi - *lo > 100.0 * tol * std::abs(lambda) && flips > 25)
        throw NotDominated("eigenvalue estimate oscillates; dominant pair or tie");
    }
  }
  vec_out = std::move(x);
  normalize_phase(vec_out);
  return lambda;
}

}  // namespace

EigenPair power_iteration(const PatternSet& s, GridSpec spec, double tol, int max_iter,
                          std::uint64_t seed) {
  if (!(tol > 0)) throw OutOfRange("tolerance must be positive");
  GridFunction phi(spec), psi(spec);
  const double lambda = dominant_estimate(s, spec, false, tol, max_iter, seed, phi);
  GridFunction t_phi = apply_T(s, phi);
  GridFunction diff = t_phi;
  axpy(diff, -lambda, phi);
  const double residual = norm(diff);
  if (residual > std::sqrt(tol) * std::max(1.0, std::abs(lambda)))
    throw NotDominated("power iteration stalled without a dominant eigenvalue");
  dominant_estimate(s, spec, true, tol, max_iter, seed, psi);
  const GridFunction one = GridFunction::constant(spec);
  const std::complex<double> c =
      inner_product(phi, one) * inner_product(one, psi) / inner_product(phi, psi);
  return {lambda, std::move(phi), std::move(psi), c, residual};
}

namespace {

struct RitzPair {
  std::complex<double> value;
  Eigen::VectorXcd weights;
};

// Arnoldi with modified Gram-Schmidt and one reorthogonalization pass.
// Returns the Ritz pairs of the Hessenberg matrix, largest modulus first.
std::vector<RitzPair> arnoldi_ritz(const PatternSet& s, GridSpec spec, int krylov_dim,
                                   bool adjoint, std::vector<GridFunction>& basis,
                                   bool& breakdown) {
  basis.clear();
  breakdown = false;
  GridFunction v = GridFunction::constant(spec);
  basis.push_back(std::move(v));
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(krylov_dim + 1, krylov_dim);
  int dim = 0;
  for (int j = 0; j < krylov_dim; ++j) {
    GridFunction w = adjoint ? apply_T_adjoint(s, basis[static_cast<std::size_t>(j)])
                             : apply_T(s, basis[static_cast<std::size_t>(j)]);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= j; ++i) {
        const std::complex<double> c = inner_product(w, basis[static_cast<std::size_t>(i)]);
        axpy(w, -c, basis[static_cast<std::size_t>(i)]);
        h(i, j) += c;
      }
    }
    const double nw = norm(w);
    dim = j + 1;
    if (nw <= 1e-12) {
      breakdown = true;
      break;
    }
    h(j + 1, j) = nw;
    if (j + 1 < krylov_dim) {
      scale(w, 1.0 / nw);
      basis.push_back(std::move(w));
    }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h.topLeftCorner(dim, dim));
  std::vector<RitzPair> pairs;
  for (int i = 0; i < dim; ++i) pairs.push_back({es.eigenvalues()(i), es.eigenvectors().col(i)});
  return pairs;
}

bool ritz_is_real(std::complex<double> z) {
  return std::abs(z.imag()) <= 1e-10 * (1.0 + std::abs(z));
}

// Snap near-real values to the axis and average near-conjugate partners into
// exact pairs; complex eigenvalues of a real operator come in such pairs.
void symmetrize_conjugates(std::vector<RitzPair>& ritz) {
  std::vector<int> mate(ritz.size(), -1);
  for (std::size_t i = 0; i < ritz.size(); ++i) {
    if (mate[i] >= 0 || ritz_is_real(ritz[i].value)) continue;
    double best = std::numeric_limits<double>::max();
    int pick = -1;
    for (std::size_t j = i + 1; j < ritz.size(); ++j) {
      if (mate[j] >= 0 || ritz_is_real(ritz[j].value)) continue;
      if (ritz[i].value.imag() * ritz[j].value.imag() >= 0) continue;
      const double d = std::abs(ritz[i].value - std::conj(ritz[j].value));
      if (d < best) {
        best = d;
        pick = static_cast<int>(j);
      }
    }
    if (pick >= 0) {
      mate[i] = pick;
      mate[static_cast<std::size_t>(pick)] = static_cast<int>(i);
      const std::complex<double> sym =
          0.5 * (ritz[i].value + std::conj(ritz[static_cast<std::size_t>(pick)].value));
      ritz[i].value = sym;
      ritz[static_cast<std::size_t>(pick)].value = std::conj(sym);
    }
  }
  for (RitzPair& p : ritz)
    if (ritz_is_real(p.value)) p.value = p.value.real();
  std::sort(ritz.begin(), ritz.end(), [](const RitzPair& a, const RitzPair& b) {
    const double ma = std::abs(a.value), mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
}

GridFunction combine(const std::vector<GridFunction>& basis, const Eigen::VectorXcd& w,
                     GridSpec spec) {
  GridFunction out(spec);
  for (int i = 0; i < w.size() && i < static_cast<int>(basis.size()); ++i)
    axpy(out, w(i), basis[static_cast<std::size_t>(i)]);
  normalize_phase(out);
  return out;
}

}  // namespace

ArnoldiResult arnoldi_eigs(const PatternSet& s, GridSpec spec, int k, int krylov_dim) {
  if (k < 1 || k >= krylov_dim || krylov_dim > 64)
    throw OutOfRange("need 1 <= k < krylov_dim <= 64");
  std::vector<GridFunction> basis, adjoint_basis;
  bool breakdown = false, adjoint_breakdown = false;
  std::vector<RitzPair> ritz = arnoldi_ritz(s, spec, krylov_dim, false, basis, breakdown);
  std::vector<RitzPair> left = arnoldi_ritz(s, spec, krylov_dim, true, adjoint_basis,
                                            adjoint_breakdown);
  symmetrize_conjugates(ritz);

  // Keep the top k by modulus, never splitting a conjugate pair.
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), ritz.size());
  if (take > 0 && take < ritz.size() && !ritz_is_real(ritz[take - 1].value) &&
      ritz[take].value == std::conj(ritz[take - 1].value))
    ++take;

  const GridFunction one = GridFunction::constant(spec);
  ArnoldiResult result;
  result.breakdown = breakdown || adjoint_breakdown;
  for (std::size_t i = 0; i < take; ++i) {
    EigenPair pair{ritz[i].value, combine(basis, ritz[i].weights, spec), GridFunction(spec),
                   0.0, 0.0};
    GridFunction t_phi = apply_T(s, pair.phi);
    axpy(t_phi, -pair.eigenvalue, pair.phi);
    pair.residual = norm(t_phi);

    // adjoint Ritz value nearest conj(lambda) supplies psi
    double best = std::numeric_limits<double>::max();
    const RitzPair* pick = nullptr;
    for (const RitzPair& lp : left) {
      const double d = std::abs(lp.value - std::conj(pair.eigenvalue));
      if (d < best) {
        best = d;
        pick = &lp;
      }
    }
    if (pick) {
      pair.psi = combine(adjoint_basis, pick->weights, spec);
      const std::complex<double> denom = inner_product(pair.phi, pair.psi);
      if (std::abs(denom) > 1e-300)
        pair.coefficient = inner_product(pair.phi, one) * inner_product(one, pair.psi) / denom;
    }
    result.pairs.push_back(std::move(pair));
  }
  return result;
}

double richardson(double lambda_N, double lambda_2N) { return 2.0 * lambda_2N - lambda_N; }

std::vector<KeyIdentityRow> verify_key_identity(const PatternSet& s, GridSpec spec, int k_max,
                                                const CountTable& counts) {
  if (counts.n_max() < s.m() + k_max)
    throw OutOfRange("count table too short for the requested powers");
  std::vector<KeyIdentityRow> rows;
  const GridFunction one = GridFunction::constant(spec);
  GridFunction g = one;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) g = apply_T(s, g);
    const double grid_value = inner_product(g, one).real();
    const double exact = counts.alpha_over_nfact(s.m() + k);
    rows.push_back({k, grid_value, exact, grid_value - exact});
  }
  return rows;
}

nlohmann::json eigen_report_json(const PatternSet& s, GridSpec spec,
                                 const std::vector<EigenPair>& pairs,
                                 std::optional<double> extrapolated_dominant) {
  nlohmann::json j;
  j["pattern_set"] = s.str();
  j["m"] = spec.m;
  j["N"] = spec.N;
  j["eigenvalues"] = nlohmann::json::array();
  for (const EigenPair& p : pairs) {
    j["eigenvalues"].push_back({{"re", p.eigenvalue.real()},
                                {"im", p.eigenvalue.imag()},
                                {"residual", p.residual},
                                {"coefficient_re", p.coefficient.real()},
                                {"coefficient_im", p.coefficient.imag()}});
  }
  j["extrapolated_dominant"] =
      extrapolated_dominant ? nlohmann::json(*extrapolated_dominant) : nlohmann::json(nullptr);
  return j;
}

void save_grid_function(std::ostream& os, const GridFunction& f) {
  static_assert(std::endian::native == std::endian::little);
  const std::uint64_t m = static_cast<std::uint64_t>(f.spec().m);
  const std::uint64_t n = static_cast<std::uint64_t>(f.spec().N);
  os.write(reinterpret_cast<const char*>(&m), 8);
  os.write(reinterpret_cast<const char*>(&n), 8);
  for (const auto& v : f.values()) {
    const double re = v.real();
    os.write(reinterpret_cast<const char*>(&re), 8);
  }
}

GridFunction load_grid_function(std::istream& is) {
  static_assert(std::endian::native == std::endian::little);
  std::uint64_t m = 0, n = 0;
  is.read(reinterpret_cast<char*>(&m), 8);
  is.read(reinterpret_cast<char*>(&n), 8);
  if (!is || m < 1 || m > 8 || n < 2) throw Error("malformed grid function header");
  GridFunction f(GridSpec{static_cast<int>(m), static_cast<int>(n)});
  for (std::size_t i = 0; i < f.size(); ++i) {
    double re = 0;
    is.read(reinterpret_cast<char*>(&re), 8);
    f[i] = re;
  }
  if (!is) throw Error("grid function payload truncated");
  return f;
}

}  // namespace pspec
