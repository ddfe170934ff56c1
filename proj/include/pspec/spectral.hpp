#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "json.hpp"
#include "pspec/core.hpp"
#include "pspec/enumerate.hpp"

namespace pspec {

// Midpoint grid on [0,1]^m. Nodes never touch 0/1 and two coordinates tie
// exactly when their indices agree, where the window indicator is 0 anyway.
struct GridSpec {
  int m = 2;
  int N = 64;

  double node(int i) const { return (2.0 * i + 1.0) / (2.0 * N); }
  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < m; ++a) s *= static_cast<std::size_t>(N);
    return s;
  }
  bool operator==(const GridSpec&) const = default;
};

// Complex-valued function sampled on the grid. Flat storage with the first
// coordinate fastest: index = i1 + N*i2 + ... + N^(m-1)*im.
class GridFunction {
 public:
  using value_type = std::complex<double>;

  explicit GridFunction(GridSpec spec)
      : spec_(spec), values_(spec.size(), value_type(0.0)) {}

  static GridFunction constant(GridSpec spec, value_type v = 1.0) {
    GridFunction f(spec);
    for (auto& x : f.values_) x = v;
    return f;
  }

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return values_.size(); }
  value_type& operator[](std::size_t i) { return values_[i]; }
  const value_type& operator[](std::size_t i) const { return values_[i]; }
  std::vector<value_type>& values() { return values_; }
  const std::vector<value_type>& values() const { return values_; }

  void decode(std::size_t flat, std::span<int> idx) const {
    for (int a = 0; a < spec_.m; ++a) {
      idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % static_cast<std::size_t>(spec_.N));
      flat /= static_cast<std::size_t>(spec_.N);
    }
  }
  std::size_t encode(std::span<const int> idx) const {
    std::size_t flat = 0;
    for (int a = spec_.m - 1; a >= 0; --a)
      flat = flat * static_cast<std::size_t>(spec_.N) + static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
    return flat;
  }

 private:
  GridSpec spec_;
  std::vector<value_type> values_;
};

// (T f)(x1..xm) = (1/N) sum_t w(t,x1,..,xm) f(t,x1,..,x_{m-1}); O(N^(m+1)).
// The weight w is the per-cell average of the window indicator: away from
// ties it equals chi, and a tied cell (the tie sits exactly mid-cell)
// contributes the mean over the orderings of the tied coordinates. This
// keeps T and T* exact adjoints and fixes the constant function under the
// empty pattern set.
GridFunction apply_T(const PatternSet& s, const GridFunction& f);
GridFunction apply_T_serial(const PatternSet& s, const GridFunction& f);

// (T* f)(x1..xm) = (1/N) sum_u chi(x1,..,xm,u) f(x2,..,xm,u); exact discrete
// adjoint of apply_T under the grid inner product.
GridFunction apply_T_adjoint(const PatternSet& s, const GridFunction& f);
GridFunction apply_T_adjoint_serial(const PatternSet& s, const GridFunction& f);

std::complex<double> inner_product(const GridFunction& f, const GridFunction& g);
double norm(const GridFunction& f);

// (J f)(x1..xm) = f(1-xm,..,1-x1); pure index permutation on this grid.
GridFunction involution_J(const GridFunction& f);
// (R f)(x1..xm) = f(xm,..,x1).
GridFunction involution_R(const GridFunction& f);

// True iff the window indicator satisfies chi(x1..x_{m+1}) =
// chi(1-x_{m+1},..,1-x1), which makes T* = J T J an exact operator identity
// on the grid. Equivalent to closure of s under reverse-complement.
bool kernel_J_symmetric(const PatternSet& s);

struct EigenPair {
  std::complex<double> eigenvalue;
  GridFunction phi;                  // right eigenfunction, unit norm
  GridFunction psi;                  // adjoint eigenfunction
  std::complex<double> coefficient;  // <phi,1><1,psi>/<phi,psi>
  double residual;                   // ||T phi - lambda phi|| / ||phi||
};

EigenPair power_iteration(const PatternSet& s, GridSpec spec, double tol = 1e-10,
                          int max_iter = 10000, std::uint64_t seed = 0);

struct ArnoldiResult {
  std::vector<EigenPair> pairs;
  bool breakdown = false;  // invariant subspace found before krylov_dim steps
};

// Top-k Ritz pairs by modulus from a Krylov space started at 1. Conjugate
// pairs are symmetrized and never split, so up to k+1 pairs may come back.
ArnoldiResult arnoldi_eigs(const PatternSet& s, GridSpec spec, int k, int krylov_dim);

// Eliminates the leading O(1/N) discretization error.
double richardson(double lambda_N, double lambda_2N);

struct KeyIdentityRow {
  int k;
  double grid_value;   // <T^k 1, 1>
  double exact_value;  // alpha_{m+k}/(m+k)!
  double gap;
};

std::vector<KeyIdentityRow> verify_key_identity(const PatternSet& s, GridSpec spec, int k_max,
                                                const CountTable& counts);

nlohmann::json eigen_report_json(const PatternSet& s, GridSpec spec,
                                 const std::vector<EigenPair>& pairs,
                                 std::optional<double> extrapolated_dominant);

// Flat binary: 16-byte header (uint64 m, uint64 N, little-endian), then the
// N^m real parts as 8-byte little-endian doubles.
void save_grid_function(std::ostream& os, const GridFunction& f);
GridFunction load_grid_function(std::istream& is);

}  // namespace pspec
