#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pspec/bigint.hpp"
#include "pspec/core.hpp"
#include "pspec/spectral.hpp"

namespace pspec {

// Polynomial with exact rational coefficients, ascending powers.
struct RationalPoly {
  std::vector<BigRat> coeffs;

  double eval(double x) const;
  BigRat integral_01() const;  // definite integral over [0,1]
};

// Slice volume h(u;x1) of the descent polytope P_u at first coordinate x1,
// built by integrating the next coordinate upward (letter a) or downward (b).
RationalPoly descent_h_polynomial(const DescentWord& u);

// A function on [0,1]^m that depends only on x1 inside each descent polytope:
// one vector of node samples per word of length m-1, plus the h weights that
// define the subspace inner product.
struct DescentProfile {
  int m = 2;
  int N = 0;
  std::vector<DescentWord> words;                     // {a,b}^(m-1), lexicographic
  std::vector<std::vector<std::complex<double>>> p;   // samples, one per word
  std::vector<std::vector<double>> h;                 // h(word; node_i)
};

DescentProfile descent_profile_ones(int m, int N);

// Restriction of the transfer operator to the invariant subspace: per output
// word u.y the allowed prefix integrals of p_{a u} below x1 and p_{b u}
// above x1, via midpoint cumulative sums. O(2^(m-1) N) per application.
DescentProfile descent_subspace_apply(const std::vector<DescentWord>& forbidden,
                                      const DescentProfile& f);

std::complex<double> descent_inner_product(const DescentProfile& f, const DescentProfile& g);
double descent_norm(const DescentProfile& f);

// Embeds the profile into the full grid (tie indices fall to the 'b' side).
GridFunction lift_to_grid(const DescentProfile& f);

struct DescentEigenResult {
  std::vector<double> eigenvalues;  // dominant value, or a +/- pair
  DescentProfile phi;
  int iterations = 0;
};

// Power iteration on the subspace operator; a period-2 tie is resolved by
// iterating the squared operator and reporting the +/- pair.
DescentEigenResult descent_dominant_eigs(int m, const std::vector<DescentWord>& forbidden,
                                         int N, double tol = 1e-10, int max_iter = 100000,
                                         std::uint64_t seed = 0);

}  // namespace pspec
