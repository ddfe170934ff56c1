#pragma once

#include <complex>
#include <vector>

#include "pspec/bigint.hpp"
#include "pspec/errors.hpp"

namespace pspec {

// Eigenvalue ladder for double-ascent avoidance: sqrt(3)/(2 pi (k + 1/3)), k in Z.
double eigenvalues_123(int k);

// Partial expansion sum_{|k|<=K} (-1)^k exp(1/(2 l_k)) l_k^(n+1).
double asymptotic_123(int n, int K);

// Real error function, range-checked to |x| <= 6.
double erf_real(double x);

// Entire-function Taylor series with compensated summation. Accurate to
// ~1e-13 absolute for |z| <~ 3; root polishing stays well inside that range.
std::complex<double> erf_series(std::complex<double> z);

// The unique real root of erf(1/(sqrt2 l)) = sqrt(2/pi), by bisection on [0.3, 1.5].
double solve_213_dominant(double tol);

// Newton refinement of a complex root of the same equation.
std::complex<double> polish_213_complex_root(std::complex<double> seed, double tol);

// Leading term exp(1/(2 l0^2)) l0^(n+1) and the oscillatory second term built
// from the polished complex pair.
double asymptotic_213(int n);
double next_term_213(int n);

// |exp(-1/(2 l^2)) - (l - 1)|; candidates for non-simple eigenvalues make it small.
double index_residual_213(std::complex<double> lambda);
bool check_213_index(std::complex<double> lambda);

struct EulerTable {
  std::vector<BigInt> values;  // E_0..E_n

  int n_max() const { return static_cast<int>(values.size()) - 1; }
  const BigInt& at(int n) const { return values[static_cast<std::size_t>(n)]; }
};

// Zigzag numbers 1,1,1,2,5,16,61,272,... via the Seidel-Entringer triangle.
EulerTable euler_numbers(int n_max);

// Partial sum of E_n/n! = 2 sum_{j odd} (-1)^((j-1)(n+1)/2) (pi j/2)^(-n-1).
double euler_expansion(int n, int j_max);

// Ladder for the triple pattern set: (-1)^((j-1)/2) * 2/(pi j), j odd.
double eigenvalues_triple(int j);
BigInt exact_count_triple(int n);                 // n * E_{n-1}
double triple_coefficient(double lambda);         // 2 lambda^2
double triple_series(int n, int j_max);           // 2 sum_{j odd <= j_max} lambda_j^n

enum class ExponentConvention { pow_n_plus_1, pow_n_minus_m };

struct ExpansionTerm {
  std::complex<double> lambda;
  std::complex<double> c;
  ExponentConvention convention;
};

// Terms ordered by decreasing modulus of lambda.
std::vector<ExpansionTerm> expansion_terms_123(int K);
std::vector<ExpansionTerm> expansion_terms_213(double tol);

}  // namespace pspec
