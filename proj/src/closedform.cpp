#include "pspec/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pspec {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2OverPi = std::sqrt(2.0 / kPi);

}  // namespace

double eigenvalues_123(int k) {
  return std::numbers::sqrt3 / (2.0 * kPi * (k + 1.0 / 3.0));
}

double asymptotic_123(int n, int K) {
  if (n < 2 || K < 0) throw OutOfRange("asymptotic_123 needs n >= 2, K >= 0");
  double sum = 0;
  for (int k = -K; k <= K; ++k) {
    const double lk = eigenvalues_123(k);
    const double sign = (k & 1) ? -1.0 : 1.0;
    sum += sign * std::exp(1.0 / (2.0 * lk)) * std::pow(lk, n + 1);
  }
  return sum;
}

double erf_real(double x) {
  if (!(std::abs(x) <= 6.0)) throw OutOfRange("erf_real limited to |x| <= 6");
  return std::erf(x);
}

std::complex<double> erf_series(std::complex<double> z) {
  if (!(std::abs(z) <= 6.0)) throw OutOfRange("erf_series limited to |z| <= 6");
  // term_n = (-1)^n z^(2n+1) / (n! (2n+1)), summed with Kahan compensation
  std::complex<double> term = z;
  std::complex<double> sum = 0;
  std::complex<double> comp = 0;
  const std::complex<double> z2 = z * z;
  for (int n = 0; n < 400; ++n) {
    const std::complex<double> y = term - comp;
    const std::complex<double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    term *= -z2 * (2.0 * n + 1.0) / ((n + 1.0) * (2.0 * n + 3.0));
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return 2.0 / std::sqrt(kPi) * sum;
}

double solve_213_dominant(double tol) {
  if (tol < 1e-12) throw OutOfRange("bisection tolerance limited to >= 1e-12");
  // g is monotone decreasing on [0.3, 1.5] and changes sign there
  double lo = 0.3;
  double hi = 1.5;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double g = erf_real(1.0 / (std::numbers::sqrt2 * mid)) - kSqrt2OverPi;
    if (g > 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::complex<double> polish_213_complex_root(std::complex<double> seed, double tol) {
  std::complex<double> lambda = seed;
  if (std::abs(1.0 / (std::numbers::sqrt2 * lambda)) > 6.0)
    throw OutOfRange("seed outside the series range");
  for (int iter = 0; iter < 100; ++iter) {
    const std::complex<double> z = 1.0 / (std::numbers::sqrt2 * lambda);
    if (std::abs(z) > 6.0) throw NoConvergence("Newton iterate left the series range");
    const std::complex<double> g = erf_series(z) - kSqrt2OverPi;
    const std::complex<double> dg =
        2.0 / std::sqrt(kPi) * std::exp(-z * z) *
        (-1.0 / (std::numbers::sqrt2 * lambda * lambda));
    const std::complex<double> step = g / dg;
    lambda -= step;
    if (std::abs(step) <= tol) return lambda;
  }
  throw NoConvergence("Newton did not converge in 100 steps");
}

namespace {

double dominant_213() {
  static const double root = solve_213_dominant(1e-12);
  return root;
}

std::complex<double> second_root_213() {
  static const std::complex<double> root =
      polish_213_complex_root({0.21, 0.21}, 1e-13);
  return root;
}

}  // namespace

double asymptotic_213(int n) {
  if (n < 2) throw OutOfRange("asymptotic_213 needs n >= 2");
  const double l0 = dominant_213();
  return std::exp(1.0 / (2.0 * l0 * l0)) * std::pow(l0, n + 1);
}

double next_term_213(int n) {
  if (n < 2) throw OutOfRange("next_term_213 needs n >= 2");
  const std::complex<double> l1 = second_root_213();
  const std::complex<double> c1 = std::exp(1.0 / (2.0 * l1 * l1));
  const double r = std::abs(l1);
  const double theta = std::arg(l1);
  return 2.0 * std::abs(c1) * std::pow(r, n + 1) * std::cos(std::arg(c1) + (n + 1) * theta);
}

double index_residual_213(std::complex<double> lambda) {
  if (lambda == std::complex<double>(0, 0)) throw OutOfRange("lambda must be non-zero");
  return std::abs(std::exp(-1.0 / (2.0 * lambda * lambda)) - (lambda - 1.0));
}

bool check_213_index(std::complex<double> lambda) {
  return index_residual_213(lambda) <= 1e-8;
}

EulerTable euler_numbers(int n_max) {
  if (n_max < 0) throw OutOfRange("n_max must be non-negative");
  EulerTable t;
  t.values.reserve(static_cast<std::size_t>(n_max) + 1);
  // Entringer triangle: row(n)[k] = row(n)[k-1] + row(n-1)[n-k]
  std::vector<BigInt> row{1};
  t.values.push_back(1);
  for (int n = 1; n <= n_max; ++n) {
    std::vector<BigInt> next(static_cast<std::size_t>(n) + 1);
    next[0] = 0;
    for (int k = 1; k <= n; ++k)
      next[static_cast<std::size_t>(k)] =
          next[static_cast<std::size_t>(k - 1)] + row[static_cast<std::size_t>(n - k)];
    t.values.push_back(next.back());
    row = std::move(next);
  }
  return t;
}

double euler_expansion(int n, int j_max) {
  if (n < 1) throw OutOfRange("euler_expansion needs n >= 1");
  if (j_max % 2 == 0) throw NotOdd("j_max must be odd");
  double sum = 0;
  for (int j = 1; j <= j_max; j += 2) {
    const long long e = static_cast<long long>((j - 1) / 2) * (n + 1);
    const double sign = (e & 1) ? -1.0 : 1.0;
    sum += sign * std::pow(kPi * j / 2.0, -n - 1);
  }
  return 2.0 * sum;
}

double eigenvalues_triple(int j) {
  if (j < 1 || j % 2 == 0) throw NotOdd("ladder index must be an odd positive integer");
  const double sign = (((j - 1) / 2) & 1) ? -1.0 : 1.0;
  return sign * 2.0 / (kPi * j);
}

BigInt exact_count_triple(int n) {
  if (n < 2) throw OutOfRange("exact_count_triple needs n >= 2");
  return BigInt(n) * euler_numbers(n - 1).at(n - 1);
}

double triple_coefficient(double lambda) { return 2.0 * lambda * lambda; }

double triple_series(int n, int j_max) {
  if (n < 2) throw OutOfRange("triple_series needs n >= 2");
  if (j_max % 2 == 0) throw NotOdd("j_max must be odd");
  double sum = 0;
  for (int j = j_max; j >= 1; j -= 2) sum += std::pow(eigenvalues_triple(j), n);
  return 2.0 * sum;
}

std::vector<ExpansionTerm> expansion_terms_123(int K) {
  std::vector<ExpansionTerm> out;
  for (int k = -K; k <= K; ++k) {
    const double lk = eigenvalues_123(k);
    const double sign = (k & 1) ? -1.0 : 1.0;
    out.push_back({{lk, 0.0},
                   {sign * std::exp(1.0 / (2.0 * lk)), 0.0},
                   ExponentConvention::pow_n_plus_1});
  }
  std::sort(out.begin(), out.end(), [](const ExpansionTerm& a, const ExpansionTerm& b) {
    return std::abs(a.lambda) > std::abs(b.lambda);
  });
  return out;
}

std::vector<ExpansionTerm> expansion_terms_213(double tol) {
  std::vector<ExpansionTerm> out;
  const double l0 = solve_213_dominant(std::max(tol, 1e-12));
  out.push_back({{l0, 0.0}, {std::exp(1.0 / (2.0 * l0 * l0)), 0.0},
                 ExponentConvention::pow_n_plus_1});
  for (const std::complex<double> seed : {std::complex<double>{0.21, 0.21},
                                          std::complex<double>{-0.17, 0.24}}) {
    const std::complex<double> root = polish_213_complex_root(seed, std::max(tol, 1e-13));
    for (const std::complex<double> l : {root, std::conj(root)})
      out.push_back({l, std::exp(1.0 / (2.0 * l * l)), ExponentConvention::pow_n_plus_1});
  }
  return out;
}

}  // namespace pspec
