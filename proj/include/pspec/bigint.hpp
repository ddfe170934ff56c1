#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace pspec {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// num/den as a double, computed through an exact rational.
inline double ratio_to_double(const BigInt& num, const BigInt& den) {
  return BigRat(num, den).convert_to<double>();
}

}  // namespace pspec
