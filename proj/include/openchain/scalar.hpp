#pragma once

#include <cmath>
#include <complex>

#include "openchain/rational.hpp"

namespace openchain {

using Complex = std::complex<double>;

// Field traits shared by the two scalar modes. Every algorithm in the library
// is generic over a scalar S through this interface; Rational gives exact
// arithmetic, Complex gives double-precision floating point.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_ratio(long num, long den) { return Rational(num, den); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational conj(const Rational& x) { return x; }
  // For pivot selection only; exactness never depends on this value.
  static double magnitude(const Rational& x) { return std::fabs(x.to_double()); }
};

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return Complex(0.0, 0.0); }
  static Complex one() { return Complex(1.0, 0.0); }
  static Complex from_ratio(long num, long den) {
    return Complex(static_cast<double>(num) / static_cast<double>(den), 0.0);
  }
  static bool is_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static double magnitude(const Complex& x) { return std::abs(x); }
};

template <class S>
S scalar_int(long n) {
  return scalar_traits<S>::from_ratio(n, 1);
}

template <class S>
S scalar_ratio(long num, long den) {
  return scalar_traits<S>::from_ratio(num, den);
}

inline Complex to_complex(const Rational& r) { return Complex(r.to_double(), 0.0); }

}  // namespace openchain
