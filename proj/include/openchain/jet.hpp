#pragma once

#include "openchain/scalar.hpp"

namespace openchain {

// First-order jet a + b*eps with eps^2 = 0. Evaluating a rational expression
// at Jet::variable(x0) carries the exact derivative alongside the value; this
// is how logarithmic derivatives of transfer matrices are taken at x = 0.
template <class S>
struct Jet {
  S val;
  S der;

  Jet() : val(scalar_traits<S>::zero()), der(scalar_traits<S>::zero()) {}
  Jet(const S& v) : val(v), der(scalar_traits<S>::zero()) {}  // NOLINT(runtime/explicit)
  Jet(const S& v, const S& d) : val(v), der(d) {}

  static Jet variable(const S& x0) { return Jet(x0, scalar_traits<S>::one()); }

  Jet operator-() const { return Jet(-val, -der); }

  Jet& operator+=(const Jet& o) {
    val += o.val;
    der += o.der;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    val -= o.val;
    der -= o.der;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    der = val * o.der + der * o.val;
    val = val * o.val;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    // (a + b eps)/(c + d eps) = a/c + (b c - a d)/c^2 eps; requires c != 0.
    S inv_c = scalar_traits<S>::one() / o.val;
    der = (der * o.val - val * o.der) * inv_c * inv_c;
    val = val * inv_c;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend bool operator==(const Jet& a, const Jet& b) { return a.val == b.val && a.der == b.der; }
  friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }
};

template <class S>
struct scalar_traits<Jet<S>> {
  static constexpr bool exact = scalar_traits<S>::exact;
  static Jet<S> zero() { return Jet<S>(); }
  static Jet<S> one() { return Jet<S>(scalar_traits<S>::one()); }
  static Jet<S> from_ratio(long num, long den) {
    return Jet<S>(scalar_traits<S>::from_ratio(num, den));
  }
  static bool is_zero(const Jet<S>& x) {
    return scalar_traits<S>::is_zero(x.val) && scalar_traits<S>::is_zero(x.der);
  }
  static Jet<S> conj(const Jet<S>& x) {
    return Jet<S>(scalar_traits<S>::conj(x.val), scalar_traits<S>::conj(x.der));
  }
  static double magnitude(const Jet<S>& x) {
    return scalar_traits<S>::magnitude(x.val) + scalar_traits<S>::magnitude(x.der);
  }
};

}  // namespace openchain
