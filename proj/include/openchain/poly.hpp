#pragma once

#include <vector>

#include "openchain/error.hpp"
#include "openchain/scalar.hpp"

namespace openchain {

// Minimal dense polynomial helpers (ascending coefficient order). Enough for
// eigenvalue closed forms and interpolation; not a general symbolic engine.
template <class S>
struct Poly {
  std::vector<S> c;  // c[0] + c[1] x + ...

  Poly() = default;
  explicit Poly(std::vector<S> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(const S& s) { return Poly(std::vector<S>{s}); }

  int degree() const { return static_cast<int>(c.size()) - 1; }

  void trim() {
    while (!c.empty() && scalar_traits<S>::is_zero(c.back())) c.pop_back();
  }

  template <class T>
  T eval(const T& x) const {
    T acc = T(scalar_traits<S>::zero());
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), scalar_traits<S>::zero());
    for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return Poly();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, scalar_traits<S>::zero());
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }

  Poly& operator*=(const S& s) {
    for (auto& x : c) x *= s;
    trim();
    return *this;
  }
  friend Poly operator*(const S& s, Poly a) { return a *= s; }

  // x + shift
  static Poly linear(const S& shift) {
    return Poly(std::vector<S>{shift, scalar_traits<S>::one()});
  }

  static Poly pow_linear(const S& shift, int n) {
    Poly r = constant(scalar_traits<S>::one());
    Poly l = linear(shift);
    for (int i = 0; i < n; ++i) r = r * l;
    return r;
  }
};

// Divides p by (a0 + a1 x); returns the quotient, with remainder in *rem.
template <class S>
Poly<S> divide_linear(const Poly<S>& p, const S& a0, const S& a1, S* rem) {
  if (scalar_traits<S>::is_zero(a1)) fail("Precondition", "divisor is not linear");
  std::vector<S> q(p.c.size() > 0 ? p.c.size() - 1 : 0, scalar_traits<S>::zero());
  S r = scalar_traits<S>::zero();
  for (int i = static_cast<int>(p.c.size()) - 1; i >= 0; --i) {
    S cur = p.c[i] + r;
    if (i == 0) {
      r = cur;
    } else {
      q[i - 1] = cur / a1;
      r = -(q[i - 1] * a0);
    }
  }
  if (rem) *rem = r;
  Poly<S> res;
  res.c = std::move(q);
  res.trim();
  return res;
}

// Exact Lagrange interpolation through (xs[i], ys[i]); nodes must be distinct.
template <class S>
Poly<S> lagrange_interpolate(const std::vector<S>& xs, const std::vector<S>& ys) {
  if (xs.size() != ys.size() || xs.empty()) fail("Precondition", "bad interpolation data");
  Poly<S> result;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    Poly<S> basis = Poly<S>::constant(scalar_traits<S>::one());
    S denom = scalar_traits<S>::one();
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (k == j) continue;
      basis = basis * Poly<S>::linear(-xs[k]);
      denom *= (xs[j] - xs[k]);
    }
    basis *= ys[j] / denom;
    result += basis;
  }
  return result;
}

}  // namespace openchain
