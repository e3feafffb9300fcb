#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "openchain/matrix.hpp"

namespace openchain {

// State vector on the 2^N-dimensional quantum space. Amplitudes are indexed
// by the occupation bitstring b = sum_i m_i 2^(N-i) (site 1 = MSB).
template <class S>
struct StateVector {
  int n_sites = 0;
  std::vector<S> amp;

  StateVector() = default;
  explicit StateVector(int n)
      : n_sites(n), amp(std::size_t(1) << n, scalar_traits<S>::zero()) {
    if (n < 1 || n > 30) fail("Precondition", "site count out of range");
  }

  static StateVector basis(int n, std::uint32_t index) {
    StateVector v(n);
    v.amp.at(index) = scalar_traits<S>::one();
    return v;
  }

  // All spins up = empty lattice, index 0.
  static StateVector all_up(int n) { return basis(n, 0); }
  // All spins down = fully occupied, the reference state the map acts on.
  static StateVector all_down(int n) { return basis(n, (std::uint32_t(1) << n) - 1); }

  std::size_t dim() const { return amp.size(); }

  StateVector& operator+=(const StateVector& o) {
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] += o.amp[i];
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] -= o.amp[i];
    return *this;
  }
  StateVector& operator*=(const S& s) {
    for (auto& x : amp) x *= s;
    return *this;
  }
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(const S& s, StateVector a) { return a *= s; }

  friend bool operator==(const StateVector& a, const StateVector& b) {
    return a.n_sites == b.n_sites && a.amp == b.amp;
  }
  friend bool operator!=(const StateVector& a, const StateVector& b) { return !(a == b); }

  bool is_zero() const {
    for (const auto& x : amp)
      if (!scalar_traits<S>::is_zero(x)) return false;
    return true;
  }

  double norm2() const {
    double s = 0.0;
    for (const auto& x : amp) {
      double m = scalar_traits<S>::magnitude(x);
      s += m * m;
    }
    return std::sqrt(s);
  }
};

template <class S>
StateVector<S> operator*(const DenseMatrix<S>& m, const StateVector<S>& v) {
  if (m.cols() != static_cast<int>(v.dim())) fail("Precondition", "operator/state shape mismatch");
  StateVector<S> r(v.n_sites);
  for (int i = 0; i < m.rows(); ++i) {
    S acc = scalar_traits<S>::zero();
    for (int j = 0; j < m.cols(); ++j) {
      if (scalar_traits<S>::is_zero(m(i, j))) continue;
      acc += m(i, j) * v.amp[j];
    }
    r.amp[i] = acc;
  }
  return r;
}

// (I x ... x op2x2 x ... x I) v without materializing the 2^N x 2^N matrix.
template <class S>
StateVector<S> local_apply(const DenseMatrix<S>& op2x2, int site, const StateVector<S>& v) {
  if (op2x2.rows() != 2 || op2x2.cols() != 2) fail("Precondition", "local operator must be 2x2");
  int n = v.n_sites;
  if (site < 1 || site > n) fail("Precondition", "site out of range");
  StateVector<S> r(n);
  std::uint32_t step = 1u << (n - site);
  std::uint32_t dim = static_cast<std::uint32_t>(v.dim());
  for (std::uint32_t b = 0; b < dim; ++b) {
    if (b & step) continue;  // handle the pair (b, b|step) once
    std::uint32_t b0 = b, b1 = b | step;
    r.amp[b0] = op2x2(0, 0) * v.amp[b0] + op2x2(0, 1) * v.amp[b1];
    r.amp[b1] = op2x2(1, 0) * v.amp[b0] + op2x2(1, 1) * v.amp[b1];
  }
  return r;
}

template <class S>
S dot(const StateVector<S>& a, const StateVector<S>& b) {
  S acc = scalar_traits<S>::zero();
  for (std::size_t i = 0; i < a.amp.size(); ++i)
    acc += scalar_traits<S>::conj(a.amp[i]) * b.amp[i];
  return acc;
}

// Total magnon number operator sum_i e22^[i] applied to v.
template <class S>
StateVector<S> magnon_number_apply(const StateVector<S>& v) {
  StateVector<S> r(v.n_sites);
  for (std::uint32_t b = 0; b < v.dim(); ++b)
    r.amp[b] = scalar_int<S>(magnon_count(b)) * v.amp[b];
  return r;
}

inline std::string occupation_string(std::uint32_t b, int n_sites) {
  std::string s(n_sites, '0');
  for (int i = 1; i <= n_sites; ++i)
    if (site_bit(b, i, n_sites)) s[i - 1] = '1';
  return s;
}

inline std::uint32_t occupation_index(const std::string& s) {
  std::uint32_t b = 0;
  for (char c : s) {
    if (c != '0' && c != '1') fail("ParseError", "occupation string must be 0/1");
    b = (b << 1) | static_cast<std::uint32_t>(c == '1');
  }
  return b;
}

}  // namespace openchain
