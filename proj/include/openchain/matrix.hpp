#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "openchain/error.hpp"
#include "openchain/scalar.hpp"

namespace openchain {

// Dense row-major matrix over a generic scalar.
template <class S>
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, scalar_traits<S>::zero()) {
    if (rows <= 0 || cols <= 0) fail("Precondition", "matrix dimensions must be positive");
  }

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const S& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  DenseMatrix& operator*=(const S& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(const S& s, DenseMatrix a) { return a *= s; }
  friend DenseMatrix operator*(DenseMatrix a, const S& s) { return a *= s; }

  DenseMatrix operator-() const {
    DenseMatrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) fail("Precondition", "matrix product shape mismatch");
    DenseMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (scalar_traits<S>::is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const DenseMatrix& a, const DenseMatrix& b) { return !(a == b); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!scalar_traits<S>::is_zero(x)) return false;
    return true;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Largest entry magnitude; used for float tolerances.
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, scalar_traits<S>::magnitude(x));
    return m;
  }

 private:
  void check_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail("Precondition", "matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<S> a_;
};

template <class S>
DenseMatrix<S> kron(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
  DenseMatrix<S> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (scalar_traits<S>::is_zero(a(i, j))) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

// Elementary 2x2 matrix e_ij with a single 1 at (i,j), indices in {1,2}.
template <class S>
DenseMatrix<S> elementary2(int i, int j) {
  DenseMatrix<S> e(2, 2);
  e(i - 1, j - 1) = scalar_traits<S>::one();
  return e;
}

// --- Site-local operator algebra -------------------------------------------
//
// Quantum-space basis convention (fixed repo-wide): basis index
// b = sum_i m_i 2^(N-i), site 1 is the most significant bit, m_i = 1 is the
// local state (0,1)^t (a magnon/particle).

inline int site_bit(std::uint32_t b, int site, int n_sites) {
  return static_cast<int>((b >> (n_sites - site)) & 1u);
}

inline std::uint32_t with_site_bit(std::uint32_t b, int site, int n_sites, int value) {
  std::uint32_t mask = 1u << (n_sites - site);
  return value ? (b | mask) : (b & ~mask);
}

inline int magnon_count(std::uint32_t b) { return std::popcount(b); }

inline int sites_of_dimension(int dim) {
  if (dim <= 0 || (dim & (dim - 1)) != 0) fail("Precondition", "dimension is not a power of two");
  return std::bit_width(static_cast<unsigned>(dim)) - 1;
}

// M * (op at site), op 2x2 acting on one site. O(2 * dim^2) scalar products.
template <class S>
DenseMatrix<S> mul_local_right(const DenseMatrix<S>& m, const DenseMatrix<S>& op, int site) {
  int n = sites_of_dimension(m.cols());
  if (site < 1 || site > n) fail("Precondition", "site out of range");
  DenseMatrix<S> r(m.rows(), m.cols());
  std::uint32_t dim = static_cast<std::uint32_t>(m.cols());
  for (int row = 0; row < m.rows(); ++row)
    for (std::uint32_t c = 0; c < dim; ++c) {
      int cbit = site_bit(c, site, n);
      S acc = scalar_traits<S>::zero();
      for (int k = 0; k < 2; ++k) {
        const S& o = op(k, cbit);
        if (scalar_traits<S>::is_zero(o)) continue;
        acc += m(row, static_cast<int>(with_site_bit(c, site, n, k))) * o;
      }
      r(row, static_cast<int>(c)) = acc;
    }
  return r;
}

// (op at site) * M.
template <class S>
DenseMatrix<S> mul_local_left(const DenseMatrix<S>& op, int site, const DenseMatrix<S>& m) {
  int n = sites_of_dimension(m.rows());
  if (site < 1 || site > n) fail("Precondition", "site out of range");
  DenseMatrix<S> r(m.rows(), m.cols());
  std::uint32_t dim = static_cast<std::uint32_t>(m.rows());
  for (std::uint32_t row = 0; row < dim; ++row) {
    int rbit = site_bit(row, site, n);
    for (int col = 0; col < m.cols(); ++col) {
      S acc = scalar_traits<S>::zero();
      for (int k = 0; k < 2; ++k) {
        const S& o = op(rbit, k);
        if (scalar_traits<S>::is_zero(o)) continue;
        acc += o * m(static_cast<int>(with_site_bit(row, site, n, k)), col);
      }
      r(static_cast<int>(row), col) = acc;
    }
  }
  return r;
}

// I x ... x op x ... x I with op (2x2) at the given site of an n-site chain.
template <class S>
DenseMatrix<S> embed_local(const DenseMatrix<S>& op, int site, int n_sites) {
  if (site < 1 || site > n_sites) fail("Precondition", "site out of range");
  DenseMatrix<S> m = DenseMatrix<S>::identity(1 << n_sites);
  return mul_local_right(m, op, site);
}

// Two-site embedding of a 4x4 operator at sites (site, site+1).
template <class S>
DenseMatrix<S> embed_local_pair(const DenseMatrix<S>& op4, int site, int n_sites) {
  if (site < 1 || site + 1 > n_sites) fail("Precondition", "pair site out of range");
  int dim = 1 << n_sites;
  DenseMatrix<S> r(dim, dim);
  int nleft = site - 1;
  int nright = n_sites - site - 1;
  int dl = 1 << nleft, dr = 1 << nright;
  for (int l = 0; l < dl; ++l)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        if (scalar_traits<S>::is_zero(op4(a, b))) continue;
        for (int rgt = 0; rgt < dr; ++rgt) {
          int row = ((l * 4 + a) << nright) | rgt;
          int col = ((l * 4 + b) << nright) | rgt;
          r(row, col) += op4(a, b);
        }
      }
  return r;
}

}  // namespace openchain
