#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "openchain/state.hpp"

namespace openchain {

// Gaussian elimination with magnitude pivoting. Over Rational any nonzero
// pivot keeps the result exact; the magnitude only picks which one. Returns
// nullopt when the matrix is singular (pivot magnitude <= tol).
template <class S>
std::optional<std::vector<S>> gauss_solve(DenseMatrix<S> a, std::vector<S> b, double tol = 0.0) {
  int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n) fail("Precondition", "solve shape mismatch");
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = tol;
    for (int r = col; r < n; ++r) {
      double m = scalar_traits<S>::magnitude(a(r, col));
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (piv < 0) return std::nullopt;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
      std::swap(b[piv], b[col]);
    }
    S inv = scalar_traits<S>::one() / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (scalar_traits<S>::is_zero(a(r, col))) continue;
      S f = a(r, col) * inv;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<S> x(n, scalar_traits<S>::zero());
  for (int r = n - 1; r >= 0; --r) {
    S acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a(r, c) * x[c];
    x[r] = acc / a(r, r);
  }
  return x;
}

// Exact basis of the right kernel of a square matrix (rational Gaussian
// elimination to reduced row echelon form). Empty list for a trivial kernel.
template <class S>
std::vector<std::vector<S>> null_space(DenseMatrix<S> a, double tol = 0.0) {
  int n = a.rows();
  if (a.cols() != n) fail("Precondition", "null_space expects a square matrix");
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    double best = tol;
    for (int r = row; r < n; ++r) {
      double m = scalar_traits<S>::magnitude(a(r, col));
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < n; ++c) std::swap(a(piv, c), a(row, c));
    S inv = scalar_traits<S>::one() / a(row, col);
    for (int c = 0; c < n; ++c) a(row, c) *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || scalar_traits<S>::is_zero(a(r, col))) continue;
      S f = a(r, col);
      for (int c = 0; c < n; ++c) a(r, c) -= f * a(row, c);
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<S>> kernel;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> v(n, scalar_traits<S>::zero());
    v[free] = scalar_traits<S>::one();
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a(static_cast<int>(r), free);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

// Basis indices of the magnon sector with m excited sites.
inline std::vector<std::uint32_t> sector_indices(int n_sites, int m) {
  std::vector<std::uint32_t> idx;
  std::uint32_t dim = std::uint32_t(1) << n_sites;
  for (std::uint32_t b = 0; b < dim; ++b)
    if (magnon_count(b) == m) idx.push_back(b);
  return idx;
}

// Solves (lambda I - A) v = b restricted to one magnon sector. Realizes the
// regularized resolvent at epsilon = 0: the operator is only ever inverted on
// sectors where it is nonsingular, never on the eigenvector's own sector.
template <class S>
StateVector<S> sector_solve(const DenseMatrix<S>& a, const S& lambda, const StateVector<S>& b,
                            int sector, double tol = 0.0) {
  int n = b.n_sites;
  if (a.rows() != static_cast<int>(b.dim())) fail("Precondition", "operator/state shape mismatch");
  auto idx = sector_indices(n, sector);
  for (std::uint32_t bb = 0; bb < b.dim(); ++bb)
    if (!scalar_traits<S>::is_zero(b.amp[bb]) && magnon_count(bb) != sector)
      fail("Precondition", "right-hand side not supported on the requested sector");
  int k = static_cast<int>(idx.size());
  DenseMatrix<S> sys(k, k);
  std::vector<S> rhs(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      S v = -a(static_cast<int>(idx[i]), static_cast<int>(idx[j]));
      if (i == j) v += lambda;
      sys(i, j) = v;
    }
    rhs[i] = b.amp[idx[i]];
  }
  auto sol = gauss_solve(sys, rhs, tol);
  if (!sol) fail("SingularSector", "sector-restricted system is singular (degenerate spectrum?)");
  StateVector<S> out(n);
  for (int i = 0; i < k; ++i) out.amp[idx[i]] = (*sol)[i];
  return out;
}

struct EigenPair {
  Complex value;
  StateVector<Complex> vector;
};

// Eigenpairs of the sector-restricted operator (float mode only). The full
// operator must be block diagonal in the magnon sectors.
inline std::vector<EigenPair> sector_eig(const DenseMatrix<Complex>& a, int sector,
                                         double block_tol = 1e-12, double degen_tol = 1e-8,
                                         double residual_tol = 1e-10) {
  int n = sites_of_dimension(a.rows());
  double scale = std::max(1.0, a.max_abs());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (magnon_count(r) != magnon_count(c) && std::abs(a(r, c)) > block_tol * scale)
        fail("NotBlockDiagonal", "operator mixes magnon sectors");

  auto idx = sector_indices(n, sector);
  int k = static_cast<int>(idx.size());
  Eigen::MatrixXcd block(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) block(i, j) = a(static_cast<int>(idx[i]), static_cast<int>(idx[j]));

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(block);
  if (solver.info() != Eigen::Success) fail("EigenFailure", "eigensolver did not converge");

  std::vector<EigenPair> pairs;
  double frob = std::max(1.0, block.norm());
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXcd v = solver.eigenvectors().col(i);
    double resid = (block * v - solver.eigenvalues()(i) * v).norm();
    if (resid > residual_tol * frob) fail("EigenFailure", "eigenpair residual above tolerance");
    EigenPair p;
    p.value = solver.eigenvalues()(i);
    p.vector = StateVector<Complex>(n);
    for (int j = 0; j < k; ++j) p.vector.amp[idx[j]] = v(j);
    pairs.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      if (std::abs(pairs[i].value - pairs[j].value) < degen_tol)
        fail("DegenerateSpectrum", "two sector eigenvalues coincide within tolerance");
  std::sort(pairs.begin(), pairs.end(), [](const EigenPair& x, const EigenPair& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return pairs;
}

}  // namespace openchain
