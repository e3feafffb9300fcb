#pragma once

#include <vector>

#include "openchain/ssep.hpp"

namespace openchain {

// Finite truncation of the DEHP matrix-product realization. The textbook
// realization carries sqrt(k(lambda+k)) off-diagonals; an exact diagonal
// similarity with d_{k+1}/d_k = sqrt(k(lambda+k)) moves the square roots out
// (up-entries gain a factor k(lambda+k), down-entries lose the root), and a
// scalar rescale puts the algebra into the normalized form
//   D E - E D = D + E,  <W|(alpha E - gamma D) = <W|,  (beta D - delta E)|V> = |V>
// on the interior of the truncation. <W| = |V>^t = e_1 throughout.
template <class S>
struct DehpRealization {
  int truncation = 0;
  DenseMatrix<S> d, e;
  S lambda;
};

template <class S>
DehpRealization<S> dehp_build(const SsepRates<S>& r, int truncation) {
  if (truncation < 1) fail("Precondition", "truncation must be positive");
  S one = scalar_traits<S>::one();
  S ag = r.alpha + r.gamma;
  S bd = r.beta + r.delta;
  if (scalar_traits<S>::is_zero(ag) || scalar_traits<S>::is_zero(bd))
    fail("Precondition", "rates must have alpha+gamma != 0 and beta+delta != 0");
  S norm = ag * bd;
  S lambda = (r.alpha + r.beta + r.gamma + r.delta) / norm - one;

  DehpRealization<S> out;
  out.truncation = truncation;
  out.lambda = lambda;
  out.d = DenseMatrix<S>(truncation, truncation);
  out.e = DenseMatrix<S>(truncation, truncation);
  S db = r.alpha * r.beta + scalar_int<S>(2) * r.alpha * r.delta + r.gamma * r.delta;
  S eb = r.alpha * r.beta + scalar_int<S>(2) * r.beta * r.gamma + r.gamma * r.delta;
  for (int k = 1; k <= truncation; ++k) {
    out.d(k - 1, k - 1) = (r.alpha + r.delta + scalar_int<S>(k - 1) * db) / norm;
    out.e(k - 1, k - 1) = (r.beta + r.gamma + scalar_int<S>(k - 1) * eb) / norm;
    if (k < truncation) {
      S hop = scalar_int<S>(k) * (lambda + scalar_int<S>(k));  // k(lambda+k)
      out.d(k - 1, k) = r.alpha / ag * hop;
      out.e(k - 1, k) = r.gamma / ag * hop;
      out.d(k, k - 1) = r.delta / bd;
      out.e(k, k - 1) = r.beta / bd;
    }
  }
  // The realization above satisfies the algebra with a common factor
  // x_c = (alpha beta - gamma delta)/((alpha+gamma)(beta+delta)); dividing it
  // out leaves the probabilities unchanged and the relations exactly
  // normalized. On the equilibrium line x_c = 0 the unscaled form is kept.
  S xc = (r.alpha * r.beta - r.gamma * r.delta) / norm;
  if (!scalar_traits<S>::is_zero(xc)) {
    S inv = one / xc;
    out.d *= inv;
    out.e *= inv;
  }
  return out;
}

namespace detail {

// <W| X_1 ... X_N |V> with X_i = m_i D + (1-m_i) E; row-vector sweep.
template <class S>
S dehp_matrix_element(const DehpRealization<S>& re, const OccupationConfig& config) {
  int l = re.truncation;
  std::vector<S> row(l, scalar_traits<S>::zero());
  row[0] = scalar_traits<S>::one();
  for (int site = 0; site < config.sites(); ++site) {
    const DenseMatrix<S>& x = config.occupation[site] ? re.d : re.e;
    std::vector<S> next(l, scalar_traits<S>::zero());
    for (int i = 0; i < l; ++i) {
      if (scalar_traits<S>::is_zero(row[i])) continue;
      for (int j = std::max(0, i - 1); j <= std::min(l - 1, i + 1); ++j)
        next[j] += row[i] * x(i, j);
    }
    row = std::move(next);
  }
  return row[0];
}

template <class S>
S dehp_normalization(const DehpRealization<S>& re, int n_sites) {
  int l = re.truncation;
  DenseMatrix<S> sum = re.d + re.e;
  std::vector<S> row(l, scalar_traits<S>::zero());
  row[0] = scalar_traits<S>::one();
  for (int site = 0; site < n_sites; ++site) {
    std::vector<S> next(l, scalar_traits<S>::zero());
    for (int i = 0; i < l; ++i) {
      if (scalar_traits<S>::is_zero(row[i])) continue;
      for (int j = std::max(0, i - 1); j <= std::min(l - 1, i + 1); ++j)
        next[j] += row[i] * sum(i, j);
    }
    row = std::move(next);
  }
  return row[0];
}

}  // namespace detail

// Steady-state probability from the DEHP ansatz. Computed at the default
// truncation N+2 and re-checked at N+3; a tridiagonal walk from index 1
// cannot leave the first N+1 indices in N steps, so both must agree.
template <class S>
S dehp_probability(const OccupationConfig& config, const SsepRates<S>& r,
                   const ChainGeometry& geom) {
  if (config.sites() != geom.n_sites) fail("Precondition", "configuration length mismatch");
  int n = geom.n_sites;
  auto eval_at = [&](int l) {
    auto re = dehp_build(r, l);
    S num = detail::dehp_matrix_element(re, config);
    S den = detail::dehp_normalization(re, n);
    if (scalar_traits<S>::is_zero(den)) fail("Precondition", "DEHP normalization vanishes");
    return num / den;
  };
  S p1 = eval_at(n + 2);
  S p2 = eval_at(n + 3);
  bool stable = scalar_traits<S>::exact
                    ? p1 == p2
                    : scalar_traits<S>::magnitude(p1 - p2) <=
                          1e-10 * std::max(1.0, scalar_traits<S>::magnitude(p1));
  if (!stable) fail("TruncationUnstable", "DEHP value changed when enlarging the truncation");
  return p1;
}

// Exact steady state as the normalized kernel of the Markov generator.
template <class S>
StateVector<S> nullspace_steady(const ChainGeometry& geom, const SsepRates<S>& r) {
  auto kernel = null_space(markov_matrix(geom, r));
  if (kernel.size() != 1)
    fail("KernelDimension", "Markov generator kernel dimension is " +
                                std::to_string(kernel.size()) + ", expected 1");
  S total = scalar_traits<S>::zero();
  for (const auto& a : kernel[0]) total += a;
  if (scalar_traits<S>::is_zero(total)) fail("KernelDimension", "kernel vector has zero mass");
  StateVector<S> v(geom.n_sites);
  for (std::size_t i = 0; i < v.dim(); ++i) v.amp[i] = kernel[0][i] / total;
  return v;
}

}  // namespace openchain
