#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>
#include <vector>

#include "openchain/jet.hpp"
#include "openchain/poly.hpp"
#include "openchain/state.hpp"

namespace openchain {

// Dense exact mode is desk-scale; the env var OPENCHAIN_MAX_N raises the cap.
inline int dense_site_cap() {
  if (const char* env = std::getenv("OPENCHAIN_MAX_N")) {
    int v = std::atoi(env);
    if (v >= 1 && v <= 16) return v;
  }
  return 10;
}

struct ChainGeometry {
  int n_sites;

  explicit ChainGeometry(int n) : n_sites(n) {
    if (n < 1 || n > 16) fail("Precondition", "site count out of range (1..16)");
  }

  void check_dense() const {
    if (n_sites > dense_site_cap())
      fail("Precondition", "dense mode capped at N = " + std::to_string(dense_site_cap()) +
                               " (override with OPENCHAIN_MAX_N)");
  }

  int dim() const { return 1 << n_sites; }
};

template <class S>
struct BoundaryParams {
  S p;
  S q;
  S delta;
};

template <class S>
BoundaryParams<Jet<S>> lift_to_jet(const BoundaryParams<S>& bp) {
  return {Jet<S>(bp.p), Jet<S>(bp.q), Jet<S>(bp.delta)};
}

// R(x) = x I + P acting on C^2 x C^2.
template <class S>
DenseMatrix<S> r_matrix(const S& x) {
  DenseMatrix<S> r(4, 4);
  for (int i = 0; i < 4; ++i) r(i, i) = x;
  // P = sum e_ij x e_ji
  r(0, 0) += scalar_traits<S>::one();
  r(1, 2) += scalar_traits<S>::one();
  r(2, 1) += scalar_traits<S>::one();
  r(3, 3) += scalar_traits<S>::one();
  return r;
}

template <class S>
DenseMatrix<S> permutation4() {
  return r_matrix(scalar_traits<S>::zero());
}

// Diagonal K-matrix of the double-row monodromy.
template <class S>
DenseMatrix<S> k_hat(const S& x, const S& q) {
  DenseMatrix<S> k(2, 2);
  k(0, 0) = scalar_traits<S>::one() + q * x;
  k(1, 1) = scalar_traits<S>::one() - q * x;
  return k;
}

// Upper triangular K-matrix entering the transfer-matrix trace.
template <class S>
DenseMatrix<S> k_plus(const S& x, const S& p, const S& delta) {
  S xp1 = x + scalar_traits<S>::one();
  DenseMatrix<S> k(2, 2);
  k(0, 0) = scalar_traits<S>::one() + p * xp1;
  k(0, 1) = delta * xp1;
  k(1, 1) = scalar_traits<S>::one() - p * xp1;
  return k;
}

// 2x2 auxiliary-space blocks of many-body operators. Products are taken
// blockwise; the 2^(N+1)-dimensional matrix is never formed.
template <class S>
struct AuxBlocks {
  DenseMatrix<S> a, b, c, d;

  static AuxBlocks identity(int dim) {
    AuxBlocks u;
    u.a = DenseMatrix<S>::identity(dim);
    u.b = DenseMatrix<S>(dim, dim);
    u.c = DenseMatrix<S>(dim, dim);
    u.d = DenseMatrix<S>::identity(dim);
    return u;
  }

  // Right-multiply by R_{a,site}(x) whose aux blocks are local quantum ops:
  // [[x + e11, e21], [e12, x + e22]] at the given site.
  void right_mul_r(const S& x, int site) {
    DenseMatrix<S> d00(2, 2), d01(2, 2), d10(2, 2), d11(2, 2);
    S one = scalar_traits<S>::one();
    d00(0, 0) = x + one; d00(1, 1) = x;  // x + e11
    d01(1, 0) = one;                     // e21
    d10(0, 1) = one;                     // e12
    d11(0, 0) = x; d11(1, 1) = x + one;  // x + e22
    DenseMatrix<S> na = mul_local_right(a, d00, site) + mul_local_right(b, d10, site);
    DenseMatrix<S> nb = mul_local_right(a, d01, site) + mul_local_right(b, d11, site);
    DenseMatrix<S> nc = mul_local_right(c, d00, site) + mul_local_right(d, d10, site);
    DenseMatrix<S> nd = mul_local_right(c, d01, site) + mul_local_right(d, d11, site);
    a = std::move(na); b = std::move(nb); c = std::move(nc); d = std::move(nd);
  }

  // Right-multiply by a matrix acting in the auxiliary space only.
  void right_mul_aux(const DenseMatrix<S>& k) {
    DenseMatrix<S> na = a * k(0, 0) + b * k(1, 0);
    DenseMatrix<S> nb = a * k(0, 1) + b * k(1, 1);
    DenseMatrix<S> nc = c * k(0, 0) + d * k(1, 0);
    DenseMatrix<S> nd = c * k(0, 1) + d * k(1, 1);
    a = std::move(na); b = std::move(nb); c = std::move(nc); d = std::move(nd);
  }
};

// Single-row monodromy M_a(x) = R_{a,1}...R_{a,N} (hatted: reversed order).
template <class S>
AuxBlocks<S> single_row(const S& x, const ChainGeometry& geom, bool hatted = false) {
  geom.check_dense();
  auto m = AuxBlocks<S>::identity(geom.dim());
  if (!hatted)
    for (int i = 1; i <= geom.n_sites; ++i) m.right_mul_r(x, i);
  else
    for (int i = geom.n_sites; i >= 1; --i) m.right_mul_r(x, i);
  return m;
}

// Double-row monodromy U_a(x) = M_a(x) Khat_a(x) Mhat_a(x), returned as the
// four many-body blocks A, B, C, D.
template <class S>
struct DoubleRow {
  int n_sites;
  AuxBlocks<S> u;
};

template <class S>
DoubleRow<S> double_row(const S& x, const ChainGeometry& geom, const BoundaryParams<S>& bp) {
  geom.check_dense();
  auto u = AuxBlocks<S>::identity(geom.dim());
  for (int i = 1; i <= geom.n_sites; ++i) u.right_mul_r(x, i);
  u.right_mul_aux(k_hat(x, bp.q));
  for (int i = geom.n_sites; i >= 1; --i) u.right_mul_r(x, i);
  return DoubleRow<S>{geom.n_sites, std::move(u)};
}

// T_Delta(x) = tr_a K_a(x;Delta) U_a(x)
//            = (1 + p(x+1)) A + Delta (x+1) C + (1 - p(x+1)) D.
template <class S>
DenseMatrix<S> transfer(const S& x, const ChainGeometry& geom, const BoundaryParams<S>& bp) {
  auto dr = double_row(x, geom, bp);
  S xp1 = x + scalar_traits<S>::one();
  S one = scalar_traits<S>::one();
  DenseMatrix<S> t = dr.u.a * (one + bp.p * xp1) + dr.u.d * (one - bp.p * xp1);
  if (!scalar_traits<S>::is_zero(bp.delta)) t += dr.u.c * (bp.delta * xp1);
  return t;
}

template <class S>
DenseMatrix<S> transfer_diagonal(const S& x, const ChainGeometry& geom, const S& p, const S& q) {
  return transfer(x, geom, BoundaryParams<S>{p, q, scalar_traits<S>::zero()});
}

// Matrix-free application of T_Delta(x) to a state: the 2x2 auxiliary matrix
// of state vectors is pushed through the factor chain, O(N 2^N) scalar work.
template <class S>
StateVector<S> transfer_apply(const S& x, const ChainGeometry& geom, const BoundaryParams<S>& bp,
                              const StateVector<S>& v) {
  if (v.n_sites != geom.n_sites) fail("Precondition", "state size mismatch");
  S one = scalar_traits<S>::one();
  // y[a][b] = (factors applied so far)_{a,b} v, factors multiplied from the right
  // of the product, i.e. starting with Mhat's rightmost R_{a,1}.
  std::array<std::array<StateVector<S>, 2>, 2> y;
  y[0][0] = v;
  y[0][1] = StateVector<S>(geom.n_sites);
  y[1][0] = StateVector<S>(geom.n_sites);
  y[1][1] = v;
  DenseMatrix<S> d00(2, 2), d01(2, 2), d10(2, 2), d11(2, 2);
  auto mul_r = [&](const S& xs, int site) {
    d00(0, 0) = xs + one; d00(1, 1) = xs;
    d01 = DenseMatrix<S>(2, 2); d01(1, 0) = one;
    d10 = DenseMatrix<S>(2, 2); d10(0, 1) = one;
    d11(0, 0) = xs; d11(1, 1) = xs + one;
    std::array<std::array<StateVector<S>, 2>, 2> ny;
    ny[0][0] = local_apply(d00, site, y[0][0]) + local_apply(d01, site, y[1][0]);
    ny[0][1] = local_apply(d00, site, y[0][1]) + local_apply(d01, site, y[1][1]);
    ny[1][0] = local_apply(d10, site, y[0][0]) + local_apply(d11, site, y[1][0]);
    ny[1][1] = local_apply(d10, site, y[0][1]) + local_apply(d11, site, y[1][1]);
    y = std::move(ny);
  };
  auto mul_aux = [&](const DenseMatrix<S>& k) {
    std::array<std::array<StateVector<S>, 2>, 2> ny;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) ny[r][c] = k(r, 0) * y[0][c] + k(r, 1) * y[1][c];
    y = std::move(ny);
  };
  // U = R_{a,1}..R_{a,N} Khat R_{a,N}..R_{a,1}; apply rightmost factor first.
  for (int i = 1; i <= geom.n_sites; ++i) mul_r(x, i);
  mul_aux(k_hat(x, bp.q));
  for (int i = geom.n_sites; i >= 1; --i) mul_r(x, i);
  DenseMatrix<S> k = k_plus(x, bp.p, bp.delta);
  // tr_a K U v = sum_{a,b} K_{ab} (U v)_{ba}
  StateVector<S> out(geom.n_sites);
  for (int aa = 0; aa < 2; ++aa)
    for (int bb = 0; bb < 2; ++bb) {
      if (scalar_traits<S>::is_zero(k(aa, bb))) continue;
      out += k(aa, bb) * y[bb][aa];
    }
  return out;
}

// Explicit nearest-neighbour Hamiltonian
//   H = p sigma3^[1] + Delta sigma+^[1] + sum_k (sigma.sigma - I) + q sigma3^[N].
template <class S>
DenseMatrix<S> triangular_hamiltonian_explicit(const ChainGeometry& geom,
                                               const BoundaryParams<S>& bp) {
  geom.check_dense();
  int n = geom.n_sites;
  S one = scalar_traits<S>::one();
  S two = scalar_int<S>(2);
  DenseMatrix<S> sigma3(2, 2);
  sigma3(0, 0) = one;
  sigma3(1, 1) = -one;
  DenseMatrix<S> sigma_plus = elementary2<S>(1, 2);
  DenseMatrix<S> h = embed_local(sigma3, 1, n) * bp.p + embed_local(sigma_plus, 1, n) * bp.delta +
                     embed_local(sigma3, n, n) * bp.q;
  // sigma.sigma = 2P - I, so each bulk term is 2(P - I).
  DenseMatrix<S> id = DenseMatrix<S>::identity(geom.dim());
  for (int k = 1; k < n; ++k)
    h += (embed_local_pair(permutation4<S>(), k, n) - id) * two;
  return h;
}

// Same Hamiltonian from the transfer matrix: d/dx log T_Delta(x)|_0 - (2N-1),
// evaluated with a first-order jet; T_Delta(0) = 2 I is checked on the way.
template <class S>
DenseMatrix<S> triangular_hamiltonian_logderiv(const ChainGeometry& geom,
                                               const BoundaryParams<S>& bp) {
  geom.check_dense();
  using J = Jet<S>;
  auto tj = transfer(J::variable(scalar_traits<S>::zero()), geom, lift_to_jet(bp));
  int dim = geom.dim();
  S two = scalar_int<S>(2);
  DenseMatrix<S> value(dim, dim), deriv(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      value(r, c) = tj(r, c).val;
      deriv(r, c) = tj(r, c).der;
    }
  DenseMatrix<S> expect_t0 = DenseMatrix<S>::identity(dim) * two;
  if constexpr (scalar_traits<S>::exact) {
    if (value != expect_t0) fail("InconsistentConstruction", "T(0) != 2 I");
  } else {
    if ((value - expect_t0).max_abs() > 1e-9 * std::max(1.0, value.max_abs()))
      fail("InconsistentConstruction", "T(0) != 2 I");
  }
  S half = scalar_traits<S>::one() / two;
  return deriv * half - DenseMatrix<S>::identity(dim) * scalar_int<S>(2 * geom.n_sites - 1);
}

// Both construction paths, checked against each other.
template <class S>
DenseMatrix<S> triangular_hamiltonian(const ChainGeometry& geom, const BoundaryParams<S>& bp) {
  DenseMatrix<S> ha = triangular_hamiltonian_explicit(geom, bp);
  DenseMatrix<S> hb = triangular_hamiltonian_logderiv(geom, bp);
  if constexpr (scalar_traits<S>::exact) {
    if (ha != hb) fail("InconsistentConstruction", "explicit and log-derivative Hamiltonians differ");
  } else {
    if ((ha - hb).max_abs() > 1e-9 * std::max(1.0, ha.max_abs()))
      fail("InconsistentConstruction", "explicit and log-derivative Hamiltonians differ");
  }
  return ha;
}

// Leading coefficient operators of the double-row monodromy entries at large
// spectral parameter: A and D at orders x^{2N+1}, x^{2N}, x^{2N-1} and C at
// its top order x^{2N-1} (bi-local closed forms).
template <class S>
struct MonodromyExpansion {
  DenseMatrix<S> a_top, a_sub, a_subsub;
  DenseMatrix<S> d_top, d_sub, d_subsub;
  DenseMatrix<S> c_top;
};

template <class S>
MonodromyExpansion<S> monodromy_expansion(const ChainGeometry& geom, const S& q) {
  geom.check_dense();
  int n = geom.n_sites;
  int dim = geom.dim();
  S one = scalar_traits<S>::one();
  S two = scalar_int<S>(2);
  DenseMatrix<S> e11 = elementary2<S>(1, 1), e22 = elementary2<S>(2, 2), e12 = elementary2<S>(1, 2);

  DenseMatrix<S> id = DenseMatrix<S>::identity(dim);
  DenseMatrix<S> sum_e11(dim, dim), sum_e22(dim, dim);
  for (int i = 1; i <= n; ++i) {
    sum_e11 += embed_local(e11, i, n);
    sum_e22 += embed_local(e22, i, n);
  }

  MonodromyExpansion<S> ex;
  ex.a_top = id * q;
  ex.d_top = -(id * q);
  ex.a_sub = id + sum_e11 * (two * q);
  ex.d_sub = id - sum_e22 * (two * q);

  DenseMatrix<S> pairs_e11(dim, dim), pairs_e22(dim, dim);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      pairs_e11 += mul_local_right(embed_local(e11, i, n), e11, j);
      pairs_e22 += mul_local_right(embed_local(e22, i, n), e22, j);
    }
  DenseMatrix<S> imbalance = sum_e11 - sum_e22;
  ex.a_subsub = sum_e11 * two + pairs_e11 * (two * q) + imbalance * q;
  ex.d_subsub = sum_e22 * two - pairs_e22 * (two * q) + imbalance * q;

  // C_{2N-1} = 2 sum_i e12^[i] + 2q sum_{i<j} e12^[i] e11^[j]
  //                            - 2q sum_{i>j} e22^[i] e12^[j]
  DenseMatrix<S> c(dim, dim);
  for (int i = 1; i <= n; ++i) c += embed_local(e12, i, n) * two;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      c += mul_local_right(embed_local(e12, i, n), e11, j) * (two * q);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < i; ++j)
      c -= mul_local_right(embed_local(e22, i, n), e12, j) * (two * q);
  ex.c_top = std::move(c);
  return ex;
}

// Transfer-matrix eigenvalue of the fully excited reference state, reduced to
// polynomial form by exact division by (1 + 2x).
template <class S>
struct ReferenceEigenvalue {
  int n_sites;
  Poly<S> poly;

  S operator()(const S& x) const { return poly.eval(x); }

  template <class T>
  T eval(const T& x) const {
    return poly.template eval<T>(x);
  }
};

template <class S>
ReferenceEigenvalue<S> lambda_n(const ChainGeometry& geom, const S& p, const S& q) {
  int n = geom.n_sites;
  S one = scalar_traits<S>::one();
  S two = scalar_int<S>(2);
  // 2 (1+x)^{2N+1} (1-px)(1-qx) + 2 x^{2N+1} (1+p(x+1))(1+q(x+1))
  Poly<S> term1 = Poly<S>::pow_linear(one, 2 * n + 1) *
                  Poly<S>(std::vector<S>{one, -p}) * Poly<S>(std::vector<S>{one, -q});
  Poly<S> term2 = Poly<S>::pow_linear(scalar_traits<S>::zero(), 2 * n + 1) *
                  Poly<S>(std::vector<S>{one + p, p}) * Poly<S>(std::vector<S>{one + q, q});
  Poly<S> num = two * term1 + two * term2;
  S rem = scalar_traits<S>::zero();
  Poly<S> quot = divide_linear(num, one, two, &rem);
  double scale = 1.0;
  for (const auto& cc : num.c) scale = std::max(scale, scalar_traits<S>::magnitude(cc));
  bool bad = scalar_traits<S>::exact ? !scalar_traits<S>::is_zero(rem)
                                     : scalar_traits<S>::magnitude(rem) > 1e-9 * scale;
  if (bad) fail("NonPolynomial", "eigenvalue numerator not divisible by (1+2x)");
  return ReferenceEigenvalue<S>{n, std::move(quot)};
}

// Direct evaluation of the same eigenvalue away from x = -1/2.
template <class S>
S lambda_n_direct(const S& x, const ChainGeometry& geom, const S& p, const S& q) {
  S one = scalar_traits<S>::one();
  S two = scalar_int<S>(2);
  S den = one + two * x;
  if (scalar_traits<S>::is_zero(den)) fail("PoleHit", "direct eigenvalue evaluation at x = -1/2");
  S xp1 = x + one;
  S pow_xp1 = one, pow_x = one;
  for (int i = 0; i < 2 * geom.n_sites + 1; ++i) {
    pow_xp1 *= xp1;
    pow_x *= x;
  }
  S num = two * pow_xp1 * (one - p * x) * (one - q * x) +
          two * pow_x * (one + p * xp1) * (one + q * xp1);
  return num / den;
}

}  // namespace openchain
