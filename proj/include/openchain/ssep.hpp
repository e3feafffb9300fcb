#pragma once

#include <string>
#include <vector>

#include "openchain/eigenmap.hpp"
#include "openchain/linalg.hpp"

namespace openchain {

// Reservoir exchange rates: injection alpha / extraction gamma at the left
// boundary, injection delta / extraction beta at the right boundary.
template <class S>
struct SsepRates {
  S alpha, beta, gamma, delta;
};

template <class S>
struct ParamIdentification {
  S p, q, delta;   // triangular-chain boundary parameters
  S c0, c1;        // H_Delta = c1 S^-1 Htilde S + c0
  S rho_a, rho_b;  // reservoir densities
};

// Parameter identification between the SSEP and the triangular chain:
// p = -(alpha+gamma), q = -(beta+delta), Delta = 2(alpha+gamma)(alpha beta -
// gamma delta)/(beta+delta), c1 = 2, c0 = alpha+beta+gamma+delta.
template <class S>
ParamIdentification<S> identify(const SsepRates<S>& r) {
  S ag = r.alpha + r.gamma;
  S bd = r.beta + r.delta;
  if (scalar_traits<S>::is_zero(ag) || scalar_traits<S>::is_zero(bd))
    fail("Precondition", "identification requires alpha+gamma != 0 and beta+delta != 0");
  ParamIdentification<S> id;
  id.p = -ag;
  id.q = -bd;
  id.delta = scalar_int<S>(2) * ag * (r.alpha * r.beta - r.gamma * r.delta) / bd;
  id.c1 = scalar_int<S>(2);
  id.c0 = r.alpha + r.beta + r.gamma + r.delta;
  id.rho_a = r.alpha / ag;
  id.rho_b = r.delta / bd;
  return id;
}

template <class S>
BoundaryParams<S> identified_params(const SsepRates<S>& r) {
  auto id = identify(r);
  return BoundaryParams<S>{id.p, id.q, id.delta};
}

// Markov generator of the open SSEP: boundary exchange terms plus symmetric
// hopping P_{k,k+1} - I in the bulk. Columns sum to zero.
template <class S>
DenseMatrix<S> markov_matrix(const ChainGeometry& geom, const SsepRates<S>& r) {
  geom.check_dense();
  int n = geom.n_sites;
  DenseMatrix<S> left(2, 2), right(2, 2);
  left(0, 0) = -r.alpha; left(0, 1) = r.gamma;
  left(1, 0) = r.alpha;  left(1, 1) = -r.gamma;
  right(0, 0) = -r.delta; right(0, 1) = r.beta;
  right(1, 0) = r.delta;  right(1, 1) = -r.beta;
  DenseMatrix<S> h = embed_local(left, 1, n) + embed_local(right, n, n);
  DenseMatrix<S> id = DenseMatrix<S>::identity(geom.dim());
  for (int k = 1; k < n; ++k) h += embed_local_pair(permutation4<S>(), k, n) - id;
  return h;
}

// Full (non-triangular) K-matrices of the SSEP transfer matrix.
template <class S>
DenseMatrix<S> k_tilde(const S& x, const SsepRates<S>& r) {
  S one = scalar_traits<S>::one();
  S two = scalar_int<S>(2);
  S xp1 = x + one;
  DenseMatrix<S> k(2, 2);
  k(0, 0) = one + xp1 * (r.gamma - r.alpha);
  k(0, 1) = two * xp1 * r.gamma;
  k(1, 0) = two * xp1 * r.alpha;
  k(1, 1) = one + xp1 * (r.alpha - r.gamma);
  return k;
}

template <class S>
DenseMatrix<S> k_tilde_hat(const S& x, const SsepRates<S>& r) {
  S one = scalar_traits<S>::one();
  S two = scalar_int<S>(2);
  DenseMatrix<S> k(2, 2);
  k(0, 0) = one + x * (r.beta - r.delta);
  k(0, 1) = two * x * r.beta;
  k(1, 0) = two * x * r.delta;
  k(1, 1) = one + x * (r.delta - r.beta);
  return k;
}

// SSEP transfer matrix Ttilde(x) = tr_a Ktilde_a(x) M_a(x) Ktildehat_a(x)
// Mhat_a(x); similar to T_Delta(x) under the site-factorized Gamma transform.
template <class S>
DenseMatrix<S> ssep_transfer(const S& x, const ChainGeometry& geom, const SsepRates<S>& r) {
  geom.check_dense();
  auto u = AuxBlocks<S>::identity(geom.dim());
  for (int i = 1; i <= geom.n_sites; ++i) u.right_mul_r(x, i);
  u.right_mul_aux(k_tilde_hat(x, r));
  for (int i = geom.n_sites; i >= 1; --i) u.right_mul_r(x, i);
  auto k = k_tilde(x, r);
  return u.a * k(0, 0) + u.c * k(0, 1) + u.b * k(1, 0) + u.d * k(1, 1);
}

// Site-factorized similarity transformation matrix. The equilibrium line
// alpha beta = gamma delta (ParamIdentification delta = 0) is rejected; the
// steady state is assembled without the transform there.
template <class S>
DenseMatrix<S> gamma_matrix(const SsepRates<S>& r) {
  S ag = r.alpha + r.gamma;
  S bd = r.beta + r.delta;
  if (scalar_traits<S>::is_zero(ag) || scalar_traits<S>::is_zero(bd))
    fail("Precondition", "gamma transform requires alpha+gamma != 0 and beta+delta != 0");
  if (scalar_traits<S>::is_zero(r.alpha * r.beta - r.gamma * r.delta))
    fail("SingularGamma", "equilibrium-degenerate case alpha beta = gamma delta");
  S one = scalar_traits<S>::one();
  DenseMatrix<S> g(2, 2);
  g(0, 0) = -(one / ag);
  g(0, 1) = r.beta / bd;
  g(1, 0) = one / ag;
  g(1, 1) = r.delta / bd;
  return g;
}

template <class S>
DenseMatrix<S> invert2(const DenseMatrix<S>& g) {
  S det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  if (scalar_traits<S>::is_zero(det)) fail("SingularGamma", "2x2 matrix not invertible");
  DenseMatrix<S> inv(2, 2);
  inv(0, 0) = g(1, 1) / det;
  inv(0, 1) = -(g(0, 1) / det);
  inv(1, 0) = -(g(1, 0) / det);
  inv(1, 1) = g(0, 0) / det;
  return inv;
}

// S_G v = (G x ... x G) v, applied site by site without forming S_G.
template <class S>
StateVector<S> site_transform(const DenseMatrix<S>& g, const StateVector<S>& v) {
  StateVector<S> out = v;
  for (int site = 1; site <= v.n_sites; ++site) out = local_apply(g, site, out);
  return out;
}

// S_G M S_G^-1 without forming the 2^N transform.
template <class S>
DenseMatrix<S> site_conjugate(const DenseMatrix<S>& g, const DenseMatrix<S>& m) {
  int n = sites_of_dimension(m.rows());
  DenseMatrix<S> out = m;
  DenseMatrix<S> ginv = invert2(g);
  for (int site = 1; site <= n; ++site) {
    out = mul_local_left(g, site, out);
    out = mul_local_right(out, ginv, site);
  }
  return out;
}

template <class S>
struct SteadyState {
  StateVector<S> probabilities;
  S rescale;  // mass factor divided out; identically 1 with these conventions
};

// Steady state of the open SSEP. Away from equilibrium it is the transformed
// reference state pushed through S_Gamma and normalized to total mass one;
// on the equilibrium line (singular-transform guard) the exact kernel of the
// generator is used instead.
template <class S>
SteadyState<S> steady_state(const ChainGeometry& geom, const SsepRates<S>& r) {
  if (scalar_traits<S>::is_zero(r.alpha * r.beta - r.gamma * r.delta)) {
    auto kernel = null_space(markov_matrix(geom, r));
    if (kernel.size() != 1)
      fail("KernelDimension", "Markov generator kernel is not one-dimensional");
    StateVector<S> v(geom.n_sites);
    S total = scalar_traits<S>::zero();
    for (const auto& a : kernel[0]) total += a;
    if (scalar_traits<S>::is_zero(total)) fail("KernelDimension", "kernel vector has zero mass");
    for (std::size_t i = 0; i < v.dim(); ++i) v.amp[i] = kernel[0][i] / total;
    return {v, total};
  }
  auto bp = identified_params(r);
  auto psi = transformed_reference(geom, bp);
  auto g = gamma_matrix(r);
  auto tilde = site_transform(g, psi);
  S total = scalar_traits<S>::zero();
  for (const auto& a : tilde.amp) total += a;
  if (scalar_traits<S>::is_zero(total)) fail("Precondition", "steady state has zero mass");
  StateVector<S> v(geom.n_sites);
  for (std::size_t i = 0; i < v.dim(); ++i) v.amp[i] = tilde.amp[i] / total;
  return {v, total};
}

// Occupation configuration m_1..m_N; converts to/from the basis index.
struct OccupationConfig {
  std::vector<int> occupation;

  explicit OccupationConfig(std::vector<int> m) : occupation(std::move(m)) {
    for (int v : occupation)
      if (v != 0 && v != 1) fail("Precondition", "occupation entries must be 0 or 1");
  }
  static OccupationConfig from_string(const std::string& s) {
    std::vector<int> m;
    for (char c : s) {
      if (c != '0' && c != '1') fail("ParseError", "occupation string must be 0/1");
      m.push_back(c - '0');
    }
    return OccupationConfig(std::move(m));
  }
  static OccupationConfig from_index(std::uint32_t b, int n_sites) {
    std::vector<int> m(n_sites);
    for (int i = 1; i <= n_sites; ++i) m[i - 1] = site_bit(b, i, n_sites);
    return OccupationConfig(std::move(m));
  }

  int sites() const { return static_cast<int>(occupation.size()); }
  int particles() const {
    int m = 0;
    for (int v : occupation) m += v;
    return m;
  }
  std::uint32_t index() const {
    std::uint32_t b = 0;
    for (int v : occupation) b = (b << 1) | static_cast<std::uint32_t>(v);
    return b;
  }
  std::string str() const {
    std::string s;
    for (int v : occupation) s.push_back(v ? '1' : '0');
    return s;
  }
};

// Closed-form steady-state probability of one configuration:
//   P(m) = sum_h (1-rho_b)^{N-h} (rho_a-rho_b)^h sum_{I_h} M(I_h; m)
// with M the signed hole-sum coefficient. Requires beta != 0.
template <class S>
S probability(const OccupationConfig& config, const ChainGeometry& geom, const SsepRates<S>& r) {
  if (config.sites() != geom.n_sites) fail("Precondition", "configuration length mismatch");
  if (scalar_traits<S>::is_zero(r.beta))
    fail("ZeroBeta", "closed-form probabilities require beta != 0");
  S ag = r.alpha + r.gamma;
  S bd = r.beta + r.delta;
  if (scalar_traits<S>::is_zero(ag) || scalar_traits<S>::is_zero(bd))
    fail("Precondition", "rates must have alpha+gamma != 0 and beta+delta != 0");
  int n = geom.n_sites;
  S one = scalar_traits<S>::one();
  S rho_a = r.alpha / ag, rho_b = r.delta / bd;
  S inv_ag = one / ag, inv_bd = one / bd;
  S dob = r.delta / r.beta;
  int m_total = config.particles();

  // denominators N - k + 1/(alpha+gamma) + 1/(beta+delta), k = 1..N
  std::vector<S> denom(n + 1, one);
  for (int k = 1; k <= n; ++k) {
    S d = scalar_int<S>(n - k) + inv_ag + inv_bd;
    if (scalar_traits<S>::is_zero(d))
      fail("CoefficientPole", "N - k + 1/(a+g) + 1/(b+d) vanishes at k = " + std::to_string(k));
    denom[k] = d;
  }

  // powers of (1 - rho_b) and (rho_a - rho_b)
  std::vector<S> pow_b(n + 1, one), pow_ab(n + 1, one);
  for (int k = 1; k <= n; ++k) {
    pow_b[k] = pow_b[k - 1] * (one - rho_b);
    pow_ab[k] = pow_ab[k - 1] * (rho_a - rho_b);
  }
  std::vector<S> pow_dob(m_total + 1, one);
  for (int k = 1; k <= m_total; ++k) pow_dob[k] = pow_dob[k - 1] * dob;

  S total = scalar_traits<S>::zero();
  std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    int h = std::popcount(mask);
    // product over the ordered hole positions i_1 < ... < i_h
    S prod = one;
    int k = 0;
    int occupied_holes = 0;
    for (int i = 1; i <= n; ++i) {
      if (!(mask & (1u << (n - i)))) continue;
      ++k;
      prod *= (scalar_int<S>(i + h - k - n) - inv_bd) / denom[k];
      occupied_holes += config.occupation[i - 1];
    }
    S sign = (occupied_holes % 2 == 0) ? one : -one;
    total += pow_b[n - h] * pow_ab[h] * sign * pow_dob[m_total - occupied_holes] * prod;
  }
  return total;
}

// k-point steady-state correlation function at sites i_1 < ... < i_k.
template <class S>
S correlator(const std::vector<int>& sites, const ChainGeometry& geom, const SsepRates<S>& r) {
  int k = static_cast<int>(sites.size());
  for (int i = 0; i < k; ++i) {
    if (sites[i] < 1 || sites[i] > geom.n_sites) fail("Precondition", "site out of range");
    if (i > 0 && sites[i] <= sites[i - 1])
      fail("Precondition", "correlator sites must be strictly increasing");
  }
  S one = scalar_traits<S>::one();
  S ag = r.alpha + r.gamma;
  S bd = r.beta + r.delta;
  if (scalar_traits<S>::is_zero(ag) || scalar_traits<S>::is_zero(bd))
    fail("Precondition", "rates must have alpha+gamma != 0 and beta+delta != 0");
  int n = geom.n_sites;
  S rho_a = r.alpha / ag, rho_b = r.delta / bd;
  S inv_ag = one / ag, inv_bd = one / bd;

  std::vector<S> denom(k + 1, one);
  for (int j = 1; j <= k; ++j) {
    S d = scalar_int<S>(n - j) + inv_ag + inv_bd;
    if (scalar_traits<S>::is_zero(d))
      fail("CoefficientPole", "N - r + 1/(a+g) + 1/(b+d) vanishes at r = " + std::to_string(j));
    denom[j] = d;
  }

  S total = scalar_traits<S>::zero();
  for (std::uint32_t subset = 0; subset < (1u << k); ++subset) {
    int m = std::popcount(subset);
    S term = one;
    for (int j = 0; j < k - m; ++j) term *= rho_b;
    for (int j = 0; j < m; ++j) term *= (rho_b - rho_a);
    int pos = 0;
    for (int bit = 0; bit < k; ++bit) {
      if (!(subset & (1u << bit))) continue;
      ++pos;  // pos = r, the rank within the chosen l_1 < ... < l_m
      term *= (scalar_int<S>(sites[bit] + m - pos - n) - inv_bd) / denom[pos];
    }
    total += term;
  }
  return total;
}

// Density profile <i> in closed form.
template <class S>
S density(int site, const ChainGeometry& geom, const SsepRates<S>& r) {
  if (site < 1 || site > geom.n_sites) fail("Precondition", "site out of range");
  S one = scalar_traits<S>::one();
  S ag = r.alpha + r.gamma;
  S bd = r.beta + r.delta;
  S rho_a = r.alpha / ag, rho_b = r.delta / bd;
  S den = scalar_int<S>(geom.n_sites - 1) + one / ag + one / bd;
  if (scalar_traits<S>::is_zero(den)) fail("CoefficientPole", "density denominator vanishes");
  return (rho_a * (scalar_int<S>(geom.n_sites - site) + one / bd) +
          rho_b * (scalar_int<S>(site - 1) + one / ag)) /
         den;
}

}  // namespace openchain
