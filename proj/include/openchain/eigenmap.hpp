#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "openchain/chain.hpp"
#include "openchain/linalg.hpp"

namespace openchain {

// Ordered set of hole positions i_1 < ... < i_h on the fully excited
// reference state; a hole at site i clears the occupation bit m_i.
struct HoleConfig {
  std::vector<int> indices;

  HoleConfig() = default;
  explicit HoleConfig(std::vector<int> idx) : indices(std::move(idx)) { validate(); }

  static HoleConfig from_mask(std::uint32_t mask, int n_sites) {
    HoleConfig c;
    for (int i = 1; i <= n_sites; ++i)
      if (site_bit(mask, i, n_sites)) c.indices.push_back(i);
    return c;
  }

  int holes() const { return static_cast<int>(indices.size()); }

  bool contains(int site) const {
    return std::binary_search(indices.begin(), indices.end(), site);
  }

  // hole bitmask, site 1 = MSB as everywhere
  std::uint32_t mask(int n_sites) const {
    std::uint32_t m = 0;
    for (int i : indices) m |= 1u << (n_sites - i);
    return m;
  }

  // basis index of |I_h> = holes applied to the all-occupied state
  std::uint32_t basis_index(int n_sites) const {
    return ((1u << n_sites) - 1u) ^ mask(n_sites);
  }

  void validate() const {
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] < 1) fail("Precondition", "hole index out of range");
      if (k > 0 && indices[k] <= indices[k - 1])
        fail("Precondition", "hole indices must be strictly increasing");
    }
  }
};

// Filling function F(I_h; i) = 2 (1 + q sum_{j>i} (2 w_j - 1)) attached to the
// Hasse-diagram edge that adds a hole at site i.
template <class S>
S filling_function(const HoleConfig& config, int site, const ChainGeometry& geom, const S& q) {
  if (site < 1 || site > geom.n_sites) fail("Precondition", "site out of range");
  if (!config.indices.empty() && config.indices.back() > geom.n_sites)
    fail("Precondition", "hole index beyond chain length");
  if (config.contains(site)) fail("OccupiedSite", "site already carries a hole");
  long occ = 0;
  for (int i : config.indices)
    if (i > site) ++occ;
  long total = geom.n_sites - site;                 // number of sites j > site
  long signed_sum = 2 * occ - total;                // sum of (2 w_j - 1)
  return scalar_int<S>(2) * (scalar_traits<S>::one() + q * scalar_int<S>(signed_sum));
}

enum class HasseMethod { Closed, PermSum, Recursion };

namespace detail {

template <class S>
S filling_by_mask(std::uint32_t mask, int site, int n_sites, const S& q) {
  // same as filling_function but on a raw hole mask
  std::uint32_t below = mask & ((1u << (n_sites - site)) - 1u);  // sites j > site
  long occ = std::popcount(below);
  long total = n_sites - site;
  return scalar_int<S>(2) * (scalar_traits<S>::one() + q * scalar_int<S>(2 * occ - total));
}

template <class S>
S hasse_recursion(std::uint32_t mask, int n_sites, const S& q,
                  std::unordered_map<std::uint32_t, S>& memo) {
  if (mask == 0) return scalar_traits<S>::one();
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  S acc = scalar_traits<S>::zero();
  for (int i = 1; i <= n_sites; ++i) {
    std::uint32_t bit = 1u << (n_sites - i);
    if (!(mask & bit)) continue;
    std::uint32_t rest = mask ^ bit;
    acc += filling_by_mask(rest, i, n_sites, q) * hasse_recursion(rest, n_sites, q, memo);
  }
  memo.emplace(mask, acc);
  return acc;
}

}  // namespace detail

// Matrix element <I_h| C_{2N-1}^h |I_0> by one of three routes: the closed
// product formula, the sum over all h! Hasse paths, or the level recursion.
template <class S>
S hasse_element(const HoleConfig& config, const ChainGeometry& geom, const S& q,
                HasseMethod method) {
  config.validate();
  int h = config.holes();
  if (!config.indices.empty() && config.indices.back() > geom.n_sites)
    fail("Precondition", "hole index beyond chain length");
  int n = geom.n_sites;
  switch (method) {
    case HasseMethod::Closed: {
      // 2^h h! prod_alpha (1 + q (i_alpha + h - alpha - N))
      S acc = scalar_traits<S>::one();
      for (int a = 1; a <= h; ++a) {
        acc *= scalar_int<S>(2 * a);  // accumulates 2^h h!
        acc *= scalar_traits<S>::one() + q * scalar_int<S>(config.indices[a - 1] + h - a - n);
      }
      return acc;
    }
    case HasseMethod::PermSum: {
      if (h > 9) fail("TooManyHoles", "permutation sum capped at 9 holes");
      std::vector<int> order = config.indices;
      std::sort(order.begin(), order.end());
      S total = scalar_traits<S>::zero();
      do {
        S path = scalar_traits<S>::one();
        std::uint32_t mask = 0;
        for (int k = 0; k < h; ++k) {
          path *= detail::filling_by_mask(mask, order[k], n, q);
          mask |= 1u << (n - order[k]);
        }
        total += path;
      } while (std::next_permutation(order.begin(), order.end()));
      return total;
    }
    case HasseMethod::Recursion: {
      std::unordered_map<std::uint32_t, S> memo;  // per-call, keeps calls pure
      return detail::hasse_recursion(config.mask(n), n, q, memo);
    }
  }
  fail("Precondition", "unknown Hasse method");
}

// C_{2N-1} acting in the hole basis: adds one hole at every free site with
// the filling-function weight. Agrees with the dense bi-local operator.
template <class S>
StateVector<S> apply_c_raising(const StateVector<S>& v, const ChainGeometry& geom, const S& q) {
  if (v.n_sites != geom.n_sites) fail("Precondition", "state size mismatch");
  int n = geom.n_sites;
  std::uint32_t full = (1u << n) - 1u;
  StateVector<S> out(n);
  for (std::uint32_t b = 0; b < v.dim(); ++b) {
    if (scalar_traits<S>::is_zero(v.amp[b])) continue;
    std::uint32_t holes = full ^ b;
    for (int i = 1; i <= n; ++i) {
      std::uint32_t bit = 1u << (n - i);
      if (holes & bit) continue;  // site already a hole
      out.amp[b ^ bit] += detail::filling_by_mask<S>(holes, i, n, q) * v.amp[b];
    }
  }
  return out;
}

// Coefficient of C_{2N-1}^k in the spectral-parameter-free eigenvector map:
// (Delta/(4pq))^k / k! * 1/prod_{j=1..k} (2m - N - 1/p - 1/q - j).
// The Gamma-function ratio is evaluated as the finite product.
template <class S>
std::vector<S> map_coefficients(int m, const ChainGeometry& geom, const BoundaryParams<S>& bp) {
  if (scalar_traits<S>::is_zero(bp.p) || scalar_traits<S>::is_zero(bp.q))
    fail("ZeroBoundaryParam", "map coefficients divide by p and q");
  S one = scalar_traits<S>::one();
  S z = scalar_int<S>(2 * m - geom.n_sites) - one / bp.p - one / bp.q;
  S step = bp.delta / (scalar_int<S>(4) * bp.p * bp.q);
  std::vector<S> coeff{one};
  for (int k = 1; k <= m; ++k) {
    S den = z - scalar_int<S>(k);
    if (scalar_traits<S>::is_zero(den))
      fail("CoefficientPole", "2m - N - 1/p - 1/q - j vanishes at j = " + std::to_string(k));
    coeff.push_back(coeff.back() * step / (scalar_int<S>(k) * den));
  }
  return coeff;
}

// Large-x form of the eigenvector map: sum_k coeff(k) C_{2N-1}^k |psi_m^0>.
template <class S>
StateVector<S> map_limit(const StateVector<S>& psi0, int m, const ChainGeometry& geom,
                         const BoundaryParams<S>& bp) {
  auto coeff = map_coefficients(m, geom, bp);
  StateVector<S> out(geom.n_sites);
  StateVector<S> w = psi0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) w = apply_c_raising(w, geom, bp.q);
    out += coeff[k] * w;
    if (w.is_zero()) break;
  }
  return out;
}

// Spectral-parameter form: |psi_m^Delta> = sum_k Delta^k G^k |psi_m^0> with
// G = (x+1) (Lambda_m(x) I - T_0(x))^{-1} C(x), realized sector by sector.
template <class S>
StateVector<S> map_resolvent(const StateVector<S>& psi0, int m, const S& x,
                             const ChainGeometry& geom, const BoundaryParams<S>& bp,
                             double tol = 0.0) {
  if (scalar_traits<S>::is_zero(x))
    fail("Precondition", "map_resolvent excludes x = 0 where C(x) vanishes");
  auto t0 = transfer_diagonal(x, geom, bp.p, bp.q);
  auto c = double_row(x, geom, bp).u.c;

  // Rayleigh quotient on the largest component; exact for exact eigenvectors.
  std::size_t pivot = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < psi0.dim(); ++i) {
    double mag = scalar_traits<S>::magnitude(psi0.amp[i]);
    if (mag > best) {
      best = mag;
      pivot = i;
    }
  }
  if (best <= 0.0) fail("Precondition", "zero input vector");
  StateVector<S> t0psi = (t0 * psi0);
  S lambda = t0psi.amp[pivot] / psi0.amp[pivot];

  S xp1 = x + scalar_traits<S>::one();
  StateVector<S> out = psi0;
  StateVector<S> w = psi0;
  for (int k = 1; k <= m; ++k) {
    StateVector<S> cw = (c * w);
    if (cw.is_zero()) break;  // series truncates naturally
    w = sector_solve(t0, lambda, (bp.delta * xp1) * cw, m - k, tol);
    out += w;
  }
  return out;
}

// Closed form of the transformed reference state |psi_N^Delta>: hole sums
// with coefficients (Delta/(2pq))^h prod_k (1+q(i_k+h-k-N))/(N-1/p-1/q-k).
template <class S>
S hole_coefficient(const HoleConfig& config, const ChainGeometry& geom,
                   const BoundaryParams<S>& bp) {
  if (scalar_traits<S>::is_zero(bp.p) || scalar_traits<S>::is_zero(bp.q))
    fail("ZeroBoundaryParam", "hole coefficients divide by p and q");
  S one = scalar_traits<S>::one();
  int n = geom.n_sites;
  int h = config.holes();
  S base = scalar_int<S>(n) - one / bp.p - one / bp.q;
  S step = bp.delta / (scalar_int<S>(2) * bp.p * bp.q);
  S acc = one;
  for (int k = 1; k <= h; ++k) {
    S den = base - scalar_int<S>(k);
    if (scalar_traits<S>::is_zero(den))
      fail("CoefficientPole", "N - 1/p - 1/q - k vanishes at k = " + std::to_string(k));
    acc *= step * (one + bp.q * scalar_int<S>(config.indices[k - 1] + h - k - n)) / den;
  }
  return acc;
}

template <class S>
StateVector<S> transformed_reference(const ChainGeometry& geom, const BoundaryParams<S>& bp) {
  int n = geom.n_sites;
  StateVector<S> out(n);
  std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    HoleConfig config = HoleConfig::from_mask(mask, n);
    out.amp[full ^ mask] = hole_coefficient(config, geom, bp);
  }
  return out;
}

}  // namespace openchain
