#pragma once

#include <cmath>
#include <vector>

#include "openchain/chain.hpp"
#include "openchain/linalg.hpp"

namespace openchain {

// Which reference state the root set is built on: Plus uses C-operators on
// the fully excited state |psi_N^0>, Minus uses B-operators on |psi_0^0>.
// The boundary factors of the Bethe/TQ equations flip sign accordingly
// (Plus is the Minus convention with p -> -p, q -> -q).
enum class BetheReference { Plus, Minus };

template <class S>
struct BetheRoots {
  BetheReference reference = BetheReference::Minus;
  std::vector<S> roots;

  BetheRoots() = default;
  BetheRoots(BetheReference ref, std::vector<S> r) : reference(ref), roots(std::move(r)) {
    validate();
  }

  int magnons() const { return static_cast<int>(roots.size()); }

  void validate() const {
    S one = scalar_traits<S>::one();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      // x = -1/2 is self-paired under x -> -x-1 and gives Q a double zero
      if (scalar_traits<S>::is_zero(roots[i] + roots[i] + one))
        fail("Precondition", "root at x = -1/2 degenerates Q");
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        if (roots[i] == roots[j]) fail("Precondition", "Bethe roots must be pairwise distinct");
        if (scalar_traits<S>::is_zero(roots[i] + roots[j] + one))
          fail("Precondition", "root pair related by x -> -x-1 degenerates Q");
      }
    }
  }
};

// Q(x) = prod_i (x - x_i)(x + x_i + 1); symmetric under x -> -x-1.
template <class S>
S q_function(const std::vector<S>& roots, const S& x) {
  S one = scalar_traits<S>::one();
  S acc = one;
  for (const auto& r : roots) acc *= (x - r) * (x + r + one);
  return acc;
}

namespace detail {

template <class S>
struct BoundaryFactors {
  // bn multiplies the (x+1)^{2N+1} Q(x-1) term, bd the x^{2N+1} Q(x+1) term.
  S bn, bd;
};

template <class S>
BoundaryFactors<S> boundary_factors(BetheReference ref, const S& x, const S& p, const S& q) {
  S one = scalar_traits<S>::one();
  S xp1 = x + one;
  if (ref == BetheReference::Minus)
    return {(one + x * p) * (one + x * q), (one - xp1 * p) * (one - xp1 * q)};
  return {(one - x * p) * (one - x * q), (one + xp1 * p) * (one + xp1 * q)};
}

template <class S>
S int_pow(const S& x, int n) {
  S acc = scalar_traits<S>::one();
  for (int i = 0; i < n; ++i) acc *= x;
  return acc;
}

}  // namespace detail

// Left-hand side minus right-hand side of the Bethe equations, one entry per
// root. All entries zero <=> the root set is on shell.
template <class S>
std::vector<S> bethe_residual(const BetheRoots<S>& rs, const ChainGeometry& geom, const S& p,
                              const S& q) {
  rs.validate();
  S one = scalar_traits<S>::one();
  int two_n = 2 * geom.n_sites;
  std::vector<S> out;
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    const S& xi = rs.roots[i];
    auto bf = detail::boundary_factors(rs.reference, xi, p, q);
    S den = bf.bd * detail::int_pow(xi, two_n);
    if (scalar_traits<S>::is_zero(den))
      fail("PoleHit", "boundary denominator vanishes at root " + std::to_string(i + 1));
    S lhs = bf.bn * detail::int_pow(xi + one, two_n) / den;
    S rhs = one;
    for (std::size_t k = 0; k < rs.roots.size(); ++k) {
      if (k == i) continue;
      const S& xk = rs.roots[k];
      S d = (xi - xk - one) * (xi + xk);
      if (scalar_traits<S>::is_zero(d))
        fail("PoleHit", "scattering denominator vanishes between roots " + std::to_string(i + 1) +
                            " and " + std::to_string(k + 1));
      rhs *= (xi - xk + one) * (xi + xk + scalar_int<S>(2)) / d;
    }
    out.push_back(lhs - rhs);
  }
  return out;
}

// Baxter TQ form of the transfer-matrix eigenvalue,
//   Lambda(x) = bn(x) 2/(2x+1) (x+1)^{2N+1} Q(x-1)/Q(x)
//             + bd(x) 2/(2x+1) x^{2N+1} Q(x+1)/Q(x).
template <class S>
S tq_eigenvalue(const S& x, const BetheRoots<S>& rs, const ChainGeometry& geom, const S& p,
                const S& q) {
  S one = scalar_traits<S>::one();
  S two = scalar_int<S>(2);
  S qx = q_function(rs.roots, x);
  if (scalar_traits<S>::is_zero(qx)) fail("QZero", "TQ evaluation at a zero of Q");
  S den = two * x + one;
  if (scalar_traits<S>::is_zero(den)) fail("PoleHit", "TQ evaluation at x = -1/2");
  auto bf = detail::boundary_factors(rs.reference, x, p, q);
  int e = 2 * geom.n_sites + 1;
  S term1 = bf.bn * detail::int_pow(x + one, e) * q_function(rs.roots, x - one);
  S term2 = bf.bd * detail::int_pow(x, e) * q_function(rs.roots, x + one);
  return two * (term1 + term2) / (den * qx);
}

// Certifies that the TQ combination is a polynomial in x for this root set:
// interpolate through 2N+3 nodes and check the value reproduced at a fresh
// node. On-shell root sets pass; off-shell sets generically fail.
template <class S>
bool tq_is_polynomial(const BetheRoots<S>& rs, const ChainGeometry& geom, const S& p, const S& q,
                      double float_tol = 1e-8) {
  int points = 2 * geom.n_sites + 3;
  std::vector<S> xs, ys;
  long node = 1;
  while (static_cast<int>(xs.size()) < points + 1) {
    S x = scalar_int<S>(node++);
    bool pole = scalar_traits<S>::is_zero(q_function(rs.roots, x));
    if (!pole) {
      xs.push_back(x);
      ys.push_back(tq_eigenvalue(x, rs, geom, p, q));
    }
    if (node > 1000) fail("Precondition", "could not find interpolation nodes");
  }
  S fresh_x = xs.back(), fresh_y = ys.back();
  xs.pop_back();
  ys.pop_back();
  auto poly = lagrange_interpolate(xs, ys);
  S predicted = poly.eval(fresh_x);
  if constexpr (scalar_traits<S>::exact) return predicted == fresh_y;
  double scale = std::max(1.0, scalar_traits<S>::magnitude(fresh_y));
  return scalar_traits<S>::magnitude(predicted - fresh_y) <= float_tol * scale;
}

// On-shell Bethe vector, up to normalization: C(x_1)...C(x_m)|psi_N^0> for
// the Plus reference, B(x_1)...B(x_m)|psi_0^0> for Minus.
template <class S>
StateVector<S> bethe_vector(const BetheRoots<S>& rs, const ChainGeometry& geom, const S& p,
                            const S& q) {
  rs.validate();
  BoundaryParams<S> bp{p, q, scalar_traits<S>::zero()};
  StateVector<S> v = rs.reference == BetheReference::Plus
                         ? StateVector<S>::all_down(geom.n_sites)
                         : StateVector<S>::all_up(geom.n_sites);
  for (auto it = rs.roots.rbegin(); it != rs.roots.rend(); ++it) {
    auto dr = double_row(*it, geom, bp);
    v = (rs.reference == BetheReference::Plus ? dr.u.c : dr.u.b) * v;
  }
  return v;
}

struct NewtonOptions {
  int max_iterations = 80;
  double residual_target = 1e-12;
  double jacobian_tol = 1e-13;
};

// Newton iteration on the logarithmic form of the Bethe equations (float
// mode). The caller supplies initial guesses; convergence is judged on the
// plain LHS - RHS residual.
inline BetheRoots<Complex> newton_solve_bethe(std::vector<Complex> initial,
                                              const ChainGeometry& geom, Complex p, Complex q,
                                              BetheReference ref, NewtonOptions opts = {}) {
  int m = static_cast<int>(initial.size());
  if (m == 0) return BetheRoots<Complex>(ref, {});
  int two_n = 2 * geom.n_sites;
  auto sgn = ref == BetheReference::Minus ? 1.0 : -1.0;

  auto log_residual = [&](const std::vector<Complex>& x, std::vector<Complex>& f) {
    for (int i = 0; i < m; ++i) {
      Complex xi = x[i];
      Complex acc = std::log(1.0 + sgn * xi * p) + std::log(1.0 + sgn * xi * q) +
                    static_cast<double>(two_n) * std::log(xi + 1.0) -
                    std::log(1.0 - sgn * (xi + 1.0) * p) - std::log(1.0 - sgn * (xi + 1.0) * q) -
                    static_cast<double>(two_n) * std::log(xi);
      for (int k = 0; k < m; ++k) {
        if (k == i) continue;
        Complex xk = x[k];
        acc -= std::log(xi - xk + 1.0) + std::log(xi + xk + 2.0) - std::log(xi - xk - 1.0) -
               std::log(xi + xk);
      }
      // wrap the imaginary part to the principal strip
      double im = std::remainder(acc.imag(), 2.0 * M_PI);
      f[i] = Complex(acc.real(), im);
    }
  };

  auto jacobian = [&](const std::vector<Complex>& x, DenseMatrix<Complex>& jac) {
    for (int i = 0; i < m; ++i) {
      Complex xi = x[i];
      Complex dii = sgn * p / (1.0 + sgn * xi * p) + sgn * q / (1.0 + sgn * xi * q) +
                    static_cast<double>(two_n) / (xi + 1.0) +
                    sgn * p / (1.0 - sgn * (xi + 1.0) * p) +
                    sgn * q / (1.0 - sgn * (xi + 1.0) * q) - static_cast<double>(two_n) / xi;
      for (int k = 0; k < m; ++k) {
        if (k == i) continue;
        Complex xk = x[k];
        dii -= 1.0 / (xi - xk + 1.0) + 1.0 / (xi + xk + 2.0) - 1.0 / (xi - xk - 1.0) -
               1.0 / (xi + xk);
        jac(i, k) = -(-1.0 / (xi - xk + 1.0) + 1.0 / (xi + xk + 2.0) + 1.0 / (xi - xk - 1.0) -
                      1.0 / (xi + xk));
      }
      jac(i, i) = dii;
    }
  };

  std::vector<Complex> x = std::move(initial);
  std::vector<Complex> f(m);
  DenseMatrix<Complex> jac(m, m);
  // Q-degenerate configurations (x_i = -x_j - 1, including a root at -1/2)
  // violate the root-set invariant; they satisfy the Bethe equations but do
  // not label eigenstates, so the solver refuses to converge onto them.
  auto degenerate = [&](const std::vector<Complex>& roots) {
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i; j < roots.size(); ++j)
        if (std::abs(roots[i] + roots[j] + 1.0) < 1e-7) return true;
    return false;
  };
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    // converged? check the plain residual
    try {
      if (!degenerate(x)) {
        BetheRoots<Complex> candidate(ref, x);
        auto resid = bethe_residual(candidate, geom, p, q);
        double worst = 0.0;
        for (const auto& r : resid) worst = std::max(worst, std::abs(r));
        if (worst < opts.residual_target) return candidate;
      }
    } catch (const Error&) {
      // pole or coincident roots mid-iteration; keep stepping
    }
    log_residual(x, f);
    jacobian(x, jac);
    std::vector<Complex> rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = -f[i];
    auto step = gauss_solve(jac, rhs, opts.jacobian_tol);
    if (!step) fail("JacobianSingular", "Newton Jacobian is singular");
    for (int i = 0; i < m; ++i) x[i] += (*step)[i];
  }
  fail("MaxIterations", "Newton iteration did not reach the residual target");
}

}  // namespace openchain
