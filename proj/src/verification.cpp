#include "openchain/verification.hpp"

#include <Eigen/Dense>
#include <array>
#include <chrono>
#include <functional>

#include "openchain/bethe.hpp"
#include "openchain/eigenmap.hpp"
#include "openchain/oracles.hpp"
#include "openchain/sampling.hpp"
#include "openchain/ssep.hpp"

namespace openchain {
namespace {

struct Checker {
  long cases = 0;
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

CheckResult timed(const std::string& name, const std::function<void(Checker&)>& body) {
  CheckResult r;
  r.name = name;
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
    r.pass = c.pass;
    r.detail = c.detail;
  } catch (const Error& e) {
    r.pass = false;
    r.detail = e.what();
  }
  r.cases = c.cases;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SsepRates<Rational> draw_rates(RationalSampler& s) {
  while (true) {
    SsepRates<Rational> r{s.positive(), s.positive(), s.positive(), s.positive()};
    if (r.alpha * r.beta != r.gamma * r.delta) return r;
  }
}

// p, q, Delta with the eigenvector-map denominators away from zero.
BoundaryParams<Rational> draw_params(RationalSampler& s, int n) {
  while (true) {
    Rational p = s.nonzero(), q = s.nonzero(), d = s.nonzero();
    Rational base = Rational(n) - Rational(1) / p - Rational(1) / q;
    bool ok = true;
    for (int k = 1; k <= 2 * n; ++k)
      if (base == Rational(k) || base == Rational(-k)) ok = false;
    if (ok) return {p, q, d};
  }
}

Rational draw_x(RationalSampler& s) {
  while (true) {
    Rational x = s.nonzero();
    if (x != Rational(-1) && Rational(2) * x + Rational(1) != Rational(0)) return x;
  }
}

// --- helpers for the structural identities ---------------------------------

using RMat = DenseMatrix<Rational>;

RMat dense_block(const AuxBlocks<Rational>& m, int r, int c) {
  if (r == 0 && c == 0) return m.a;
  if (r == 0 && c == 1) return m.b;
  if (r == 1 && c == 0) return m.c;
  return m.d;
}

// 4x4 array of quantum-space blocks over aux_a x aux_b.
struct TwoAux {
  std::array<std::array<RMat, 4>, 4> blk;
  int dim = 0;

  static TwoAux zero(int dim) {
    TwoAux t;
    t.dim = dim;
    for (auto& row : t.blk)
      for (auto& b : row) b = RMat(dim, dim);
    return t;
  }
  static TwoAux from_aux_a(const AuxBlocks<Rational>& m, int dim) {
    TwoAux t = zero(dim);
    for (int a1 = 0; a1 < 2; ++a1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b = 0; b < 2; ++b) t.blk[a1 * 2 + b][a2 * 2 + b] = dense_block(m, a1, a2);
    return t;
  }
  static TwoAux from_aux_b(const AuxBlocks<Rational>& m, int dim) {
    TwoAux t = zero(dim);
    for (int b1 = 0; b1 < 2; ++b1)
      for (int b2 = 0; b2 < 2; ++b2)
        for (int a = 0; a < 2; ++a) t.blk[a * 2 + b1][a * 2 + b2] = dense_block(m, b1, b2);
    return t;
  }
  static TwoAux from_scalar(const RMat& s4, int dim) {
    TwoAux t = zero(dim);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (!s4(r, c).is_zero()) t.blk[r][c] = RMat::identity(dim) * s4(r, c);
    return t;
  }
  friend TwoAux operator*(const TwoAux& x, const TwoAux& y) {
    TwoAux t = zero(x.dim);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        for (int k = 0; k < 4; ++k) {
          if (x.blk[r][k].is_zero() || y.blk[k][c].is_zero()) continue;
          t.blk[r][c] += x.blk[r][k] * y.blk[k][c];
        }
    return t;
  }
  friend bool operator==(const TwoAux& x, const TwoAux& y) {
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (!(x.blk[r][c] == y.blk[r][c])) return false;
    return true;
  }
};

RMat embed_r3(const Rational& x, int i, int j) {
  RMat r = r_matrix(x);
  RMat id2 = RMat::identity(2);
  if (i == 1 && j == 2) return kron(r, id2);
  if (i == 2 && j == 3) return kron(id2, r);
  RMat p23 = kron(id2, permutation4<Rational>());
  return p23 * kron(r, id2) * p23;
}

RMat partial_transpose_a(const RMat& m4) {
  RMat t(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) t(c * 2 + b, a * 2 + d) = m4(a * 2 + b, c * 2 + d);
  return t;
}

// Hasse path sum with an optional sign error in the filling function, used to
// demonstrate that the triple cross-check catches a broken coefficient.
Rational permsum_with_filling(const HoleConfig& config, int n, const Rational& q, bool flip) {
  std::vector<int> order = config.indices;
  Rational total(0);
  std::sort(order.begin(), order.end());
  do {
    Rational path(1);
    std::vector<int> placed;
    for (int site : order) {
      long occ = 0, tot = n - site;
      for (int j : placed)
        if (j > site) ++occ;
      long signed_sum = 2 * occ - tot;
      if (flip) signed_sum = -signed_sum;
      path *= Rational(2) * (Rational(1) + q * Rational(signed_sum));
      placed.push_back(site);
    }
    total += path;
  } while (std::next_permutation(order.begin(), order.end()));
  return total;
}

HoleConfig random_config(RationalSampler& s, int n, int max_holes) {
  std::vector<int> all;
  for (int i = 1; i <= n; ++i) all.push_back(i);
  std::shuffle(all.begin(), all.end(), s.engine());
  int h = static_cast<int>(s.integer(0, std::min(n, max_holes)));
  std::vector<int> sites(all.begin(), all.begin() + h);
  std::sort(sites.begin(), sites.end());
  return HoleConfig(sites);
}

// Newton-from-grid solve for a single root, deduplicated under x -> -x-1.
std::vector<Complex> grid_solve_m1(const ChainGeometry& geom, Complex p, Complex q,
                                   BetheReference ref) {
  std::vector<Complex> found;
  for (double re = -2.6; re <= 2.6; re += 0.45)
    for (double im = -1.6; im <= 1.6; im += 0.55) {
      Complex x0(re, im);
      if (std::abs(x0) < 0.15 || std::abs(x0 + 1.0) < 0.15 || std::abs(2.0 * x0 + 1.0) < 0.15)
        continue;
      try {
        auto rs = newton_solve_bethe({x0}, geom, p, q, ref);
        Complex r = rs.roots[0];
        bool dup = false;
        for (const auto& known : found)
          if (std::abs(known - r) < 1e-6 || std::abs(known - (-r - 1.0)) < 1e-6) dup = true;
        if (!dup) found.push_back(r);
      } catch (const Error&) {
      }
    }
  return found;
}

std::vector<Complex> dense_spectrum(const DenseMatrix<Complex>& m) {
  int dim = m.rows();
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = m(i, j);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + dim);
  std::sort(out.begin(), out.end(), [](const Complex& u, const Complex& v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  });
  return out;
}

SsepRates<Complex> to_float(const SsepRates<Rational>& r) {
  return {to_complex(r.alpha), to_complex(r.beta), to_complex(r.gamma), to_complex(r.delta)};
}

// --- the parameterized check bodies -----------------------------------------

void check_steady_routes(Checker& c, int n_max, int draws, std::uint64_t seed) {
  RationalSampler s(seed);
  for (int n = 1; n <= n_max; ++n) {
    ChainGeometry geom(n);
    for (int rep = 0; rep < draws; ++rep) {
      auto r = draw_rates(s);
      auto kernel = nullspace_steady(geom, r);
      auto transform = steady_state(geom, r).probabilities;
      c.expect(kernel == transform, "S_Gamma route != kernel route");
      for (std::uint32_t b = 0; b < (1u << n); ++b) {
        auto cfg = OccupationConfig::from_index(b, n);
        c.expect(probability(cfg, geom, r) == kernel.amp[b],
                 "closed form != kernel at N=" + std::to_string(n));
        c.expect(dehp_probability(cfg, r, geom) == kernel.amp[b],
                 "DEHP != kernel at N=" + std::to_string(n));
      }
    }
  }
}

void check_reference_eigen(Checker& c, int n_max, int x_draws, std::uint64_t seed) {
  RationalSampler s(seed);
  for (int n = 1; n <= n_max; ++n) {
    ChainGeometry geom(n);
    auto bp = draw_params(s, n);
    auto psi = transformed_reference(geom, bp);
    auto lam = lambda_n(geom, bp.p, bp.q);
    for (int rep = 0; rep < x_draws; ++rep) {
      Rational x = draw_x(s);
      c.expect((transfer(x, geom, bp) * psi) == lam(x) * psi,
               "T_Delta eigen-equation failed at N=" + std::to_string(n));
    }
    auto h = triangular_hamiltonian(geom, bp);
    c.expect((h * psi) == (-bp.p - bp.q) * psi,
             "H_Delta eigenvalue != -p-q at N=" + std::to_string(n));
  }
}

void check_map_consistency(Checker& c, int n_max, std::uint64_t seed) {
  RationalSampler s(seed);
  for (int n = 1; n <= n_max; ++n) {
    ChainGeometry geom(n);
    auto bp = draw_params(s, n);
    auto ref = StateVector<Rational>::all_down(n);
    auto closed = transformed_reference(geom, bp);
    c.expect(map_limit(ref, n, geom, bp) == closed, "large-x map != closed form");
    Rational x1 = s.positive();
    Rational x2 = x1 + s.positive();
    c.expect(map_resolvent(ref, n, x1, geom, bp) == closed, "resolvent map != closed form");
    c.expect(map_resolvent(ref, n, x2, geom, bp) == closed,
             "resolvent map depends on the spectral parameter");
  }
}

void check_generic_m_float(Checker& c, const std::vector<int>& sizes, double tol) {
  Complex p(0.37, 0.0), q(0.61, 0.0), delta(1.3, 0.0);
  Complex x0(0.9, 0.0);
  for (int n : sizes) {
    ChainGeometry geom(n);
    BoundaryParams<Complex> bp{p, q, delta};
    auto t0 = transfer_diagonal(x0, geom, p, q);
    auto td = transfer(x0, geom, bp);
    for (int m = 0; m <= n; ++m) {
      auto pairs = sector_eig(t0, m);
      for (const auto& ep : pairs) {
        auto mapped = map_limit(ep.vector, m, geom, bp);
        auto resid = td * mapped - ep.value * mapped;
        c.expect(resid.norm2() / mapped.norm2() < tol,
                 "mapped eigenvector residual above tolerance at N=" + std::to_string(n) +
                     " m=" + std::to_string(m));
      }
    }
  }
}

void check_hasse(Checker& c, int n_small, int n_large, int large_draws, int max_holes,
                 std::uint64_t seed, bool mutate) {
  RationalSampler s(seed);
  // every configuration at the small sizes
  for (int n = 1; n <= n_small; ++n) {
    ChainGeometry geom(n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      auto cfg = HoleConfig::from_mask(mask, n);
      Rational q = s.any();
      Rational closed = hasse_element(cfg, geom, q, HasseMethod::Closed);
      Rational permsum = mutate ? permsum_with_filling(cfg, n, q, true)
                                : hasse_element(cfg, geom, q, HasseMethod::PermSum);
      c.expect(closed == permsum, "closed vs path-sum mismatch");
      c.expect(closed == hasse_element(cfg, geom, q, HasseMethod::Recursion),
               "closed vs recursion mismatch");
    }
  }
  // random configurations at the large size
  ChainGeometry geom(n_large);
  for (int rep = 0; rep < large_draws; ++rep) {
    auto cfg = random_config(s, n_large, max_holes);
    Rational q = s.any();
    Rational closed = hasse_element(cfg, geom, q, HasseMethod::Closed);
    Rational permsum = mutate ? permsum_with_filling(cfg, n_large, q, true)
                              : hasse_element(cfg, geom, q, HasseMethod::PermSum);
    c.expect(closed == permsum, "closed vs path-sum mismatch (large)");
    c.expect(closed == hasse_element(cfg, geom, q, HasseMethod::Recursion),
             "closed vs recursion mismatch (large)");
  }
  // the worked filling-function value F(2,3;1) = 2(1+2q)
  ChainGeometry geom3(3);
  for (int rep = 0; rep < 10; ++rep) {
    Rational q = s.any();
    c.expect(filling_function(HoleConfig({2, 3}), 1, geom3, q) ==
                 Rational(2) * (Rational(1) + Rational(2) * q),
             "filling-function fixture mismatch");
  }
}

void check_structural(Checker& c, int n_max, int rtt_n_max, std::uint64_t seed) {
  RationalSampler s(seed);
  RMat id2 = RMat::identity(2);
  // Yang-Baxter
  for (int rep = 0; rep < 50; ++rep) {
    Rational x = s.any(), y = s.any();
    c.expect(embed_r3(x - y, 1, 2) * embed_r3(x, 1, 3) * embed_r3(y, 2, 3) ==
                 embed_r3(y, 2, 3) * embed_r3(x, 1, 3) * embed_r3(x - y, 1, 2),
             "Yang-Baxter equation failed");
  }
  // boundary Yang-Baxter for k_hat
  for (int rep = 0; rep < 20; ++rep) {
    Rational x = s.any(), y = s.any(), q = s.nonzero();
    auto k1 = kron(k_hat(x, q), id2);
    auto k2 = kron(id2, k_hat(y, q));
    c.expect(r_matrix(x - y) * k1 * r_matrix(x + y) * k2 ==
                 k2 * r_matrix(x + y) * k1 * r_matrix(x - y),
             "reflection equation failed");
  }
  // crossing relation
  RMat sigma(2, 2);
  sigma(0, 1) = Rational(1);
  sigma(1, 0) = Rational(-1);
  RMat v = kron(sigma, id2);
  for (int rep = 0; rep < 10; ++rep) {
    Rational z = s.any();
    c.expect(r_matrix(z) == v * partial_transpose_a(r_matrix(-z - Rational(1))) * v,
             "crossing relation failed");
  }
  // RTT and hatted RTT
  for (int n = 1; n <= rtt_n_max; ++n) {
    ChainGeometry geom(n);
    Rational x = s.any(), y = s.any();
    int dim = geom.dim();
    auto a = TwoAux::from_aux_a(single_row(x, geom), dim);
    auto b = TwoAux::from_aux_b(single_row(y, geom), dim);
    auto rr = TwoAux::from_scalar(r_matrix(x - y), dim);
    c.expect(rr * a * b == b * a * rr, "RTT relation failed at N=" + std::to_string(n));
    auto ahat = TwoAux::from_aux_a(single_row(x, geom, true), dim);
    auto rplus = TwoAux::from_scalar(r_matrix(x + y), dim);
    c.expect(ahat * rplus * b == b * rplus * ahat,
             "hatted RTT relation failed at N=" + std::to_string(n));
  }
  // transfer identities
  for (int n = 1; n <= n_max; ++n) {
    ChainGeometry geom(n);
    auto bp = draw_params(s, n);
    Rational x = draw_x(s), y = draw_x(s);
    auto tx = transfer(x, geom, bp);
    auto ty = transfer(y, geom, bp);
    c.expect(tx * ty == ty * tx, "[T(x), T(y)] != 0");
    auto t0 = transfer_diagonal(x, geom, bp.p, bp.q);
    auto cc = double_row(x, geom, bp).u.c;
    c.expect(tx - t0 == cc * (bp.delta * (x + Rational(1))), "T_Delta != T_0 + Delta (x+1) C");
    // triangularisable side
    auto r = draw_rates(s);
    auto g = gamma_matrix(r);
    c.expect(site_conjugate(invert2(g), ssep_transfer(x, geom, r)) ==
                 transfer(x, geom, identified_params(r)),
             "SSEP transfer not similar to the triangular one");
    // log-derivative of the SSEP transfer matrix
    SsepRates<Jet<Rational>> rj{Jet<Rational>(r.alpha), Jet<Rational>(r.beta),
                                Jet<Rational>(r.gamma), Jet<Rational>(r.delta)};
    auto tj = ssep_transfer(Jet<Rational>::variable(Rational(0)), geom, rj);
    int dim = geom.dim();
    DenseMatrix<Rational> deriv(dim, dim);
    bool value_ok = true;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        deriv(i, j) = tj(i, j).der;
        Rational expect = i == j ? Rational(2) : Rational(0);
        if (tj(i, j).val != expect) value_ok = false;
      }
    c.expect(value_ok, "Ttilde(0) != 2I");
    Rational c0 = r.alpha + r.beta + r.gamma + r.delta;
    auto logder = deriv * Rational(1, 2) -
                  DenseMatrix<Rational>::identity(dim) * (Rational(2 * n - 1) + c0);
    c.expect(logder * Rational(1, 2) == markov_matrix(geom, r),
             "SSEP log-derivative != Markov generator");
    // dual-path Hamiltonian (throws InconsistentConstruction on mismatch)
    auto h = triangular_hamiltonian(geom, bp);
    c.expect(h.rows() == geom.dim(), "Hamiltonian construction failed");
  }
}

void check_observables(Checker& c, int n_max, int draws, std::uint64_t seed) {
  RationalSampler s(seed);
  for (int n = 1; n <= n_max; ++n) {
    ChainGeometry geom(n);
    for (int rep = 0; rep < draws; ++rep) {
      auto r = draw_rates(s);
      auto kernel = nullspace_steady(geom, r);
      for (int i = 1; i <= n; ++i) {
        Rational d = density(i, geom, r);
        c.expect(correlator({i}, geom, r) == d, "correlator(k=1) != density formula");
        Rational marginal(0);
        for (std::uint32_t b = 0; b < (1u << n); ++b)
          if (site_bit(b, i, n)) marginal += kernel.amp[b];
        c.expect(marginal == d, "density formula != kernel marginal");
      }
    }
  }
  // Bernoulli reduction at rho_a = rho_b
  SsepRates<Rational> eq{Rational(2), Rational(5), Rational(1), Rational(10)};
  Rational rho = eq.alpha / (eq.alpha + eq.gamma);
  ChainGeometry geom3(3);
  for (int i = 1; i <= 3; ++i) c.expect(density(i, geom3, eq) == rho, "Bernoulli density != rho");
  c.expect(correlator({1, 3}, geom3, eq) == rho * rho, "Bernoulli 2-point != rho^2");
  // alpha = beta = 1, gamma = delta = 0, N = 3: profile (3/4, 1/2, 1/4)
  SsepRates<Rational> mc{Rational(1), Rational(1), Rational(0), Rational(0)};
  for (int i = 1; i <= 3; ++i)
    c.expect(density(i, geom3, mc) == Rational(4 - static_cast<long>(i), 4),
             "maximal-current profile mismatch");
}

void check_bethe_float(Checker& c, const std::vector<int>& sizes, double resid_tol, double tq_tol,
                       double vec_tol) {
  Complex p(0.5, 0.0), q(0.5, 0.0);
  Complex x_test(0.8, 0.0);
  for (int n : sizes) {
    ChainGeometry geom(n);
    auto t0 = transfer_diagonal(x_test, geom, p, q);
    for (auto ref : {BetheReference::Minus, BetheReference::Plus}) {
      int sector = ref == BetheReference::Minus ? 1 : n - 1;
      auto pairs = sector_eig(t0, sector);
      auto roots = grid_solve_m1(geom, p, q, ref);
      int physical = 0;
      for (Complex r : roots) {
        BetheRoots<Complex> rs(ref, {r});
        auto res = bethe_residual(rs, geom, p, q);
        c.expect(std::abs(res[0]) < resid_tol, "Newton root residual above tolerance");
        if (!tq_is_polynomial(rs, geom, p, q)) continue;  // unphysical BAE solution
        ++physical;
        Complex lam = tq_eigenvalue(x_test, rs, geom, p, q);
        bool matches = false;
        for (const auto& ep : pairs)
          if (std::abs(ep.value - lam) < tq_tol) matches = true;
        c.expect(matches, "TQ eigenvalue does not match the sector spectrum");
        auto v = bethe_vector(rs, geom, p, q);
        auto resid = t0 * v - lam * v;
        c.expect(resid.norm2() / v.norm2() < vec_tol, "Bethe vector eigen-residual too large");
      }
      c.expect(physical >= 1, "no physical root found from the grid");
    }
  }
}

void check_spectrum_map(Checker& c, int n_max, std::uint64_t seed, double tol) {
  RationalSampler s(seed);
  for (int n = 1; n <= n_max; ++n) {
    ChainGeometry geom(n);
    auto r = to_float(draw_rates(s));
    auto id = identify(r);
    auto sa = dense_spectrum(markov_matrix(geom, r));
    auto hb = triangular_hamiltonian(geom, identified_params(r));
    int dim = geom.dim();
    DenseMatrix<Complex> shifted(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) shifted(i, j) = (hb(i, j) - (i == j ? id.c0 : 0.0)) / id.c1;
    auto sb = dense_spectrum(shifted);
    for (int i = 0; i < dim; ++i)
      c.expect(std::abs(sa[i] - sb[i]) < tol, "spectrum map failed at N=" + std::to_string(n));
  }
}

void check_sector_eig_float(Checker& c, int n, double tol) {
  ChainGeometry geom(n);
  Complex p(0.37, 0.0), q(0.61, 0.0);
  Complex x0(0.9, 0.0);
  auto t0 = transfer_diagonal(x0, geom, p, q);
  double scale = std::max(1.0, t0.max_abs());
  for (int m = 0; m <= n; ++m) {
    auto pairs = sector_eig(t0, m);
    for (const auto& ep : pairs) {
      auto resid = t0 * ep.vector - ep.value * ep.vector;
      c.expect(resid.norm2() <= tol * scale, "sector eigenpair residual above tolerance");
    }
  }
}

}  // namespace

std::vector<CheckResult> run_exact_checks(const VerifyOptions& opts) {
  int n = opts.n_exact;
  std::vector<CheckResult> out;
  out.push_back(timed("structural-identities", [&](Checker& c) {
    check_structural(c, n, std::min(n, 4), opts.seed + 1);
  }));
  out.push_back(
      timed("reference-eigen", [&](Checker& c) { check_reference_eigen(c, n, 3, opts.seed + 2); }));
  out.push_back(
      timed("map-consistency", [&](Checker& c) { check_map_consistency(c, n, opts.seed + 3); }));
  out.push_back(timed("hasse-cross-check", [&](Checker& c) {
    check_hasse(c, std::min(n, 5), n, 25, 5, opts.seed + 4, opts.mutate_filling);
  }));
  out.push_back(timed("steady-state-routes",
                      [&](Checker& c) { check_steady_routes(c, n, 5, opts.seed + 5); }));
  out.push_back(
      timed("observables", [&](Checker& c) { check_observables(c, n, 3, opts.seed + 6); }));
  return out;
}

std::vector<CheckResult> run_float_checks(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  int n = opts.n_float;
  out.push_back(
      timed("sector-eig-residuals", [&](Checker& c) { check_sector_eig_float(c, n, 1e-10); }));
  out.push_back(timed("generic-m-map",
                      [&](Checker& c) { check_generic_m_float(c, {std::min(n, 6)}, 1e-10); }));
  out.push_back(timed("bethe-tq", [&](Checker& c) {
    check_bethe_float(c, {2, 3}, 1e-12, 1e-8, 1e-10);
  }));
  out.push_back(timed("spectrum-map", [&](Checker& c) {
    check_spectrum_map(c, std::min(n, 6), opts.seed + 7, 1e-10);
  }));
  return out;
}

std::vector<CheckResult> run_acceptance(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(timed("criterion 1: steady-state quadruple agreement (N<=6, 25 draws, exact)",
                      [&](Checker& c) { check_steady_routes(c, 6, 25, seed + 101); }));
  out.push_back(timed("criterion 2: transformed-reference eigen-equations (N<=6, 5 x, exact)",
                      [&](Checker& c) { check_reference_eigen(c, 6, 5, seed + 102); }));
  out.push_back(timed("criterion 3: map consistency resolvent/large-x/closed (N<=6, exact)",
                      [&](Checker& c) { check_map_consistency(c, 6, seed + 103); }));
  out.push_back(timed("criterion 4: generic-m float map (N=4,6, resid < 1e-10)",
                      [&](Checker& c) { check_generic_m_float(c, {4, 6}, 1e-10); }));
  out.push_back(timed("criterion 5: Hasse combinatorics (N<=5 all, N=8 x100, Fig.2 value)",
                      [&](Checker& c) { check_hasse(c, 5, 8, 100, 6, seed + 105, false); }));
  out.push_back(timed("criterion 6: structural identities (N<=5, exact)",
                      [&](Checker& c) { check_structural(c, 5, 5, seed + 106); }));
  out.push_back(timed("criterion 7: closed-form observables (N<=6, exact)",
                      [&](Checker& c) { check_observables(c, 6, 3, seed + 107); }));
  out.push_back(timed("criterion 8: Bethe/TQ coherence (N=2,3 float)", [&](Checker& c) {
    check_bethe_float(c, {2, 3}, 1e-12, 1e-8, 1e-10);
  }));
  out.push_back(timed("criterion 9: spectrum mapping (N<=6 float, 1e-10)",
                      [&](Checker& c) { check_spectrum_map(c, 6, seed + 109, 1e-10); }));
  return out;
}

}  // namespace openchain
