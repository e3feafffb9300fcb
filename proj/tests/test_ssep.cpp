#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>

#include "openchain/oracles.hpp"
#include "openchain/sampling.hpp"
#include "openchain/ssep.hpp"

using namespace openchain;

namespace {

SsepRates<Rational> random_rates(RationalSampler& s) {
  while (true) {
    SsepRates<Rational> r{s.positive(), s.positive(), s.positive(), s.positive()};
    if (r.alpha * r.beta != r.gamma * r.delta) return r;
  }
}

SsepRates<Complex> to_float(const SsepRates<Rational>& r) {
  return {to_complex(r.alpha), to_complex(r.beta), to_complex(r.gamma), to_complex(r.delta)};
}

}  // namespace

TEST_CASE("Markov generator: N = 1 matrix and column sums") {
  SsepRates<Rational> r{Rational(2, 3), Rational(1, 2), Rational(3), Rational(5, 4)};
  ChainGeometry geom(1);
  auto h = markov_matrix(geom, r);
  CHECK(h(0, 0) == -r.alpha - r.delta);
  CHECK(h(0, 1) == r.gamma + r.beta);
  CHECK(h(1, 0) == r.alpha + r.delta);
  CHECK(h(1, 1) == -r.gamma - r.beta);

  RationalSampler s(31);
  for (int n = 1; n <= 8; ++n) {
    auto rates = random_rates(s);
    auto gen = markov_matrix(ChainGeometry(n), rates);
    for (int c = 0; c < gen.cols(); ++c) {
      Rational sum(0);
      for (int row = 0; row < gen.rows(); ++row) sum += gen(row, c);
      CHECK(sum == Rational(0));
    }
  }
}

TEST_CASE("parameter identification and the similarity of Hamiltonians") {
  RationalSampler s(47);
  for (int n = 1; n <= 5; ++n) {
    auto r = random_rates(s);
    auto id = identify(r);
    CHECK(id.c1 == Rational(2));
    CHECK(id.c0 == r.alpha + r.beta + r.gamma + r.delta);
    ChainGeometry geom(n);
    auto htilde = markov_matrix(geom, r);
    auto hdelta = triangular_hamiltonian(geom, identified_params(r));
    // H_Delta = c1 S_Gamma^-1 Htilde S_Gamma + c0
    auto g = gamma_matrix(r);
    auto conj = site_conjugate(invert2(g), htilde);
    CHECK(conj * id.c1 + DenseMatrix<Rational>::identity(geom.dim()) * id.c0 == hdelta);
  }
  // worked example: alpha = beta = 1, gamma = delta = 0
  SsepRates<Rational> r{Rational(1), Rational(1), Rational(0), Rational(0)};
  auto id = identify(r);
  CHECK(id.p == Rational(-1));
  CHECK(id.q == Rational(-1));
  CHECK(id.delta == Rational(2));
  CHECK(id.c0 == Rational(2));
  CHECK(id.rho_a == Rational(1));
  CHECK(id.rho_b == Rational(0));
}

TEST_CASE("conjugated SSEP K-matrices become the triangular/diagonal pair") {
  RationalSampler s(58);
  for (int rep = 0; rep < 10; ++rep) {
    auto r = random_rates(s);
    auto id = identify(r);
    Rational x = s.any();
    auto g = gamma_matrix(r);
    auto ginv = invert2(g);
    CHECK(ginv * k_tilde(x, r) * g == k_plus(x, id.p, id.delta));
    CHECK(ginv * k_tilde_hat(x, r) * g == k_hat(x, id.q));
    // and the hatted one is the announced diagonal matrix
    auto kh = ginv * k_tilde_hat(x, r) * g;
    CHECK(kh(0, 0) == Rational(1) - x * (r.beta + r.delta));
    CHECK(kh(1, 1) == Rational(1) + x * (r.beta + r.delta));
    CHECK(kh(0, 1) == Rational(0));
    CHECK(kh(1, 0) == Rational(0));
  }
}

TEST_CASE("SSEP transfer matrix is similar to the triangular one") {
  RationalSampler s(69);
  for (int n = 1; n <= 5; ++n) {
    ChainGeometry geom(n);
    auto r = random_rates(s);
    Rational x = s.any();
    auto ttilde = ssep_transfer(x, geom, r);
    auto tdelta = transfer(x, geom, identified_params(r));
    auto g = gamma_matrix(r);
    CHECK(site_conjugate(invert2(g), ttilde) == tdelta);
  }
}

TEST_CASE("logarithmic derivative of the SSEP transfer matrix gives the generator") {
  RationalSampler s(70);
  for (int n = 1; n <= 5; ++n) {
    ChainGeometry geom(n);
    auto r = random_rates(s);
    SsepRates<Jet<Rational>> rj{Jet<Rational>(r.alpha), Jet<Rational>(r.beta),
                                Jet<Rational>(r.gamma), Jet<Rational>(r.delta)};
    auto tj = ssep_transfer(Jet<Rational>::variable(Rational(0)), geom, rj);
    int dim = geom.dim();
    DenseMatrix<Rational> value(dim, dim), deriv(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        value(i, j) = tj(i, j).val;
        deriv(i, j) = tj(i, j).der;
      }
    CHECK(value == DenseMatrix<Rational>::identity(dim) * Rational(2));
    // Htilde = (1/2)(d/dx log T(x)|_0 - (2N - 1 + c0) I), with T(0) = 2I
    Rational c0 = r.alpha + r.beta + r.gamma + r.delta;
    auto logder = deriv * Rational(1, 2) -
                  DenseMatrix<Rational>::identity(dim) * (Rational(2 * n - 1) + c0);
    CHECK(logder * Rational(1, 2) == markov_matrix(geom, r));
  }
}

TEST_CASE("gamma matrix relations") {
  RationalSampler s(81);
  for (int rep = 0; rep < 10; ++rep) {
    auto r = random_rates(s);
    auto g = gamma_matrix(r);
    // (<0| + <1|) Gamma = <1|
    CHECK(g(0, 0) + g(1, 0) == Rational(0));
    CHECK(g(0, 1) + g(1, 1) == Rational(1));
    // <m| Gamma = (-1)^{m+1}/(a+g) <0| + (d/b)^m b/(b+d) <1|
    Rational ag = r.alpha + r.gamma, bd = r.beta + r.delta;
    CHECK(g(0, 0) == -(Rational(1) / ag));
    CHECK(g(0, 1) == r.beta / bd);
    CHECK(g(1, 0) == Rational(1) / ag);
    CHECK(g(1, 1) == (r.delta / r.beta) * (r.beta / bd));
    // S_Gamma^-1 S_Gamma = identity as a state map
    StateVector<Rational> v(3);
    RationalSampler sv(5);
    for (auto& a : v.amp) a = sv.any();
    CHECK(site_transform(invert2(g), site_transform(g, v)) == v);
  }
  SsepRates<Rational> equilibrium{Rational(1), Rational(1), Rational(1), Rational(1)};
  CHECK_THROWS_WITH_AS(gamma_matrix(equilibrium), doctest::Contains("SingularGamma"), Error);
}

TEST_CASE("steady state: N = 1 closed form and annihilation by the generator") {
  RationalSampler s(92);
  for (int rep = 0; rep < 5; ++rep) {
    auto r = random_rates(s);
    ChainGeometry geom(1);
    auto ss = steady_state(geom, r);
    Rational total = r.alpha + r.beta + r.gamma + r.delta;
    CHECK(ss.probabilities.amp[0] == (r.beta + r.gamma) / total);
    CHECK(ss.probabilities.amp[1] == (r.alpha + r.delta) / total);
    CHECK(ss.rescale == Rational(1));  // unit-mass normalization is automatic
  }
  for (int n = 1; n <= 6; ++n) {
    auto r = random_rates(s);
    ChainGeometry geom(n);
    auto ss = steady_state(geom, r);
    CHECK((markov_matrix(geom, r) * ss.probabilities).is_zero());
    Rational mass(0);
    for (const auto& a : ss.probabilities.amp) {
      CHECK(a > Rational(0));  // positivity at tested sizes
      mass += a;
    }
    CHECK(mass == Rational(1));
    // exact kernel route gives the same vector
    CHECK(ss.probabilities == nullspace_steady(geom, r));
  }
}

TEST_CASE("steady state on the equilibrium line is the Bernoulli measure") {
  // rho_a = rho_b = rho exactly when alpha beta = gamma delta
  SsepRates<Rational> r{Rational(1), Rational(3, 2), Rational(1), Rational(3, 2)};
  ChainGeometry geom(3);
  auto ss = steady_state(geom, r);
  Rational rho = r.alpha / (r.alpha + r.gamma);
  for (std::uint32_t b = 0; b < ss.probabilities.dim(); ++b) {
    int m = magnon_count(b);
    Rational expect(1);
    for (int i = 0; i < m; ++i) expect *= rho;
    for (int i = 0; i < 3 - m; ++i) expect *= (Rational(1) - rho);
    CHECK(ss.probabilities.amp[b] == expect);
  }
}

TEST_CASE("closed-form probabilities: normalization, Bernoulli limit, oracle equality") {
  RationalSampler s(103);
  for (int n = 1; n <= 5; ++n) {
    ChainGeometry geom(n);
    auto r = random_rates(s);
    auto ss = steady_state(geom, r);
    Rational total(0);
    for (std::uint32_t b = 0; b < (1u << n); ++b) {
      auto cfg = OccupationConfig::from_index(b, n);
      Rational prob = probability(cfg, geom, r);
      total += prob;
      CHECK(prob == ss.probabilities.amp[b]);
      CHECK(prob == dehp_probability(cfg, r, geom));
    }
    CHECK(total == Rational(1));
  }
  // Bernoulli reduction
  SsepRates<Rational> eq{Rational(2), Rational(5), Rational(1), Rational(10)};
  REQUIRE(eq.alpha * eq.beta == eq.gamma * eq.delta);
  ChainGeometry geom2(2);
  Rational rho = eq.alpha / (eq.alpha + eq.gamma);
  CHECK(probability(OccupationConfig::from_string("11"), geom2, eq) == rho * rho);
  CHECK(probability(OccupationConfig::from_string("01"), geom2, eq) ==
        (Rational(1) - rho) * rho);

  SsepRates<Rational> zero_beta{Rational(1), Rational(0), Rational(1), Rational(2)};
  CHECK_THROWS_WITH_AS(probability(OccupationConfig::from_string("01"), geom2, zero_beta),
                       doctest::Contains("ZeroBeta"), Error);
}

TEST_CASE("correlators: density profile, Bernoulli factorization, marginal sums") {
  RationalSampler s(114);
  // alpha = beta = 1, gamma = delta = 0, N = 3: <i> = (4-i)/4
  SsepRates<Rational> r10{Rational(1), Rational(1), Rational(0), Rational(0)};
  ChainGeometry geom3(3);
  for (int i = 1; i <= 3; ++i) {
    CHECK(density(i, geom3, r10) == Rational(4 - static_cast<long>(i), 4));
    CHECK(correlator({i}, geom3, r10) == Rational(4 - static_cast<long>(i), 4));
  }

  // k = 1 correlator is the density for random rates
  for (int rep = 0; rep < 5; ++rep) {
    auto r = random_rates(s);
    for (int i = 1; i <= 3; ++i) CHECK(correlator({i}, geom3, r) == density(i, geom3, r));
  }

  // Bernoulli: <i> = rho, <i j> = rho^2
  SsepRates<Rational> eq{Rational(2), Rational(5), Rational(1), Rational(10)};
  Rational rho = eq.alpha / (eq.alpha + eq.gamma);
  CHECK(correlator({2}, geom3, eq) == rho);
  CHECK(correlator({1, 3}, geom3, eq) == rho * rho);

  // marginal-sum identity against the exact steady state, N <= 5, all k
  for (int n = 1; n <= 5; ++n) {
    ChainGeometry geom(n);
    auto r = random_rates(s);
    auto ss = steady_state(geom, r);
    for (std::uint32_t sites_mask = 1; sites_mask < (1u << n); ++sites_mask) {
      std::vector<int> sites;
      for (int i = 1; i <= n; ++i)
        if (sites_mask & (1u << (n - i))) sites.push_back(i);
      Rational marginal(0);
      for (std::uint32_t b = 0; b < (1u << n); ++b)
        if ((b & sites_mask) == sites_mask) marginal += ss.probabilities.amp[b];
      CHECK(correlator(sites, geom, r) == marginal);
    }
  }

  // full correlator equals the all-ones probability
  auto r = random_rates(s);
  CHECK(correlator({1, 2, 3}, geom3, r) ==
        probability(OccupationConfig::from_string("111"), geom3, r));
}

TEST_CASE("spectrum mapping between the generator and the triangular chain (float)") {
  RationalSampler s(125);
  for (int n = 2; n <= 6; n += 2) {
    ChainGeometry geom(n);
    auto rr = random_rates(s);
    auto r = to_float(rr);
    auto id = identify(r);
    auto htilde = markov_matrix(geom, r);
    auto hdelta = triangular_hamiltonian(geom, identified_params(r));
    int dim = geom.dim();
    Eigen::MatrixXcd a(dim, dim), b(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        a(i, j) = htilde(i, j);
        b(i, j) = hdelta(i, j);
      }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ea(a, false), eb(b, false);
    std::vector<Complex> sa(ea.eigenvalues().data(), ea.eigenvalues().data() + dim);
    std::vector<Complex> sb(eb.eigenvalues().data(), eb.eigenvalues().data() + dim);
    // Etilde = (E - c0)/c1
    for (auto& v : sb) v = (v - id.c0) / id.c1;
    auto lt = [](const Complex& u, const Complex& v) {
      if (u.real() != v.real()) return u.real() < v.real();
      return u.imag() < v.imag();
    };
    std::sort(sa.begin(), sa.end(), lt);
    std::sort(sb.begin(), sb.end(), lt);
    for (int i = 0; i < dim; ++i) CHECK(std::abs(sa[i] - sb[i]) < 1e-10);
  }
}

#include <thread>

TEST_CASE("probability evaluations are safe to run concurrently") {
  RationalSampler s(136);
  auto r = random_rates(s);
  ChainGeometry geom(4);
  std::vector<Rational> sequential(16);
  for (std::uint32_t b = 0; b < 16; ++b)
    sequential[b] = probability(OccupationConfig::from_index(b, 4), geom, r);

  std::vector<Rational> parallel(16);
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&, w] {
      for (std::uint32_t b = w; b < 16; b += 4)
        parallel[b] = probability(OccupationConfig::from_index(b, 4), geom, r);
    });
  for (auto& t : workers) t.join();
  for (std::uint32_t b = 0; b < 16; ++b) CHECK(parallel[b] == sequential[b]);
}
