#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "openchain/bethe.hpp"
#include "openchain/sampling.hpp"

using namespace openchain;

namespace {

// Grid of complex starting points, polished by Newton; returns the distinct
// converged roots for m = 1 (canonicalized under x -> -x-1).
std::vector<Complex> solve_m1(const ChainGeometry& geom, Complex p, Complex q,
                              BetheReference ref) {
  std::vector<Complex> found;
  for (double re = -2.6; re <= 2.6; re += 0.45) {
    for (double im = -1.6; im <= 1.6; im += 0.55) {
      Complex x0(re, im);
      if (std::abs(x0) < 0.15 || std::abs(x0 + 1.0) < 0.15 || std::abs(2.0 * x0 + 1.0) < 0.15)
        continue;
      try {
        auto rs = newton_solve_bethe({x0}, geom, p, q, ref);
        Complex r = rs.roots[0];
        // x and -x-1 describe the same Q-function zero pair
        bool dup = false;
        for (const auto& known : found)
          if (std::abs(known - r) < 1e-6 || std::abs(known - (-r - 1.0)) < 1e-6) dup = true;
        if (!dup) found.push_back(r);
      } catch (const Error&) {
        // non-convergent or singular start; keep scanning
      }
    }
  }
  return found;
}

}  // namespace

TEST_CASE("Q-function symmetry under x -> -x-1") {
  RationalSampler s(14);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<Rational> roots{s.nonzero(), s.nonzero() + Rational(10), s.any() - Rational(3)};
    Rational x = s.any();
    CHECK(q_function(roots, x) == q_function(roots, -x - Rational(1)));
  }
}

TEST_CASE("root-set validation") {
  CHECK_THROWS_AS(BetheRoots<Rational>(BetheReference::Minus, {Rational(2), Rational(2)}), Error);
  CHECK_THROWS_AS(BetheRoots<Rational>(BetheReference::Minus, {Rational(2), Rational(-3)}), Error);
  CHECK_NOTHROW(BetheRoots<Rational>(BetheReference::Plus, {Rational(2), Rational(5)}));
}

TEST_CASE("bethe_residual: empty set is vacuously on shell, generic points are not") {
  ChainGeometry geom(2);
  Rational p(1, 2), q(1, 3);
  BetheRoots<Rational> empty(BetheReference::Minus, {});
  CHECK(bethe_residual(empty, geom, p, q).empty());

  BetheRoots<Rational> off(BetheReference::Minus, {Rational(7, 5)});
  auto res = bethe_residual(off, geom, p, q);
  REQUIRE(res.size() == 1);
  CHECK(!res[0].is_zero());

  BetheRoots<Rational> at_pole(BetheReference::Minus, {Rational(0)});
  CHECK_THROWS_WITH_AS(bethe_residual(at_pole, geom, p, q), doctest::Contains("PoleHit"), Error);
}

TEST_CASE("TQ with m = 0 in the Plus convention equals the closed-form eigenvalue") {
  RationalSampler s(808);
  for (int n = 1; n <= 4; ++n) {
    ChainGeometry geom(n);
    Rational p = s.nonzero(), q = s.nonzero();
    auto lam = lambda_n(geom, p, q);
    BetheRoots<Rational> empty(BetheReference::Plus, {});
    for (int rep = 0; rep < 20; ++rep) {
      Rational x = s.any();
      if ((Rational(2) * x + Rational(1)).is_zero()) continue;
      CHECK(tq_eigenvalue(x, empty, geom, p, q) == lam(x));
    }
    CHECK(tq_is_polynomial(empty, geom, p, q));
  }
}

TEST_CASE("TQ value at x = 0 is 2 for any root set") {
  RationalSampler s(99);
  ChainGeometry geom(3);
  for (auto ref : {BetheReference::Plus, BetheReference::Minus}) {
    BetheRoots<Rational> rs(ref, {Rational(5, 3), Rational(-7, 2)});
    CHECK(tq_eigenvalue(Rational(0), rs, geom, s.nonzero(), s.nonzero()) == Rational(2));
  }
}

TEST_CASE("TQ pole guards") {
  ChainGeometry geom(2);
  BetheRoots<Rational> rs(BetheReference::Minus, {Rational(3)});
  CHECK_THROWS_WITH_AS(tq_eigenvalue(Rational(3), rs, geom, Rational(1), Rational(1)),
                       doctest::Contains("QZero"), Error);
  CHECK_THROWS_WITH_AS(tq_eigenvalue(Rational(-1, 2), rs, geom, Rational(1), Rational(1)),
                       doctest::Contains("PoleHit"), Error);
}

TEST_CASE("bethe_vector: empty products give the reference states") {
  ChainGeometry geom(3);
  Rational p(1, 2), q(2, 3);
  BetheRoots<Rational> plus(BetheReference::Plus, {});
  BetheRoots<Rational> minus(BetheReference::Minus, {});
  CHECK(bethe_vector(plus, geom, p, q) == StateVector<Rational>::all_down(3));
  CHECK(bethe_vector(minus, geom, p, q) == StateVector<Rational>::all_up(3));
}

TEST_CASE("bethe_vector magnon sectors: Plus lives in N - m, Minus in m") {
  RationalSampler s(2023);
  ChainGeometry geom(3);
  Rational p = s.nonzero(), q = s.nonzero();
  BetheRoots<Rational> plus(BetheReference::Plus, {Rational(3, 2), Rational(5)});
  auto vp = bethe_vector(plus, geom, p, q);
  CHECK(!vp.is_zero());
  CHECK(magnon_number_apply(vp) == Rational(3 - 2) * vp);

  BetheRoots<Rational> minus(BetheReference::Minus, {Rational(3, 2), Rational(5)});
  auto vm = bethe_vector(minus, geom, p, q);
  CHECK(!vm.is_zero());
  CHECK(magnon_number_apply(vm) == Rational(2) * vm);
}

TEST_CASE("newton_solve_bethe: m = 0 immediately returns the empty solution") {
  ChainGeometry geom(2);
  auto rs = newton_solve_bethe({}, geom, Complex(0.5, 0), Complex(0.5, 0), BetheReference::Minus);
  CHECK(rs.roots.empty());
}

TEST_CASE("N = 1, m = 1 Minus root from a float root-find is on shell") {
  ChainGeometry geom(1);
  Complex p(0.4, 0.0), q(0.7, 0.0);
  auto roots = solve_m1(geom, p, q, BetheReference::Minus);
  REQUIRE(!roots.empty());
  bool matched = false;
  for (Complex r : roots) {
    BetheRoots<Complex> rs(BetheReference::Minus, {r});
    auto res = bethe_residual(rs, geom, p, q);
    CHECK(std::abs(res[0]) < 1e-12);
    // for N = 1 the m = 1 state is the fully excited one; its eigenvalue is
    // the closed form, so the TQ value must reproduce it
    auto lam = lambda_n(geom, Rational(2, 5), Rational(7, 10));
    Complex tq = tq_eigenvalue(Complex(1.3, 0.0), rs, geom, p, q);
    if (std::abs(tq - to_complex(lam(Rational(13, 10)))) < 1e-8) matched = true;
  }
  CHECK(matched);
}

TEST_CASE("N = 2, m = 1: Newton roots, TQ eigenvalues, and eigenvectors cohere") {
  ChainGeometry geom(2);
  Complex p(0.5, 0.0), q(0.5, 0.0);
  Complex x_test(0.8, 0.0);
  auto t0 = transfer_diagonal(x_test, geom, p, q);

  // The Bethe equations admit unphysical solutions (here the Q-degenerate
  // point x = -1/2); the polynomiality certificate separates them from the
  // physical roots, which must match the sector spectrum.
  SUBCASE("Minus reference, magnon sector 1") {
    auto roots = solve_m1(geom, p, q, BetheReference::Minus);
    REQUIRE(!roots.empty());
    auto pairs = sector_eig(t0, 1);
    int matched = 0;
    for (Complex r : roots) {
      BetheRoots<Complex> rs(BetheReference::Minus, {r});
      auto res = bethe_residual(rs, geom, p, q);
      CHECK(std::abs(res[0]) < 1e-12);
      Complex lam = tq_eigenvalue(x_test, rs, geom, p, q);
      bool physical = false;
      for (const auto& ep : pairs)
        if (std::abs(ep.value - lam) < 1e-8) physical = true;
      CHECK(tq_is_polynomial(rs, geom, p, q) == physical);
      if (!physical) continue;
      ++matched;
      // the on-shell vector solves the eigenproblem in the right sector
      auto v = bethe_vector(rs, geom, p, q);
      auto resid = t0 * v - lam * v;
      CHECK(resid.norm2() / v.norm2() < 1e-10);
      CHECK((magnon_number_apply(v) - Complex(1.0, 0) * v).norm2() < 1e-10 * v.norm2());
    }
    CHECK(matched == 2);  // both sector-1 states reached from the grid
  }

  SUBCASE("Plus reference, magnon sector N - 1 = 1") {
    auto roots = solve_m1(geom, p, q, BetheReference::Plus);
    REQUIRE(!roots.empty());
    int matched = 0;
    for (Complex r : roots) {
      BetheRoots<Complex> rs(BetheReference::Plus, {r});
      auto res = bethe_residual(rs, geom, p, q);
      CHECK(std::abs(res[0]) < 1e-12);
      if (!tq_is_polynomial(rs, geom, p, q)) continue;
      Complex lam = tq_eigenvalue(x_test, rs, geom, p, q);
      auto v = bethe_vector(rs, geom, p, q);
      auto resid = t0 * v - lam * v;
      CHECK(resid.norm2() / v.norm2() < 1e-10);
      ++matched;
    }
    CHECK(matched >= 1);
  }
}

TEST_CASE("Plus and Minus vectors for the same eigenvalue are parallel") {
  // N = 2: a Minus set with m_- = 1 and a Plus set with m_+ = N - m_- = 1
  // describing the same Lambda give parallel sector-1 vectors.
  ChainGeometry geom(2);
  Complex p(0.5, 0.0), q(0.5, 0.0);
  Complex x_test(0.8, 0.0);
  auto minus_roots = solve_m1(geom, p, q, BetheReference::Minus);
  auto plus_roots = solve_m1(geom, p, q, BetheReference::Plus);
  REQUIRE(!minus_roots.empty());
  REQUIRE(!plus_roots.empty());
  int paired = 0;
  for (Complex rm : minus_roots) {
    BetheRoots<Complex> rsm(BetheReference::Minus, {rm});
    if (!tq_is_polynomial(rsm, geom, p, q)) continue;  // drop unphysical solutions
    Complex lam_m = tq_eigenvalue(x_test, rsm, geom, p, q);
    for (Complex rp : plus_roots) {
      BetheRoots<Complex> rsp(BetheReference::Plus, {rp});
      if (!tq_is_polynomial(rsp, geom, p, q)) continue;
      Complex lam_p = tq_eigenvalue(x_test, rsp, geom, p, q);
      if (std::abs(lam_m - lam_p) > 1e-8) continue;
      auto vm = bethe_vector(rsm, geom, p, q);
      auto vp = bethe_vector(rsp, geom, p, q);
      double cosine = std::abs(dot(vm, vp)) / (vm.norm2() * vp.norm2());
      CHECK(1.0 - cosine < 1e-8);
      ++paired;
    }
  }
  CHECK(paired >= 1);
}

TEST_CASE("newton_solve_bethe failure modes") {
  ChainGeometry geom(2);
  Complex p(0.5, 0), q(0.5, 0);
  // coincident starting roots never separate, so no valid root set is reached
  CHECK_THROWS_WITH_AS(
      newton_solve_bethe({Complex(1.3, 0.4), Complex(1.3, 0.4)}, geom, p, q,
                         BetheReference::Minus),
      doctest::Contains("MaxIterations"), Error);
  // an unreachable residual target exhausts the iteration budget
  NewtonOptions strict;
  strict.max_iterations = 2;
  strict.residual_target = 1e-30;
  CHECK_THROWS_WITH_AS(
      newton_solve_bethe({Complex(2.0, 1.0)}, geom, p, q, BetheReference::Minus, strict),
      doctest::Contains("MaxIterations"), Error);
  // a conditioning threshold above every pivot reports a singular Jacobian
  NewtonOptions picky;
  picky.jacobian_tol = 1e9;
  CHECK_THROWS_WITH_AS(
      newton_solve_bethe({Complex(2.0, 1.0)}, geom, p, q, BetheReference::Minus, picky),
      doctest::Contains("JacobianSingular"), Error);
}
