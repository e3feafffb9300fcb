#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "openchain/jet.hpp"
#include "openchain/poly.hpp"
#include "openchain/sampling.hpp"

using namespace openchain;

TEST_CASE("rational canonical form and parsing") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0/1");
  CHECK(Rational::parse("-3/7").str() == "-3/7");
  CHECK(Rational::parse("5").str() == "5/1");
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK_THROWS_AS(Rational::parse("1/"), Error);
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), Error);
}

TEST_CASE("field axioms hold exactly on random rationals") {
  RationalSampler s(20240001);
  for (int i = 0; i < 200; ++i) {
    Rational a = s.any(), b = s.any(), c = s.any();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
}

TEST_CASE("field axioms hold to 1e-14 relative on complex floats") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    Complex a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    CHECK(std::abs((a + b) + c - (a + (b + c))) <= 1e-14 * (std::abs(a) + std::abs(b) + std::abs(c)));
    CHECK(std::abs(a * (b + c) - (a * b + a * c)) <=
          1e-14 * std::abs(a) * (std::abs(b) + std::abs(c) + 1.0));
  }
}

TEST_CASE("jet product rule and constants") {
  using J = Jet<Rational>;
  J x = J::variable(Rational(3, 2));
  J c(Rational(5));
  CHECK(c.der == Rational(0));
  J prod = x * x;
  CHECK(prod.val == Rational(9, 4));
  CHECK(prod.der == Rational(3));  // 2 x0
  // (a + b eps)(c + d eps) = ac + (ad + bc) eps
  J u(Rational(2), Rational(7)), v(Rational(-3), Rational(1, 2));
  J w = u * v;
  CHECK(w.val == Rational(-6));
  CHECK(w.der == Rational(2) * Rational(1, 2) + Rational(7) * Rational(-3));
}

TEST_CASE("jet derivative of Horner evaluation equals expanded derivative") {
  RationalSampler s(99);
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<Rational> coeffs;
    int deg = 1 + static_cast<int>(s.integer(1, 6));
    for (int i = 0; i <= deg; ++i) coeffs.push_back(s.any());
    Poly<Rational> f(coeffs);
    // expanded derivative
    std::vector<Rational> dc;
    for (std::size_t i = 1; i < f.c.size(); ++i) dc.push_back(Rational(static_cast<long>(i)) * f.c[i]);
    Poly<Rational> df(dc);
    Rational x0 = s.any();
    auto jet = f.eval(Jet<Rational>::variable(x0));
    CHECK(jet.val == f.eval(x0));
    CHECK(jet.der == df.eval(x0));
  }
}

TEST_CASE("jet division inverts multiplication") {
  using J = Jet<Rational>;
  J a(Rational(3, 7), Rational(2));
  J b(Rational(-5, 3), Rational(1, 4));
  J q = a / b;
  CHECK(q * b == a);
}

TEST_CASE("polynomial division by linear factor is exact") {
  RationalSampler s(123);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Rational> qc;
    for (int i = 0; i <= 5; ++i) qc.push_back(s.any());
    Poly<Rational> q(qc);
    Rational a0 = s.nonzero(), a1 = s.nonzero();
    Poly<Rational> divisor(std::vector<Rational>{a0, a1});
    Poly<Rational> p = q * divisor;
    Rational rem;
    Poly<Rational> back = divide_linear(p, a0, a1, &rem);
    CHECK(rem == Rational(0));
    CHECK(back.c == q.c);
  }
}

TEST_CASE("lagrange interpolation recovers rational polynomials") {
  RationalSampler s(4242);
  std::vector<Rational> coeffs{Rational(1, 3), Rational(-2), Rational(0), Rational(5, 7)};
  Poly<Rational> f(coeffs);
  std::vector<Rational> xs, ys;
  for (long i = 0; i < 4; ++i) {
    xs.push_back(Rational(i));
    ys.push_back(f.eval(Rational(i)));
  }
  Poly<Rational> g = lagrange_interpolate(xs, ys);
  CHECK(g.c == f.c);
}

#include "openchain/json_io.hpp"

TEST_CASE("serialization round-trips through the documented schemas") {
  RationalSampler s(606060);
  // scalars
  for (int rep = 0; rep < 50; ++rep) {
    Rational r = s.any();
    CHECK(rational_from_json(scalar_to_json(r)) == r);
  }
  Complex c(1.25, -0.75);
  CHECK(complex_from_json(scalar_to_json(c)) == c);

  // sparse-triplet operators
  for (int rep = 0; rep < 10; ++rep) {
    int n = 1 + static_cast<int>(s.integer(0, 3));
    DenseMatrix<Rational> m(1 << n, 1 << n);
    for (int k = 0; k < 5; ++k)
      m(static_cast<int>(s.integer(0, (1 << n) - 1)), static_cast<int>(s.integer(0, (1 << n) - 1))) =
          s.any();
    CHECK(operator_from_json(operator_to_json(m, n)) == m);
  }

  // state vectors keyed by basis index
  StateVector<Rational> v(3);
  for (auto& a : v.amp) a = s.any();
  CHECK(state_from_json(state_to_json(v), 3) == v);
}
