#include <doctest.h>

#include <random>

#include "qdilog/errors.hpp"
#include "qdilog/poly.hpp"
#include "qdilog/qcoefficient.hpp"

using namespace qdilog;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int max_degree, int bound) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> c(-bound, bound);
  std::vector<mpz_class> v(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : v) x = c(rng);
  return IntPoly(v);
}

// Primitive part with positive leading coefficient.
IntPoly normalized(const IntPoly& p) {
  if (p.is_zero()) return p;
  IntPoly r = p.divided_exactly(p.content());
  return sgn(r.leading()) < 0 ? -r : r;
}

QCoefficient random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-3, 3);
  IntPoly den = random_poly(rng, 3, 4);
  if (den.is_zero()) den = IntPoly(1);
  return QCoefficient(e(rng), random_poly(rng, 3, 4), den);
}

}  // namespace

TEST_CASE("polynomial arithmetic against evaluation") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const IntPoly a = random_poly(rng, 6, 9);
    const IntPoly b = random_poly(rng, 6, 9);
    for (long x : {-3L, -1L, 0L, 2L, 5L}) {
      const mpz_class X(x);
      CHECK((a * b).eval(X) == a.eval(X) * b.eval(X));
      CHECK((a + b).eval(X) == a.eval(X) + b.eval(X));
      CHECK((a - b).eval(X) == a.eval(X) - b.eval(X));
    }
    if (!b.is_zero()) {
      IntPoly quot;
      REQUIRE(try_divide(a * b, b, quot));
      CHECK(quot == a);
    }
  }
}

TEST_CASE("polynomial helpers") {
  const IntPoly p(std::vector<mpz_class>{0, 0, 3, 6});
  CHECK(p.valuation() == 2);
  CHECK(p.content() == 3);
  CHECK(p.shifted_down(2) == IntPoly(std::vector<mpz_class>{3, 6}));
  CHECK(p.shifted_down(2).shifted_up(2) == p);
  CHECK(p.max_norm() == 6);
  CHECK(p.to_string() == "3*q^2 + 6*q^3");
  IntPoly q;
  CHECK_FALSE(try_divide(IntPoly(std::vector<mpz_class>{1, 1}), IntPoly(std::vector<mpz_class>{1, 2}), q));
}

TEST_CASE("gcd of products with a planted common factor") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 150; ++trial) {
    const IntPoly g = random_poly(rng, 3, 5);
    const IntPoly a = random_poly(rng, 4, 5);
    const IntPoly b = random_poly(rng, 4, 5);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    const IntPoly ga = g * a;
    const IntPoly gb = g * b;
    const IntPoly h = gcd(ga, gb);
    CHECK(normalized(h) == normalized(gcd_prs(ga, gb)));
    IntPoly quot;
    CHECK(try_divide(ga, h, quot));
    CHECK(try_divide(gb, h, quot));
    CHECK(try_divide(h, normalized(g), quot));
  }
  // (q - 1)(q + 2) and (q - 1)(q + 3)
  const IntPoly a(std::vector<mpz_class>{-2, 1, 1});
  const IntPoly b(std::vector<mpz_class>{-3, 2, 1});
  CHECK(normalized(gcd(a, b)) == IntPoly(std::vector<mpz_class>{-1, 1}));
}

TEST_CASE("QCoefficient canonical form") {
  // (q^2 - q^3) / (2q - 2q^2) = q / 2
  const QCoefficient c(0, IntPoly(std::vector<mpz_class>{0, 0, 1, -1}), IntPoly(std::vector<mpz_class>{0, 2, -2}));
  CHECK(c.exponent() == 1);
  CHECK(c.numerator() == IntPoly(1));
  CHECK(c.denominator() == IntPoly(2));
  CHECK(QCoefficient(0) == QCoefficient());
  CHECK(QCoefficient::q_power(3).times_q_power(-3).is_one());
  CHECK_THROWS_AS(QCoefficient().inverse(), NonInvertible);
}

TEST_CASE("QCoefficient field operations agree with evaluation at rational q") {
  std::mt19937_64 rng(23);
  const std::vector<mpq_class> points{mpq_class(2), mpq_class(-3, 5), mpq_class(7, 3)};
  for (int trial = 0; trial < 150; ++trial) {
    const QCoefficient a = random_coefficient(rng);
    const QCoefficient b = random_coefficient(rng);
    for (const auto& x : points) {
      if (a.denominator().eval(x) == 0 || b.denominator().eval(x) == 0) continue;
      const mpq_class ax = a.eval(x);
      const mpq_class bx = b.eval(x);
      CHECK((a + b).eval(x) == ax + bx);
      CHECK((a * b).eval(x) == ax * bx);
      if (!b.is_zero() && bx != 0) CHECK((a / b).eval(x) == ax / bx);
    }
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
  }
}
