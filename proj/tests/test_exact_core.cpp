#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ultra/polynomial.hpp"
#include "ultra/rational.hpp"

using ultra::Int;
using ultra::Rational;
using ultra::RationalPoly;

TEST_CASE("rational parsing and rendering") {
  CHECK(ultra::parse_rational("3/4") == Rational(3, 4));
  CHECK(ultra::parse_rational("-6/8") == Rational(-3, 4));
  CHECK(ultra::parse_rational("7") == Rational(7));
  CHECK(ultra::parse_rational("-0") == Rational(0));
  CHECK_FALSE(ultra::parse_rational("0.5").has_value());
  CHECK_FALSE(ultra::parse_rational("1/0").has_value());
  CHECK_FALSE(ultra::parse_rational("x").has_value());
  CHECK_FALSE(ultra::parse_rational("").has_value());
  CHECK(ultra::to_string(Rational(-3, 4)) == "-3/4");
  CHECK(ultra::to_string(Rational(8, 2)) == "4");
}

TEST_CASE("rational canonical form") {
  const Rational r = ultra::make_rational(6, -8);
  CHECK(numerator(r) == -3);
  CHECK(denominator(r) == 4);  // denominator kept positive
  CHECK(ultra::sgn(r) == -1);
  CHECK(ultra::sgn(Rational(0)) == 0);
  CHECK(ultra::pow_rational(Rational(-2, 3), -3) == ultra::make_rational(27, -8));
  CHECK_THROWS_AS(ultra::make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("pow_rational with negative exponents") {
  CHECK(ultra::pow_rational(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(ultra::pow_rational(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(ultra::pow_rational(Rational(5), 0) == 1);
  CHECK_THROWS_AS(ultra::pow_rational(Rational(0), -1), std::invalid_argument);
}

TEST_CASE("binomial coefficients") {
  CHECK(ultra::binomial(4, 2) == 6);
  CHECK(ultra::binomial(0, 0) == 1);
  CHECK(ultra::binomial(3, 5) == 0);
  CHECK(ultra::binomial(40, 20) == Int("137846528820"));
}

TEST_CASE("polynomial ring basics") {
  const RationalPoly x = RationalPoly::variable();
  SECTION("(x-1)(x+1) = x^2 - 1") {
    const RationalPoly p = (x - RationalPoly::constant(1)) * (x + RationalPoly::constant(1));
    CHECK(p == RationalPoly({Rational(-1), Rational(0), Rational(1)}));
  }
  SECTION("derivative of x^2 is 2x") {
    CHECK((x * x).derivative() == RationalPoly({Rational(0), Rational(2)}));
  }
  SECTION("derivative of the zero polynomial is zero") {
    CHECK(RationalPoly::zero().derivative().is_zero());
    CHECK(RationalPoly::zero().degree() == -1);
  }
}

TEST_CASE("polynomial evaluation") {
  // F_2 expanded by hand: 6t^4 - 12t^3 + 10t^2 - 4t + 1.
  const RationalPoly f2({Rational(1), Rational(-4), Rational(10), Rational(-12), Rational(6)});
  CHECK(f2.eval(Rational(1, 2)) == Rational(3, 8));
  CHECK(f2.eval(Rational(0)) == 1);  // constant coefficient
  const RationalPoly p({Rational(-1), Rational(0), Rational(1)});
  CHECK(p.eval(Rational(1)) == 0);
}

TEST_CASE("affine composition") {
  // p(t) = t^2 + 1 composed with t -> 2t - 1 gives 4t^2 - 4t + 2.
  const RationalPoly p({Rational(1), Rational(0), Rational(1)});
  const RationalPoly q = p.compose_affine(Rational(2), Rational(-1));
  CHECK(q == RationalPoly({Rational(2), Rational(-4), Rational(4)}));
  // Composing with the identity is a no-op.
  CHECK(p.compose_affine(Rational(1), Rational(0)) == p);
}

TEST_CASE("division with remainder") {
  const RationalPoly a({Rational(2), Rational(0), Rational(-3), Rational(1)});
  const RationalPoly b({Rational(-1), Rational(1)});
  const auto [q, r] = divmod(a, b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  CHECK_THROWS_AS(divmod(a, RationalPoly::zero()), std::invalid_argument);
}

namespace {

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  return Rational(num(rng), den(rng));
}

RationalPoly random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  const int d = deg(rng);
  std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
  for (auto& v : c) v = random_rational(rng);
  return RationalPoly(std::move(c));
}

}  // namespace

TEST_CASE("product degrees add") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const RationalPoly p = random_poly(rng, 6);
    const RationalPoly q = random_poly(rng, 6);
    if (p.is_zero() || q.is_zero()) {
      CHECK((p * q).is_zero());
    } else {
      CHECK((p * q).degree() == p.degree() + q.degree());
    }
  }
}

TEST_CASE("derivative matches the termwise power rule") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalPoly p = random_poly(rng, 8);
    const Rational t = random_rational(rng);
    Rational expected(0);
    Rational tpow(1);  // t^(i-1)
    for (int i = 1; i <= p.degree(); ++i) {
      expected += Rational(i) * p.coeff(static_cast<std::size_t>(i)) * tpow;
      tpow *= t;
    }
    CHECK(p.derivative().eval(t) == expected);
  }
}

TEST_CASE("distributivity and evaluation homomorphism") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalPoly p = random_poly(rng, 5);
    const RationalPoly q = random_poly(rng, 5);
    const Rational t = random_rational(rng);
    CHECK((p + q).eval(t) == p.eval(t) + q.eval(t));
    CHECK((p * q).eval(t) == p.eval(t) * q.eval(t));
  }
}
