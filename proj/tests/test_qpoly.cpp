#include <doctest.h>

#include <random>

#include "kfp/errors.hpp"
#include "kfp/qpoly.hpp"

using namespace kfp;

namespace {

Poly random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), num(-5, 5), den(1, 4);
  std::vector<Rat> c;
  int d = deg(rng);
  for (int i = 0; i <= d; ++i) c.push_back(Rat(num(rng)) / den(rng));
  return Poly::from_coeffs(c);
}

}  // namespace

TEST_CASE("rationals parse and print as p/q") {
  CHECK(parse_rat("3/6") == Rat(1, 2));
  CHECK(parse_rat("-5/4") == Rat(-5, 4));
  CHECK(parse_rat("7") == 7);
  CHECK(rat_str(Rat(-3, 2)) == "-3/2");
  CHECK(rat_str(Rat(4)) == "4");
  CHECK_THROWS_AS(parse_rat("1/0"), Error);
  CHECK_THROWS_AS(parse_rat("1.5"), Error);
  CHECK_THROWS_AS(parse_rat(""), Error);
  CHECK(rat_mod(Rat(-1, 2), 2) == Rat(3, 2));
  CHECK(floor_div(Rat(-7), 2) == -4);
}

TEST_CASE("polynomial arithmetic") {
  Poly u = Poly::var();
  Poly p = (u - Poly(Rat(1, 2))) * (u - Poly(Rat(5, 2)));
  CHECK(p == Poly::from_coeffs({Rat(5, 4), -3, 1}));
  CHECK(p.eval(Rat(1, 2)) == 0);
  CHECK(p.shift(1).eval(Rat(-1, 2)) == 0);
  CHECK(p.affine(2, 0).eval(Rat(1, 4)) == 0);
  CHECK(p.str() == "u^2 - 3*u + 5/4");
  CHECK(Poly().is_zero());
  CHECK(Poly(0).degree() == -1);
  CHECK(pow(u, 3) == u * u * u);
  CHECK(Poly::from_roots({{Rat(1, 2), 1}, {Rat(5, 2), 1}}) == p);
}

TEST_CASE("division, gcd and Bezout agree on random inputs") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    Poly a = random_poly(rng, 5), b = random_poly(rng, 4);
    if (b.is_zero()) continue;
    Poly q, r;
    divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    CHECK((a * b) / b == a);
    Poly g = gcd(a, b);
    if (!a.is_zero()) {
      CHECK((a % g).is_zero());
      CHECK((b % g).is_zero());
    }
    BezoutResult bz = bezout({a, b});
    CHECK(a * bz.gs[0] + b * bz.gs[1] == bz.d);
    CHECK(bz.d == g);
  }
}

TEST_CASE("three-term Bezout with minimal degree cofactors") {
  Poly u = Poly::var();
  Poly f1 = u * (u - Poly(1)), f2 = (u - Poly(1)) * (u - Poly(2)), f3 = u * (u - Poly(2));
  BezoutResult bz = bezout({f1, f2, f3});
  CHECK(bz.d == Poly(1));
  CHECK(f1 * bz.gs[0] + f2 * bz.gs[1] + f3 * bz.gs[2] == Poly(1));
  for (const auto& g : bz.gs) CHECK(g.degree() <= 0);
}

TEST_CASE("rational roots") {
  Poly u = Poly::var();
  Poly p = Poly(Rat(3)) * pow(u - Poly(Rat(1, 3)), 2) * (u + Poly(2));
  RootMultiset r = roots_rational(p);
  CHECK(r.factor == 3);
  CHECK(r.roots.at(Rat(1, 3)) == 2);
  CHECK(r.roots.at(Rat(-2)) == 1);
  CHECK(r.expand() == p);
  CHECK_THROWS_AS(roots_rational(u * u - Poly(2)), Error);
  try {
    roots_rational(u * u + Poly(1));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IrrationalRoots);
  }
}

TEST_CASE("rational functions") {
  Poly u = Poly::var();
  RatFunc f(u * (u - Poly(1)), (u - Poly(1)) * (u + Poly(2)));
  CHECK(f.num() == u);
  CHECK(f.den() == u + Poly(2));
  CHECK(f.eval(2) == Rat(1, 2));
  CHECK_THROWS_AS(f.eval(-2), Error);
  CHECK(!f.regular_at(-2));
  CHECK(f * f.inverse() == RatFunc(1));
  CHECK(vanishing_order(f, 0) == 1);
  CHECK(vanishing_order(f, -2) == -1);
  CHECK(vanishing_order(f, 5) == 0);
  CHECK(f.shift(1).eval(1) == f.eval(2));
  RatFunc g(Poly(Rat(2)), Poly(Rat(4)));
  CHECK(g.is_constant());
  CHECK(g.constant_value() == Rat(1, 2));
}
