#include <doctest.h>

#include "pseudoexp/errors.hpp"
#include "pseudoexp/field/involution.hpp"
#include "support.hpp"

using namespace pexp::field;
using testing::Gen;
using testing::parse;
using testing::syms;

TEST_CASE("field axioms on sampled triples") {
  Gen g(7);
  const auto v = syms({"s", "t"});
  for (int k = 0; k < 150; ++k) {
    const RatExpr a = g.ratexpr(v), b = g.ratexpr(v), c = g.ratexpr(v);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    if (!a.is_zero()) CHECK(a * a.inverse() == RatExpr(1));
  }
}

TEST_CASE("canonical form") {
  const RatExpr e = parse("(t^2 - 1)/(2*t - 2)");
  CHECK(e == parse("t/2 + 1/2"));
  CHECK(e.den() == Polynomial(1));
  const RatExpr f = parse("(3*t)/(6*t^2 + 3)");
  CHECK(f.den().leading_coefficient().is_one());
  CHECK(f == parse("t/(2*t^2+1)"));
}

TEST_CASE("printing round-trips through the parser") {
  Gen g(9);
  const auto v = syms({"u", "v", "w1"});
  for (int k = 0; k < 200; ++k) {
    const RatExpr a = g.ratexpr(v);
    CHECK(RatExpr::parse(a.to_string()) == a);
  }
  CHECK(parse("(1+i*s)/(1-i*s)").to_string() == "(-s + i)/(s + i)");
  CHECK(parse("zeta(3)^3") == RatExpr(1));
  CHECK(parse("u^-2") == parse("1/(u*u)"));
  CHECK(parse("2^(-1)") == RatExpr(Scalar(Rational(1, 2))));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(RatExpr::parse("1/0"), pexp::ParseError);
  CHECK_THROWS_AS(RatExpr::parse("u +"), pexp::ParseError);
  CHECK_THROWS_AS(RatExpr::parse("U"), pexp::ParseError);
  CHECK_THROWS_AS(RatExpr::parse("(u"), pexp::ParseError);
  CHECK_THROWS_AS(RatExpr::parse("zeta(0)"), pexp::ParseError);
}

TEST_CASE("substitution is a ring homomorphism") {
  Gen g(13);
  const auto v = syms({"s", "t"});
  const std::map<Symbol, RatExpr> sub{{v[0], parse("t^2/(t+1)")}, {v[1], parse("s - 2")}};
  for (int k = 0; k < 60; ++k) {
    const RatExpr a = g.ratexpr(v), b = g.ratexpr(v);
    CHECK((a + b).substitute(sub) == a.substitute(sub) + b.substitute(sub));
    CHECK((a * b).substitute(sub) == a.substitute(sub) * b.substitute(sub));
  }
}

TEST_CASE("derivatives") {
  CHECK(parse("u^3/v").derivative(Symbol::intern("u")) == parse("3*u^2/v"));
  CHECK(parse("1/(1+u)").derivative(Symbol::intern("u")) == parse("-1/(1+u)^2"));
}
