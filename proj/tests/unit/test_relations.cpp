#include <doctest.h>

#include <functional>

#include "pseudoexp/errors.hpp"
#include "pseudoexp/field/reembed.hpp"
#include "pseudoexp/field/relations.hpp"
#include "support.hpp"

using namespace pexp::field;
using pexp::intmat::IntMat;
using testing::Gen;
using testing::parse;
using testing::syms;

namespace {

bool in_lattice_span(const IntMat& lattice, const std::vector<long>& v) {
  IntMat row(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) row(0, j) = v[j];
  if (lattice.rows() == 0) return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
  return pexp::intmat::rank(IntMat::stack(lattice, row)) == lattice.rows();
}

RatExpr monomial_product(const std::vector<RatExpr>& fs, const std::vector<long>& m) {
  RatExpr r(1);
  for (std::size_t j = 0; j < fs.size(); ++j) r *= fs[j].pow(m[j]);
  return r;
}

RatExpr linear_combination(const std::vector<RatExpr>& fs, const std::vector<long>& m) {
  RatExpr r;
  for (std::size_t j = 0; j < fs.size(); ++j) r += RatExpr(m[j]) * fs[j];
  return r;
}

// Every vector in [-2,2]^k.
void for_each_small(std::size_t k, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> v(k, -2);
  while (true) {
    f(v);
    std::size_t i = 0;
    while (i < k && v[i] == 2) v[i++] = -2;
    if (i == k) return;
    ++v[i];
  }
}

}  // namespace

TEST_CASE("additive relation examples") {
  auto r = q_linear_relations({parse("t"), parse("2*t")});
  REQUIRE(r.rank() == 1);
  CHECK(r.generators == IntMat{{2, -1}});
  r = q_linear_relations({parse("t"), parse("1 - t")});
  REQUIRE(r.rank() == 1);
  CHECK(r.generators == IntMat{{1, 1}});
  CHECK(r.notes[0].constant == RatExpr(1));
  CHECK(q_linear_relations({parse("t1"), parse("t2")}).empty());
}

TEST_CASE("multiplicative relation examples") {
  auto r = mult_relations({parse("t"), parse("t^2"), parse("1/t")});
  CHECK(r.rank() == 2);
  CHECK(in_lattice_span(r.generators, {2, -1, 0}));
  CHECK(in_lattice_span(r.generators, {1, 0, 1}));
  for (const auto& n : r.notes) CHECK(n.kind == ConstantKind::One);
  CHECK(mult_relations({parse("t"), parse("1 - t")}).empty());
  r = mult_relations({parse("3*t"), parse("t")});
  REQUIRE(r.rank() == 1);
  CHECK(r.generators == IntMat{{1, -1}});
  CHECK(r.notes[0].constant == RatExpr(3));
  CHECK(r.notes[0].kind == ConstantKind::Other);
  r = mult_relations({parse("-t"), parse("t")});
  CHECK(r.notes[0].kind == ConstantKind::RootOfUnity);
  CHECK(r.notes[0].order == 2);
  CHECK_THROWS_AS(mult_relations({parse("t"), RatExpr(0)}), pexp::MathError);
}

TEST_CASE("relations modulo constants in a subset of indeterminates") {
  const auto u = syms({"u"});
  auto r = mult_relations({parse("c*u"), parse("u")}, u);
  REQUIRE(r.rank() == 1);
  CHECK(r.notes[0].constant == parse("c"));
  CHECK(q_linear_relations({parse("u + c"), parse("u")}, u).rank() == 1);
}

TEST_CASE("relation lattices against brute force") {
  Gen g(31);
  const auto v = syms({"a", "b"});
  const std::vector<RatExpr> atoms{parse("a"), parse("b"), parse("a + 1"), parse("a - b"), parse("2")};
  for (int round = 0; round < 25; ++round) {
    std::vector<RatExpr> fs;
    for (int j = 0; j < 3; ++j) {
      RatExpr f(1);
      for (const auto& at : atoms) {
        const long e = g.integer(-1, 1);
        if (e) f *= at.pow(e);
      }
      fs.push_back(f);
    }
    const auto mult = mult_relations(fs);
    for (std::size_t r = 0; r < mult.rank(); ++r) {
      std::vector<long> m;
      for (std::size_t j = 0; j < fs.size(); ++j) m.push_back(mult.generators(r, j).get_si());
      CHECK(monomial_product(fs, m).is_constant());
    }
    for_each_small(fs.size(), [&](const std::vector<long>& m) {
      if (monomial_product(fs, m).is_constant()) CHECK(in_lattice_span(mult.generators, m));
    });

    std::vector<RatExpr> ls;
    for (int j = 0; j < 3; ++j) ls.push_back(RatExpr(g.integer(-2, 2)) * parse("a") + RatExpr(g.integer(-2, 2)) * parse("b") + RatExpr(g.integer(-2, 2)));
    const auto add = q_linear_relations(ls);
    for (std::size_t r = 0; r < add.rank(); ++r) CHECK(add.notes[r].constant.is_constant());
    for_each_small(ls.size(), [&](const std::vector<long>& m) {
      if (linear_combination(ls, m).is_constant()) CHECK(in_lattice_span(add.generators, m));
    });
  }
}

TEST_CASE("linear coordinates") {
  const std::vector<RatExpr> basis{parse("t"), parse("i*w")};
  auto c = linear_coordinates(basis, parse("t/2 - 3*i*w"));
  REQUIRE(c.has_value());
  CHECK((*c)[0] == Rational(1, 2));
  CHECK((*c)[1] == Rational(-3));
  CHECK_FALSE(linear_coordinates(basis, parse("w")).has_value());
  CHECK(linear_dimension({parse("t"), parse("2*t"), parse("s")}) == 2);
}

TEST_CASE("coprime base") {
  const auto base = coprime_base({parse("x^2 - 1").num(), parse("x + 1").num(), parse("x*(x-1)").num()});
  CHECK(base.size() == 3);
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) CHECK(gcd(base[i], base[j]).is_constant());
}

TEST_CASE("re-embedding") {
  Involution inv;
  inv.add_real(Symbol::intern("u"));
  inv.add_pair(Symbol::intern("p"), Symbol::intern("q"));
  inv.add_real(Symbol::intern("s"));
  NameSupply names(0);

  auto r1 = reembed(inv, names, Symbol::intern("u"), 1);
  CHECK(r1.apply(parse("u")) == RatExpr::variable(r1.new_name));
  auto r2 = reembed(inv, names, Symbol::intern("u"), 2);
  CHECK(r2.apply(parse("u^2")) == RatExpr::variable(r2.new_name).pow(4));
  CHECK_THROWS_AS(reembed(inv, names, Symbol::intern("u"), 0), pexp::MathError);

  // Paired: both sides substituted, sigma-equivariance preserved.
  auto r3 = reembed(inv, names, Symbol::intern("p"), 3);
  REQUIRE(r3.new_partner.has_value());
  Gen g(41);
  const auto v = syms({"p", "q", "u"});
  for (int k = 0; k < 30; ++k) {
    const RatExpr a = g.ratexpr(v), b = g.ratexpr(v);
    CHECK(r3.apply(inv.apply(a)) == inv.apply(r3.apply(a)));
    CHECK(r3.apply(a + b) == r3.apply(a) + r3.apply(b));
    CHECK(r3.apply(a * b) == r3.apply(a) * r3.apply(b));
  }

  // Circle: the Cayley transform is raised to the q-th power.
  auto r4 = reembed(inv, names, Symbol::intern("s"), 3, ReembedKind::Circle);
  const RatExpr i(Scalar::imaginary_unit());
  const RatExpr s2 = RatExpr::variable(r4.new_name);
  const RatExpr cayley = (RatExpr(1) + i * parse("s")) / (RatExpr(1) - i * parse("s"));
  CHECK(r4.apply(cayley) == ((RatExpr(1) + i * s2) / (RatExpr(1) - i * s2)).pow(3));
  CHECK(inv.apply(r4.apply(parse("s"))) == r4.apply(parse("s")));
}
