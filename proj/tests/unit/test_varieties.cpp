#include <doctest.h>

#include "pseudoexp/errors.hpp"
#include "pseudoexp/intmat/lemmas.hpp"
#include "pseudoexp/varieties/catalog.hpp"
#include "pseudoexp/varieties/io.hpp"
#include "support.hpp"

using namespace pexp::varieties;
using pexp::field::Involution;
using pexp::field::NameSupply;
using testing::Gen;
using testing::parse;
using testing::syms;

namespace {

// Oracle: Jacobian transcendence degree of the pushed maps, computed
// without the differential frame.
std::size_t oracle_dim(const IntMat& M, const ParamVariety& v) {
  const ParamVariety p = push(M, v);
  std::vector<RatExpr> all = p.additive;
  all.insert(all.end(), p.multiplicative.begin(), p.multiplicative.end());
  if (v.params.empty()) return 0;
  return pexp::field::tr_deg(all, {}, v.params);
}

IntMat unimodular(Gen& g, std::size_t n) {
  IntMat u = IntMat::identity(n);
  for (int s = 0; s < 4; ++s) {
    const std::size_t i = g.integer(0, n - 1), j = g.integer(0, n - 1);
    if (i == j) continue;
    const long c = g.integer(-2, 2);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
  }
  return u;
}

ParamVariety variety(const char* name, std::vector<const char*> params, std::vector<const char*> z,
                     std::vector<const char*> w) {
  std::vector<Symbol> ps;
  for (auto p : params) ps.push_back(Symbol::intern(p));
  std::vector<RatExpr> zs, ws;
  for (auto e : z) zs.push_back(parse(e));
  for (auto e : w) ws.push_back(parse(e));
  return make_variety(name, ps, zs, ws);
}

Involution with_reals(std::initializer_list<const char*> names) {
  Involution inv;
  for (auto n : names) inv.add_real(Symbol::intern(n));
  return inv;
}

}  // namespace

TEST_CASE("make_variety") {
  const auto g = catalog("graph");
  CHECK(g.n() == 1);
  CHECK(equations_hold(g));
  const auto ph = catalog("parabola-half");
  CHECK(ph.additive[0] == parse("u^2/2"));
  CHECK_THROWS_AS(variety("bad", {"u"}, {"u"}, {"0"}), pexp::MathError);
  CHECK_THROWS_AS(make_variety({"bad", 1, {"u"}, {"u"}, {"u"}, {"w1 - z1^2"}}), pexp::MathError);
  CHECK_THROWS_AS(make_variety({"bad", 2, {"u"}, {"u"}, {"u"}, {}}), pexp::DimensionError);
  CHECK_THROWS_AS(make_variety({"bad", 1, {"u", "u"}, {"u"}, {"u"}, {}}), pexp::ParseError);
  CHECK_THROWS_AS(catalog("nope"), pexp::ConfigError);
  for (const auto& name : catalog_names()) CHECK(equations_hold(catalog(name)));
}

TEST_CASE("variety json round trip") {
  const auto spec = spec_from_json(nlohmann::json::parse(
      R"({"name":"c","n":1,"params":["u"],"additive":["u^2/2"],"multiplicative":["u"],"equations":["w1^2-2*z1"]})"));
  const auto v = make_variety(spec);
  CHECK(v.name == "c");
  const auto again = make_variety(spec_from_json(to_json(spec)));
  CHECK(again.additive == v.additive);
  CHECK(to_json(v)["additive"][0] == "1/2*u^2");
}

TEST_CASE("dimension and depth") {
  CHECK(dim(catalog("graph")) == 1);
  CHECK(depth(catalog("graph")) == 0);
  CHECK(dim(catalog("graph2")) == 2);
  CHECK(depth(catalog("graph2")) == 0);
  const auto point = variety("pt", {}, {"1", "t"}, {"2", "3"});
  CHECK(dim(point) == 0);
  CHECK(depth(point) == -2);
  CHECK(dim(catalog("vmn")) == 2);
}

TEST_CASE("push") {
  const auto g = catalog("graph");
  CHECK(push(IntMat::identity(1), g).generic_point() == g.generic_point());
  const auto s = push(IntMat{{1, 1}}, catalog("graph2"));
  CHECK(s.additive[0] == parse("u1 + u2"));
  CHECK(s.multiplicative[0] == parse("u1*u2"));
  CHECK(dim(s) == 2);
  const auto d = push(IntMat::scalar(1, 2), g);
  CHECK(d.additive[0] == parse("2*u"));
  CHECK(d.multiplicative[0] == parse("u^2"));
  CHECK(dim(d) == 1);
  CHECK_THROWS_AS(push(IntMat{{1, 1}}, g), pexp::DimensionError);
}

TEST_CASE("push dimension properties") {
  Gen g(31);
  for (const auto& name : catalog_names()) {
    const ParamVariety v = catalog(name);
    const std::size_t n = v.n();
    const PushDimension dims(v);
    for (unsigned q = 1; q <= 3; ++q) CHECK(dims(IntMat::scalar(n, q)) == dims.dim());
    for (int t = 0; t < 12; ++t) {
      const std::size_t k = g.integer(1, n);
      const IntMat M = g.matrix(k, n, 3);
      const std::size_t d = dims(M);
      CHECK(d == oracle_dim(M, v));
      CHECK(d <= dims.dim());
      // Span invariance: same rows up to a unimodular change.
      CHECK(dims(unimodular(g, k) * M) == d);
    }
  }
}

TEST_CASE("classification table") {
  for (const char* name : {"graph", "line"}) {
    const auto r = classify(catalog(name), 3);
    CHECK(r.rotund.holds());
    CHECK(r.abs_free.status == Status::Exact);
    CHECK(r.simple.holds());
    CHECK(r.perfectly_rotund.holds());
    CHECK(r.dim == 1);
  }
  const auto sq = classify(catalog("square"), 3);
  CHECK(sq.abs_free.holds());
  CHECK(sq.rotund.holds());

  const auto gg = classify(catalog("graph2"), 3);
  CHECK(gg.rotund.holds());
  CHECK(gg.abs_free.holds());
  CHECK_FALSE(gg.simple.holds());
  REQUIRE(gg.simple.witness);
  CHECK(*gg.simple.witness == IntMat({{1, 0}, {0, 0}}));
  CHECK(*gg.simple.witness_dim == 1);
  CHECK(dim(push(*gg.simple.witness, catalog("graph2"))) == *gg.simple.witness_dim);
  CHECK_FALSE(gg.perfectly_rotund.holds());

  const auto vmn = classify(catalog("vmn"), 2);
  CHECK_FALSE(vmn.abs_free.holds());
  // z1 + t z2 = 0 has a non-integer coefficient: additively free.
  CHECK(vmn.additive_relations.empty());
  CHECK(*vmn.abs_free.witness == IntMat({{1, 1}}));
  CHECK(vmn.multiplicative_relations.generators == IntMat({{1, 1}}));
  CHECK_FALSE(vmn.simple.holds());

  // Not rotund: dim 0 point.
  const auto pt = classify(variety("pt", {}, {"1"}, {"2"}), 2);
  CHECK_FALSE(pt.rotund.holds());
  CHECK(*pt.rotund.witness_dim == 0);
}

TEST_CASE("divide examples") {
  const auto g = catalog("graph");
  const auto d1 = divide(g, 1);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].generic_point() == g.generic_point());

  const auto d2 = divide_with_receipts(g, 2);
  REQUIRE(d2.size() == 1);
  CHECK(same_variety(catalog("parabola-half"), d2[0].W));
  CHECK(verify_division(g, d2[0]));
  CHECK(equations_hold(d2[0].W));

  const auto sq = divide_with_receipts(catalog("square"), 2);
  REQUIRE(sq.size() == 2);
  // Components w' = 2z' and w' = -2z'.
  const auto plus = variety("p", {"u"}, {"u/2"}, {"u"});
  const auto minus = variety("m", {"u"}, {"u/2"}, {"-u"});
  CHECK(((same_variety(plus, sq[0].W) && same_variety(minus, sq[1].W)) ||
         (same_variety(plus, sq[1].W) && same_variety(minus, sq[0].W))));
  CHECK_FALSE(same_variety(sq[0].W, sq[1].W));

  CHECK_THROWS_AS(divide(g, 0), pexp::MathError);
  CHECK_THROWS_AS(divide(variety("bad", {"u"}, {"u"}, {"u^2 + u + 1"}), 2), pexp::UnsupportedError);
  CHECK_THROWS_AS(divide(variety("bad", {"u"}, {"u"}, {"2*u^2"}), 2), pexp::UnsupportedError);
}

TEST_CASE("kummer genericity") {
  CHECK(is_kummer_generic(catalog("graph"), 2));
  CHECK(is_kummer_generic(catalog("graph"), 3));
  CHECK(is_kummer_generic(catalog("line"), 2));
  CHECK_FALSE(is_kummer_generic(catalog("square"), 2));
  CHECK(is_kummer_generic(catalog("square"), 3));
  for (const auto& name : catalog_names()) CHECK(is_kummer_generic(catalog(name), 1));
  // A non-injective parametrization: u -> -u is a symmetry, one component.
  CHECK(is_kummer_generic(variety("even", {"u"}, {"u^2"}, {"u^2"}), 2));
  CHECK(divide(variety("neg", {"u"}, {"u"}, {"-u^2"}), 2).size() == 2);

  // Every division of every catalog entry maps back onto it.
  for (const auto& name : catalog_names())
    for (unsigned q = 1; q <= 3; ++q) {
      const auto v = catalog(name);
      for (const auto& d : divide_with_receipts(v, q)) CHECK(verify_division(v, d));
    }

  // Transfer: Kummer genericity of M.V implies that of V for square full-rank M.
  Gen g(33);
  for (const char* name : {"graph", "square", "graph2", "line"}) {
    const auto v = catalog(name);
    for (int t = 0; t < 4; ++t) {
      IntMat M = g.matrix(v.n(), v.n(), 2);
      if (pexp::intmat::rank(M) < v.n()) continue;
      const ParamVariety mv = push(M, v);
      bool generic = false;
      try {
        generic = is_kummer_generic(mv, 2);
      } catch (const pexp::UnsupportedError&) {
        continue;
      }
      if (generic) CHECK(is_kummer_generic(v, 2));
    }
  }
}

TEST_CASE("roots system and transfer") {
  const auto g = catalog("graph");
  const auto r1 = roots_system(g, 1);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].q == 1);
  const auto r2 = roots_system(g, 2);
  REQUIRE(r2.size() == 2);
  CHECK(r2[1].q == 2);
  CHECK(same_variety(catalog("parabola-half"), r2[1].W));

  for (const auto& d : roots_system(g, 3)) {
    const auto c = roots_transfer(g, d, IntMat::scalar(1, 2));
    CHECK(c.holds);
    CHECK(c.q == d.q);
  }
  const auto gg = catalog("graph2");
  for (const auto& d : roots_system(gg, 2)) CHECK(roots_transfer(gg, d, IntMat{{1, 2}, {0, 1}}).holds);
}

TEST_CASE("translate") {
  const auto g = catalog("graph");
  CHECK(translate(g, GPoint::identity(1)).generic_point() == g.generic_point());
  const GPoint p({parse("t")}, {parse("2*s")});
  const auto moved = translate(g, p);
  CHECK(dim(moved) == dim(g));
  CHECK(equations_hold(moved));
  CHECK(translate(moved, p.inverse()).generic_point() == g.generic_point());
  CHECK_THROWS_AS(translate(g, GPoint::identity(2)), pexp::DimensionError);
}

TEST_CASE("same_variety") {
  const auto v = catalog("vmn");
  CHECK(same_variety(v, push(IntMat::scalar(2, 2), v)));
  CHECK_FALSE(same_variety(catalog("graph"), catalog("square")));
  CHECK_FALSE(same_variety(catalog("graph"), push(IntMat::scalar(1, 2), catalog("graph"))));
}

TEST_CASE("realize graph") {
  Involution inv;
  NameSupply names;
  const auto g = catalog("graph");
  const auto r = realize(g, inv, names);
  REQUIRE(r.pairs.size() == 1);
  const auto [u, v] = r.pairs[0];
  CHECK(inv.image(u) == v);
  const RatExpr U = RatExpr::variable(u), V = RatExpr::variable(v);
  const auto& ch = r.check;
  REQUIRE(ch.n() == 2);
  CHECK(ch.additive[0] == (U * U + V * V) / RatExpr(2));
  CHECK(ch.multiplicative[0] == U * V);
  CHECK(ch.additive[1] == (U * U - V * V) / RatExpr(2));
  CHECK(ch.multiplicative[1] == U / V);
  CHECK(dim(ch) == 2);
  const auto vr = verify_realization(g, r, inv);
  CHECK(vr.witness);
  CHECK(vr.sigma);
  CHECK(dim(push(IntMat{{1, 1}}, ch)) == 1);

  // Constants must be registered with the involution.
  Involution empty;
  CHECK_THROWS_AS(realize(catalog("vmn"), empty, names), pexp::ConfigError);
}

TEST_CASE("restriction theorem on the catalog") {
  NameSupply names;
  for (const char* name : {"graph", "line"}) {
    const auto rep = restriction_theorem_check(catalog(name), 3, Involution{}, names);
    CHECK(rep.holds());
    CHECK(rep.check_abs_free.status == Status::Exact);
    CHECK(rep.check_dim == 2);
    CHECK(rep.counterexamples.empty());
    bool saw_plus = false, saw_minus = false;
    for (const auto& c : rep.equality_cases) {
      CHECK((c.shape == "full" || c.shape == "k|k" || c.shape == "k|-k"));
      saw_plus = saw_plus || c.shape == "k|k";
      saw_minus = saw_minus || c.shape == "k|-k";
    }
    CHECK(saw_plus);
    CHECK(saw_minus);
  }
  CHECK_THROWS_AS(restriction_theorem_check(catalog("vmn"), 2, with_reals({"t"}), names), pexp::MathError);
  CHECK_THROWS_AS(restriction_theorem_check(catalog("graph2"), 2, Involution{}, names), pexp::MathError);
}

TEST_CASE("realization of the kernel-line variety") {
  Involution inv = with_reals({"t"});
  NameSupply names(7);
  const auto v = catalog("vmn");
  CHECK(same_variety(v, push(IntMat::scalar(2, 2), v)));
  const auto cls = classify(v, 2);
  CHECK(cls.multiplicative_relations.generators == IntMat({{1, 1}}));
  const auto r = realize(v, inv, names);
  const auto vr = verify_realization(v, r, inv);
  CHECK(vr.witness);
  CHECK(vr.sigma);
  const IntMat id0 = IntMat::hcat(IntMat::identity(2), IntMat(2, 2));
  CHECK(PushDimension(r.check)(id0) == 2);
}
