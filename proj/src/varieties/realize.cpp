#include <set>

#include "pseudoexp/errors.hpp"
#include "pseudoexp/intmat/lemmas.hpp"
#include "pseudoexp/varieties/variety.hpp"

namespace pexp::varieties {

Realization realize(const ParamVariety& v, field::Involution& inv, field::NameSupply& names) {
  const std::set<Symbol> params(v.params.begin(), v.params.end());
  std::vector<RatExpr> all = v.additive;
  all.insert(all.end(), v.multiplicative.begin(), v.multiplicative.end());
  for (Symbol s : field::variables_of(all))
    if (!params.count(s) && !inv.registered(s))
      throw ConfigError("realize: constant '" + s.name() + "' is not registered with the involution");

  Realization r;
  r.half = divide_with_receipts(v, 2).front();
  std::map<Symbol, Symbol> to_pair;
  for (Symbol p : r.half.W.params) {
    const Symbol x = names.fresh("u", inv);
    const Symbol y = names.fresh("v", inv);
    inv.add_pair(x, y);
    r.pairs.emplace_back(x, y);
    to_pair[p] = x;
  }
  ParamVariety& half = r.half.W;
  for (auto& f : half.additive) f = f.rename(to_pair);
  for (auto& f : half.multiplicative) f = f.rename(to_pair);
  for (auto& [p, e] : r.half.substitution) e = e.rename(to_pair);
  half.params.clear();
  for (const auto& [x, y] : r.pairs) half.params.push_back(x);
  r.witness = r.half.substitution;

  const std::size_t n = v.n();
  ParamVariety& check = r.check;
  check.name = "check(" + v.name + ")";
  for (const auto& [x, y] : r.pairs) {
    check.params.push_back(x);
    check.params.push_back(y);
  }
  std::vector<RatExpr> a, b, c, d;
  for (std::size_t j = 0; j < n; ++j) {
    const RatExpr& z = half.additive[j];
    const RatExpr& w = half.multiplicative[j];
    const RatExpr zs = inv.apply(z);
    const RatExpr ws = inv.apply(w);
    a.push_back(z + zs);
    c.push_back(z - zs);
    b.push_back(w * ws);
    d.push_back(w / ws);
  }
  check.additive = a;
  check.additive.insert(check.additive.end(), c.begin(), c.end());
  check.multiplicative = b;
  check.multiplicative.insert(check.multiplicative.end(), d.begin(), d.end());
  check.provenance = v.provenance;
  check.provenance.push_back("realize");
  return r;
}

RealizationCheck verify_realization(const ParamVariety& v, const Realization& r, const field::Involution& inv) {
  RealizationCheck out;
  const std::size_t n = v.n();
  const ParamVariety& ch = r.check;
  if (ch.n() != 2 * n) return out;
  const GPoint target = v.point_at(r.witness);
  out.witness = true;
  for (std::size_t j = 0; j < n; ++j) {
    out.witness = out.witness && ch.additive[j] + ch.additive[n + j] == target.additive[j];
    out.witness = out.witness && ch.multiplicative[j] * ch.multiplicative[n + j] == target.multiplicative[j];
  }
  out.sigma = true;
  for (std::size_t j = 0; j < n; ++j) {
    out.sigma = out.sigma && inv.apply(ch.additive[j]) == ch.additive[j];
    out.sigma = out.sigma && inv.apply(ch.multiplicative[j]) == ch.multiplicative[j];
    out.sigma = out.sigma && inv.apply(ch.additive[n + j]) == -ch.additive[n + j];
    out.sigma = out.sigma && inv.apply(ch.multiplicative[n + j]) * ch.multiplicative[n + j] == RatExpr(1);
  }
  return out;
}

namespace {

std::string restriction_shape(const IntMat& M, std::size_t n) {
  const std::size_t p = M.rows();
  if (p == 2 * n) return "full";
  if (p != n) return "violation";
  const IntMat N = M.col_block(0, n);
  const IntMat P = M.col_block(n, n);
  if (intmat::rank(N) != n || intmat::rank(P) != n) return "violation";
  if (n > 1) return "N|P";
  if (N(0, 0) == P(0, 0)) return "k|k";
  if (N(0, 0) == -P(0, 0)) return "k|-k";
  return "violation";
}

}  // namespace

RestrictionReport restriction_theorem_check(const ParamVariety& v, unsigned bound, field::Involution inv,
                                            field::NameSupply& names) {
  RestrictionReport rep;
  rep.bound = bound;
  rep.input = classify(v, bound);
  if (!rep.input.simple.holds())
    throw MathError("restriction check needs a simple variety; '" + v.name + "' fails: " + rep.input.simple.detail);
  rep.realization = realize(v, inv, names);
  const ParamVariety& ch = rep.realization.check;
  const std::size_t n = v.n();
  const PushDimension dims(ch);
  rep.check_dim = dims.dim();

  const auto add = field::q_linear_relations(ch.additive, ch.params);
  const auto mul = field::mult_relations(ch.multiplicative, ch.params);
  if (!add.empty()) {
    rep.check_abs_free = {Status::Fails, add.generators.row_block(0, 1), std::nullopt, "additive relation"};
  } else if (!mul.empty()) {
    rep.check_abs_free = {Status::Fails, mul.generators.row_block(0, 1), std::nullopt, "multiplicative relation"};
  }

  rep.check_rotund.status = Status::HoldsUpToBound;
  for (std::size_t p = 1; p <= 2 * n; ++p) {
    for (const IntMat& M : intmat::enumerate_row_spans(p, 2 * n, bound)) {
      const std::size_t d = dims(M);
      ++rep.matrices_checked;
      if (d < p && rep.check_rotund.holds()) rep.check_rotund = {Status::Fails, M, d, "dim M.V < rank M"};
      if (d != p) continue;
      RestrictionCase c{M, p, d, restriction_shape(M, n)};
      if (c.shape == "violation" || !rep.input.perfectly_rotund.holds()) rep.counterexamples.push_back(c);
      rep.equality_cases.push_back(std::move(c));
    }
  }
  return rep;
}

}  // namespace pexp::varieties
