#include "pseudoexp/varieties/variety.hpp"

#include <set>

#include "pseudoexp/errors.hpp"

namespace pexp::varieties {

using field::Scalar;

namespace {

std::map<Symbol, RatExpr> coordinate_values(const GPoint& p) {
  std::map<Symbol, RatExpr> values;
  for (std::size_t j = 0; j < p.n(); ++j) {
    values[coordinate(true, j + 1)] = p.additive[j];
    values[coordinate(false, j + 1)] = p.multiplicative[j];
  }
  return values;
}

}  // namespace

Symbol coordinate(bool additive, std::size_t j) {
  return Symbol::intern((additive ? "z" : "w") + std::to_string(j));
}

GPoint ParamVariety::point_at(const std::map<Symbol, RatExpr>& values) const {
  std::vector<RatExpr> z, w;
  for (const auto& f : additive) z.push_back(f.substitute(values));
  for (const auto& f : multiplicative) w.push_back(f.substitute(values));
  return GPoint(std::move(z), std::move(w));
}

ParamVariety make_variety(std::string name, std::vector<Symbol> params, std::vector<RatExpr> additive,
                          std::vector<RatExpr> multiplicative, std::vector<Polynomial> equations) {
  if (additive.size() != multiplicative.size())
    throw DimensionError("variety '" + name + "': additive and multiplicative maps differ in length");
  if (additive.empty()) throw DimensionError("variety '" + name + "' has arity 0");
  std::set<Symbol> seen;
  for (Symbol p : params) {
    if (!field::is_valid_name(p.name())) throw ParseError("invalid parameter name '" + p.name() + "'");
    if (!seen.insert(p).second) throw ParseError("parameter '" + p.name() + "' listed twice");
  }
  for (std::size_t j = 0; j < multiplicative.size(); ++j)
    if (multiplicative[j].is_zero())
      throw MathError("variety '" + name + "': multiplicative coordinate " + std::to_string(j + 1) + " is zero");
  ParamVariety v;
  v.name = std::move(name);
  v.params = std::move(params);
  v.additive = std::move(additive);
  v.multiplicative = std::move(multiplicative);
  v.equations = std::move(equations);
  v.provenance.push_back("user");
  if (!equations_hold(v)) throw MathError("variety '" + v.name + "': an equation does not vanish on the parametrization");
  return v;
}

ParamVariety make_variety(const VarietySpec& spec) {
  if (spec.additive.size() != spec.n || spec.multiplicative.size() != spec.n)
    throw DimensionError("variety '" + spec.name + "': expected " + std::to_string(spec.n) + " coordinates per map");
  std::vector<Symbol> params;
  for (const auto& p : spec.params) {
    if (!field::is_valid_name(p)) throw ParseError("invalid parameter name '" + p + "'");
    params.push_back(Symbol::intern(p));
  }
  std::vector<RatExpr> z, w;
  for (const auto& s : spec.additive) z.push_back(RatExpr::parse(s));
  for (const auto& s : spec.multiplicative) w.push_back(RatExpr::parse(s));
  std::vector<Polynomial> eqs;
  for (const auto& s : spec.equations) {
    RatExpr e = RatExpr::parse(s);
    if (!e.is_polynomial()) throw ParseError("equation '" + s + "' is not a polynomial");
    eqs.push_back(e.num() * e.den().constant_value().inverse());
  }
  return make_variety(spec.name, std::move(params), std::move(z), std::move(w), std::move(eqs));
}

bool equations_hold(const ParamVariety& v) {
  if (v.equations.empty()) return true;
  const auto values = coordinate_values(v.generic_point());
  for (const auto& e : v.equations)
    if (!field::evaluate(e, values).is_zero()) return false;
  return true;
}

std::size_t dim(const ParamVariety& v) { return PushDimension(v).dim(); }

long depth(const ParamVariety& v) { return static_cast<long>(dim(v)) - static_cast<long>(v.n()); }

ParamVariety push(const IntMat& M, const ParamVariety& v) {
  if (M.cols() != v.n()) throw DimensionError("matrix has " + std::to_string(M.cols()) + " columns, variety arity is " + std::to_string(v.n()));
  const GPoint p = intmat::act(M, v.generic_point());
  ParamVariety out;
  out.name = M.to_string() + "." + v.name;
  out.params = v.params;
  out.additive = p.additive;
  out.multiplicative = p.multiplicative;
  out.provenance = v.provenance;
  out.provenance.push_back("push " + M.to_string());
  return out;
}

ParamVariety translate(const ParamVariety& v, const GPoint& p) {
  if (p.n() != v.n()) throw DimensionError("translation point has arity " + std::to_string(p.n()));
  ParamVariety out = v;
  const GPoint moved = v.generic_point() + p;
  out.additive = moved.additive;
  out.multiplicative = moved.multiplicative;
  // x in V + p iff x - p in V.
  std::map<Symbol, RatExpr> back;
  for (std::size_t j = 0; j < v.n(); ++j) {
    back[coordinate(true, j + 1)] = RatExpr::variable(coordinate(true, j + 1)) - p.additive[j];
    back[coordinate(false, j + 1)] = RatExpr::variable(coordinate(false, j + 1)) / p.multiplicative[j];
  }
  out.equations.clear();
  for (const auto& e : v.equations) out.equations.push_back(field::evaluate(e, back).num());
  out.provenance.push_back("translate");
  return out;
}

PushDimension::PushDimension(const ParamVariety& v) : n_(v.n()) {
  field::PolyMatrix rows = field::additive_rows(v.additive, v.params);
  field::PolyMatrix logs = field::logarithmic_rows(v.multiplicative, v.params);
  rows.insert(rows.end(), logs.begin(), logs.end());
  frame_ = field::RowFrame(std::move(rows));
}

std::size_t PushDimension::operator()(const IntMat& M) const {
  if (M.cols() != n_) throw DimensionError("matrix has the wrong number of columns");
  return frame_.rank_of(IntMat::block_diag(M, M));
}

std::optional<std::map<Symbol, RatExpr>> reparametrization(const ParamVariety& v, const ParamVariety& w) {
  if (v.n() != w.n()) return std::nullopt;
  std::vector<std::pair<RatExpr, RatExpr>> eqs;
  for (std::size_t j = 0; j < v.n(); ++j) {
    eqs.emplace_back(v.additive[j], w.additive[j]);
    eqs.emplace_back(v.multiplicative[j], w.multiplicative[j]);
    eqs.emplace_back(v.multiplicative[j].inverse(), w.multiplicative[j].inverse());
  }
  std::map<Symbol, RatExpr> psi;
  bool progress = true;
  while (progress && psi.size() < v.params.size()) {
    progress = false;
    for (const auto& [f, g] : eqs) {
      std::vector<Symbol> open;
      for (Symbol p : v.params)
        if (f.contains(p) && !psi.count(p)) open.push_back(p);
      if (open.size() != 1) continue;
      const Symbol u = open[0];
      if (f.num().degree_in(u) != 1 || f.den().contains(u)) continue;
      const auto cs = f.num().coefficients_in(u);
      const RatExpr alpha = field::evaluate(cs[1], psi);
      if (alpha.is_zero()) continue;
      const RatExpr beta = field::evaluate(cs[0], psi);
      const RatExpr d = field::evaluate(f.den(), psi);
      psi[u] = (g * d - beta) / alpha;
      progress = true;
    }
  }
  for (Symbol p : v.params)
    if (!psi.count(p)) {
      bool used = false;
      for (const auto& [f, g] : eqs) used = used || f.contains(p);
      if (used) return std::nullopt;
      psi[p] = RatExpr(0);
    }
  if (!(v.point_at(psi) == w.generic_point())) return std::nullopt;
  return psi;
}

bool same_variety(const ParamVariety& v, const ParamVariety& w) {
  if (v.n() != w.n() || dim(v) != dim(w)) return false;
  return reparametrization(v, w).has_value();
}

}  // namespace pexp::varieties
