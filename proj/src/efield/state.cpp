#include "pseudoexp/efield/state.hpp"

#include <algorithm>
#include <numeric>

#include "pseudoexp/errors.hpp"
#include "pseudoexp/field/transcendence.hpp"

namespace pexp::efield {

using field::Polynomial;
using field::Scalar;
using intmat::Integer;

const char* to_string(SigmaType t) {
  switch (t) {
    case SigmaType::Real: return "real";
    case SigmaType::Imaginary: return "imaginary";
    case SigmaType::Untracked: return "untracked";
  }
  return "?";
}

const char* to_string(ValueKind k) {
  switch (k) {
    case ValueKind::Torsion: return "torsion";
    case ValueKind::Monomial: return "monomial";
    case ValueKind::Circle: return "circle";
    case ValueKind::Solution: return "solution";
    case ValueKind::Opaque: return "opaque";
  }
  return "?";
}

SigmaType sigma_type_from(const std::string& s) {
  if (s == "real") return SigmaType::Real;
  if (s == "imaginary") return SigmaType::Imaginary;
  if (s == "untracked") return SigmaType::Untracked;
  throw ParseError("unknown sigma type '" + s + "'");
}

ValueKind value_kind_from(const std::string& s) {
  for (ValueKind k : {ValueKind::Torsion, ValueKind::Monomial, ValueKind::Circle, ValueKind::Solution,
                      ValueKind::Opaque})
    if (s == to_string(k)) return k;
  throw ParseError("unknown value kind '" + s + "'");
}

std::vector<RatExpr> EFieldState::elements() const {
  std::vector<RatExpr> out;
  for (const auto& b : basis) out.push_back(b.element);
  return out;
}

std::vector<RatExpr> EFieldState::values() const {
  std::vector<RatExpr> out;
  for (const auto& b : basis) out.push_back(b.value);
  return out;
}

std::vector<Symbol> EFieldState::indeterminates() const {
  std::vector<Symbol> out;
  for (const auto& [s, t] : inv.mapping()) out.push_back(s);
  return out;
}

EFieldState new_base(field::Involution inv, Symbol omega, std::uint64_t seed) {
  if (!inv.registered(omega)) throw ConfigError("omega '" + omega.name() + "' is not registered");
  if (!inv.is_real(omega)) throw MathError("omega '" + omega.name() + "' is not sigma-fixed");
  EFieldState s{std::move(inv), omega, 1, {}, {}, {}, {}, field::NameSupply(seed)};
  BasisEntry b;
  b.element = RatExpr(Scalar::imaginary_unit()) * RatExpr::variable(omega);
  b.value = RatExpr(1);
  b.sigma = SigmaType::Imaginary;
  b.kind = ValueKind::Torsion;
  b.origin = "base";
  s.basis.push_back(std::move(b));
  return s;
}

std::optional<std::vector<Rational>> coordinates(const EFieldState& s, const RatExpr& x) {
  return field::linear_coordinates(s.elements(), x);
}

RatExpr E_of(const EFieldState& s, const std::vector<long>& coeffs) {
  if (coeffs.size() != s.basis.size()) throw DimensionError("coefficient vector has the wrong length");
  RatExpr out(1);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0) out *= s.basis[j].value.pow(coeffs[j]);
  return out;
}

RatExpr E_of(const EFieldState& s, const RatExpr& x) {
  const auto c = coordinates(s, x);
  if (!c) throw NotInDomainError("'" + x.to_string() + "' is not in the Q-span of the domain");
  std::vector<long> k(c->size());
  for (std::size_t j = 0; j < c->size(); ++j) {
    const Rational& r = (*c)[j];
    if (r.get_den() != 1) throw NeedsRefinementError(j, r.get_den().get_ui());
    if (!r.get_num().fits_slong_p()) throw UnsupportedError("coordinate too large");
    k[j] = r.get_num().get_si();
  }
  return E_of(s, k);
}

void apply_receipt(EFieldState& s, const field::ReembedReceipt& r) {
  for (auto& b : s.basis) {
    b.element = r.apply(b.element);
    b.value = r.apply(b.value);
  }
  for (auto& sol : s.solutions) {
    for (auto& e : sol.point) e = r.apply(e);
    for (auto& e : sol.values) e = r.apply(e);
    for (auto& [p, e] : sol.witness) e = r.apply(e);
  }
  s.receipts.push_back(r);
}

EFieldState refine(const EFieldState& s, std::size_t index, unsigned long q) {
  if (index >= s.basis.size()) throw DimensionError("no basis element " + std::to_string(index));
  if (q == 0) throw MathError("refinement needs q >= 1");
  EFieldState out = s;
  if (q == 1) return out;
  BasisEntry& b = out.basis[index];
  const RatExpr qq(static_cast<long>(q));
  switch (b.kind) {
    case ValueKind::Torsion: {
      out.torsion *= q;
      b.element = b.element / qq;
      b.value = RatExpr(Scalar::zeta(static_cast<unsigned>(out.torsion), 1));
      return out;
    }
    case ValueKind::Monomial:
    case ValueKind::Circle: {
      const auto vars = b.value.variables();
      if (vars.size() != 1) throw UnsupportedError("value '" + b.value.to_string() + "' is not of its recorded shape");
      const Symbol u = vars.front();
      const auto kind = b.kind == ValueKind::Monomial ? field::ReembedKind::Monomial : field::ReembedKind::Circle;
      const field::ReembedReceipt r = field::reembed(out.inv, out.names, u, static_cast<unsigned>(q), kind);
      apply_receipt(out, r);
      BasisEntry& e = out.basis[index];
      const RatExpr v = RatExpr::variable(r.new_name);
      const RatExpr root = kind == field::ReembedKind::Monomial
                               ? v
                               : (RatExpr(1) + RatExpr(Scalar::imaginary_unit()) * v) /
                                     (RatExpr(1) - RatExpr(Scalar::imaginary_unit()) * v);
      if (root.pow(static_cast<long>(q)) != e.value)
        throw UnsupportedError("value '" + s.basis[index].value.to_string() + "' is not of its recorded shape");
      e.element = e.element / qq;
      e.value = root;
      return out;
    }
    case ValueKind::Solution:
    case ValueKind::Opaque:
      break;
  }
  throw UnsupportedError(std::string("cannot take roots of a ") + to_string(b.kind) + " value");
}

RatExpr E_of_refining(EFieldState& s, const RatExpr& x) {
  while (true) {
    try {
      return E_of(s, x);
    } catch (const NeedsRefinementError& e) {
      s = refine(s, e.index(), e.q());
    }
  }
}

namespace {

// Pairwise coprime integers > 1 generating every input multiplicatively.
std::vector<Integer> integer_coprime_base(std::vector<Integer> xs) {
  std::vector<Integer> base;
  for (auto& x : xs)
    if (x > 1) base.push_back(x);
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    for (std::size_t i = 0; i < base.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), base[i].get_mpz_t(), base[j].get_mpz_t());
        if (g == 1) continue;
        const Integer a = base[i] / g, b = base[j] / g;
        base.erase(base.begin() + static_cast<long>(j));
        base.erase(base.begin() + static_cast<long>(i));
        for (const Integer& y : {a, b, g})
          if (y > 1) base.push_back(y);
        changed = true;
      }
  }
  return base;
}

// Exponent of p in x (x a product of base elements).
long valuation(Integer x, const Integer& p) {
  long e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

}  // namespace

std::optional<IntMat> unit_kernel(const field::RelationLattice& l) {
  const std::size_t r = l.rank();
  const std::size_t m = l.generators.cols();
  if (r == 0) return IntMat(0, m);

  // Each constant is zeta_N^a * sign * prod p^e.
  unsigned long N = 1;
  std::vector<Integer> parts;
  for (const auto& note : l.notes) {
    if (!note.constant.is_constant()) return std::nullopt;
    const Scalar c = note.constant.constant_value();
    if (c.root_of_unity_order()) {
      N = std::lcm(N, *c.root_of_unity_order());
    } else if (c.is_rational()) {
      if (c.rational() < 0) N = std::lcm(N, 2ul);
      parts.push_back(abs(c.rational().get_num()));
      parts.push_back(c.rational().get_den());
    } else {
      return std::nullopt;
    }
  }
  const std::vector<Integer> base = integer_coprime_base(parts);
  const std::size_t b = base.size();
  IntMat A(r + 1, b + 1);
  for (std::size_t i = 0; i < r; ++i) {
    const Scalar c = l.notes[i].constant.constant_value();
    if (c.is_rational()) {
      for (std::size_t k = 0; k < b; ++k)
        A(i, k) = valuation(abs(c.rational().get_num()), base[k]) - valuation(c.rational().get_den(), base[k]);
      A(i, b) = c.rational() < 0 ? static_cast<long>(N / 2) : 0;
    } else {
      const auto a = c.discrete_log(static_cast<unsigned>(N));
      if (!a) return std::nullopt;
      A(i, b) = static_cast<long>(*a);
    }
  }
  A(r, b) = static_cast<long>(N);
  const IntMat K = intmat::left_kernel(A);
  if (K.rows() == 0) return IntMat(0, m);
  return intmat::row_basis(K.col_block(0, r) * l.generators);
}

std::optional<std::vector<long>> preimage(const EFieldState& s, const RatExpr& beta) {
  const std::size_t m = s.basis.size();
  if (beta == RatExpr(1)) return std::vector<long>(m, 0);
  if (beta.is_zero()) return std::nullopt;
  std::vector<RatExpr> vals = s.values();
  vals.push_back(beta);
  const auto K = unit_kernel(field::mult_relations(vals, s.indeterminates()));
  if (!K || K->rows() == 0) return std::nullopt;
  // Bring the beta coordinate to the front; the Hermite pivot there is the gcd.
  IntMat P(K->rows(), m + 1);
  for (std::size_t i = 0; i < K->rows(); ++i) {
    P(i, 0) = (*K)(i, m);
    for (std::size_t j = 0; j < m; ++j) P(i, j + 1) = (*K)(i, j);
  }
  const IntMat H = intmat::hnf(P).H;
  if (H(0, 0) != 1) return std::nullopt;
  std::vector<long> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Integer c = -H(0, j + 1);
    if (!c.fits_slong_p()) throw UnsupportedError("preimage coordinate too large");
    out[j] = c.get_si();
  }
  return out;
}

long predim(const EFieldState& s, const std::vector<RatExpr>& X, const std::vector<RatExpr>& Y) {
  std::vector<RatExpr> top, over;
  for (const auto& x : X) {
    top.push_back(x);
    top.push_back(E_of(s, x));
  }
  for (const auto& y : Y) {
    over.push_back(y);
    over.push_back(E_of(s, y));
  }
  const auto wrt = s.indeterminates();
  const long td = static_cast<long>(field::tr_deg(top, over, wrt));
  std::vector<RatExpr> xy = Y;
  xy.insert(xy.end(), X.begin(), X.end());
  const long lin = static_cast<long>(field::linear_dimension(xy)) - static_cast<long>(field::linear_dimension(Y));
  return td - lin;
}

namespace {

using nlohmann::json;

json expr_map(const std::map<Symbol, RatExpr>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k.name()] = v.to_string();
  return j;
}

std::map<Symbol, RatExpr> expr_map_from(const json& j) {
  std::map<Symbol, RatExpr> m;
  for (const auto& [k, v] : j.items()) m[Symbol::intern(k)] = RatExpr::parse(v.get<std::string>());
  return m;
}

json exprs(const std::vector<RatExpr>& v) {
  json j = json::array();
  for (const auto& e : v) j.push_back(e.to_string());
  return j;
}

std::vector<RatExpr> exprs_from(const json& j) {
  std::vector<RatExpr> v;
  for (const auto& e : j) v.push_back(RatExpr::parse(e.get<std::string>()));
  return v;
}

}  // namespace

nlohmann::json to_json(const EFieldState& s) {
  json j;
  json reals = json::array(), pairs = json::array();
  for (Symbol r : s.inv.reals()) reals.push_back(r.name());
  for (const auto& [a, b] : s.inv.pairs()) pairs.push_back({a.name(), b.name()});
  j["involution"] = {{"real", reals}, {"pairs", pairs}};
  j["omega"] = s.omega.name();
  j["torsion"] = s.torsion;
  json basis = json::array();
  for (const auto& b : s.basis)
    basis.push_back({{"element", b.element.to_string()},
                     {"value", b.value.to_string()},
                     {"sigma", to_string(b.sigma)},
                     {"kind", to_string(b.kind)},
                     {"origin", b.origin},
                     {"positivity", b.positivity}});
  j["basis"] = basis;
  json receipts = json::array();
  for (const auto& r : s.receipts) {
    json x = {{"kind", field::to_string(r.kind)},
              {"old", r.old_name.name()},
              {"new", r.new_name.name()},
              {"q", r.q},
              {"substitution", expr_map(r.substitution)}};
    if (r.old_partner) x["old_partner"] = r.old_partner->name();
    if (r.new_partner) x["new_partner"] = r.new_partner->name();
    receipts.push_back(std::move(x));
  }
  j["receipts"] = receipts;
  json sols = json::array();
  for (const auto& sol : s.solutions)
    sols.push_back({{"variety", sol.variety},
                    {"key", sol.key},
                    {"block", sol.block},
                    {"point", exprs(sol.point)},
                    {"values", exprs(sol.values)},
                    {"witness", expr_map(sol.witness)},
                    {"sigma_mode", sol.sigma_mode}});
  j["solutions"] = sols;
  j["history"] = s.history;
  j["names"] = {{"seed", s.names.seed()}, {"counter", s.names.counter()}};
  return j;
}

EFieldState state_from_json(const nlohmann::json& j) {
  try {
    field::Involution inv;
    for (const auto& r : j.at("involution").at("real")) inv.add_real(Symbol::intern(r.get<std::string>()));
    for (const auto& p : j.at("involution").at("pairs"))
      inv.add_pair(Symbol::intern(p.at(0).get<std::string>()), Symbol::intern(p.at(1).get<std::string>()));
    EFieldState s{std::move(inv),
                  Symbol::intern(j.at("omega").get<std::string>()),
                  j.at("torsion").get<unsigned long>(),
                  {},
                  {},
                  {},
                  {},
                  field::NameSupply(j.at("names").at("seed").get<std::uint64_t>())};
    s.names.set_counter(j.at("names").at("counter").get<std::uint64_t>());
    for (const auto& b : j.at("basis"))
      s.basis.push_back({RatExpr::parse(b.at("element").get<std::string>()),
                         RatExpr::parse(b.at("value").get<std::string>()),
                         sigma_type_from(b.at("sigma").get<std::string>()),
                         value_kind_from(b.at("kind").get<std::string>()), b.value("origin", ""),
                         b.value("positivity", "")});
    for (const auto& x : j.at("receipts")) {
      field::ReembedReceipt r;
      const std::string kind = x.at("kind").get<std::string>();
      if (kind == "monomial") r.kind = field::ReembedKind::Monomial;
      else if (kind == "circle") r.kind = field::ReembedKind::Circle;
      else throw ParseError("unknown re-embedding kind '" + kind + "'");
      r.old_name = Symbol::intern(x.at("old").get<std::string>());
      r.new_name = Symbol::intern(x.at("new").get<std::string>());
      if (x.contains("old_partner")) r.old_partner = Symbol::intern(x.at("old_partner").get<std::string>());
      if (x.contains("new_partner")) r.new_partner = Symbol::intern(x.at("new_partner").get<std::string>());
      r.q = x.at("q").get<unsigned>();
      r.substitution = expr_map_from(x.at("substitution"));
      s.receipts.push_back(std::move(r));
    }
    for (const auto& x : j.at("solutions")) {
      SolutionRecord sol;
      sol.variety = x.at("variety").get<std::string>();
      sol.key = x.at("key").get<std::string>();
      sol.block = x.at("block").get<std::vector<std::size_t>>();
      sol.point = exprs_from(x.at("point"));
      sol.values = exprs_from(x.at("values"));
      sol.witness = expr_map_from(x.at("witness"));
      sol.sigma_mode = x.at("sigma_mode").get<bool>();
      s.solutions.push_back(std::move(sol));
    }
    for (const auto& h : j.at("history")) s.history.push_back(h);
    if (s.basis.empty()) throw ConfigError("state has an empty basis");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed state: ") + e.what());
  }
}

}  // namespace pexp::efield
