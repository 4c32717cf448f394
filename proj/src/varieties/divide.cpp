#include <set>

#include "pseudoexp/errors.hpp"
#include "pseudoexp/varieties/variety.hpp"

namespace pexp::varieties {

using field::Rational;
using field::Scalar;

namespace {

// w = constant * prod p^exponents[p], the constant free of `params`.
struct MonomialForm {
  RatExpr constant;
  std::vector<long> exponents;
};

std::optional<MonomialForm> monomial_form(const RatExpr& w, const std::vector<Symbol>& params) {
  MonomialForm m;
  m.constant = w;
  for (Symbol p : params) {
    if (!w.contains(p)) {
      m.exponents.push_back(0);
      continue;
    }
    const RatExpr x = RatExpr::variable(p);
    const RatExpr r = x * w.derivative(p) / w;
    if (!r.is_constant()) return std::nullopt;
    const Scalar c = r.constant_value();
    if (!c.is_rational() || c.rational().get_den() != 1 || !c.rational().get_num().fits_slong_p()) return std::nullopt;
    const long e = c.rational().get_num().get_si();
    m.exponents.push_back(e);
    m.constant *= x.pow(-e);
  }
  for (Symbol p : params)
    if (m.constant.contains(p)) return std::nullopt;
  return m;
}

// A q-th root of a parameter-free expression: scalars through exact_root,
// otherwise monomials in the remaining symbols with exponents divisible by q.
std::optional<RatExpr> constant_root(const RatExpr& c, unsigned q) {
  if (c.is_constant()) {
    auto r = c.constant_value().exact_root(q);
    if (!r) return std::nullopt;
    return RatExpr(*r);
  }
  const auto vars = c.variables();
  auto m = monomial_form(c, vars);
  if (!m || !m->constant.is_constant()) return std::nullopt;
  auto r = m->constant.constant_value().exact_root(q);
  if (!r) return std::nullopt;
  RatExpr out(*r);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (m->exponents[k] % static_cast<long>(q) != 0) return std::nullopt;
    out *= RatExpr::variable(vars[k]).pow(m->exponents[k] / static_cast<long>(q));
  }
  return out;
}

struct Working {
  std::vector<RatExpr> z, w;
  std::map<Symbol, RatExpr> substitution;  // original params -> current

  void apply(const std::map<Symbol, RatExpr>& sub) {
    for (auto& f : z) f = f.substitute(sub);
    for (auto& f : w) f = f.substitute(sub);
    for (auto& [p, e] : substitution) e = e.substitute(sub);
  }
};

using Twist = std::vector<long>;

Twist add_mod(const Twist& a, const Twist& b, long q) {
  Twist c(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) c[j] = (a[j] + b[j]) % q;
  return c;
}

// Subgroup of (Z/q)^n generated by `gens`.
std::set<Twist> generated_subgroup(const std::vector<Twist>& gens, std::size_t n, long q) {
  std::set<Twist> group{Twist(n, 0)};
  std::vector<Twist> frontier{Twist(n, 0)};
  while (!frontier.empty()) {
    std::vector<Twist> next;
    for (const auto& t : frontier)
      for (const auto& g : gens) {
        Twist s = add_mod(t, g, q);
        if (group.insert(s).second) next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }
  return group;
}

// Calls f on every vector of (Z/q)^n in lexicographic order.
template <typename F>
void for_each_vector(std::size_t n, long q, F f) {
  Twist t(n, 0);
  while (true) {
    f(t);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++t[j] < q) break;
      t[j] = 0;
      if (j == 0) return;
    }
    if (n == 0) return;
  }
}

bool invariant_under(const Working& wk, const std::map<Symbol, RatExpr>& sub) {
  for (const auto& f : wk.z)
    if (!(f.substitute(sub) == f)) return false;
  for (const auto& f : wk.w)
    if (!(f.substitute(sub) == f)) return false;
  return true;
}

}  // namespace

std::vector<Division> divide_with_receipts(const ParamVariety& v, unsigned q) {
  if (q == 0) throw MathError("division by q = 0");
  const std::size_t n = v.n();
  std::map<Symbol, RatExpr> identity;
  for (Symbol p : v.params) identity[p] = RatExpr::variable(p);
  if (q == 1) return {Division{v, 1, identity, std::vector<long>(n, 0)}};

  Working wk{v.additive, v.multiplicative, identity};
  const RatExpr qq(static_cast<long>(q));

  // Coordinates that are not monomial in the parameters: make them q-th
  // powers by solving for a parameter they contain linearly.
  std::set<Symbol> spent;
  for (std::size_t j = 0; j < n; ++j) {
    if (monomial_form(wk.w[j], v.params)) continue;
    const RatExpr& f = wk.w[j];
    std::optional<Symbol> u;
    for (Symbol p : v.params)
      if (!spent.count(p) && f.num().degree_in(p) == 1 && !f.den().contains(p)) {
        u = p;
        break;
      }
    if (!u)
      throw UnsupportedError("divide: multiplicative coordinate " + std::to_string(j + 1) + " of '" + v.name +
                             "' has no exact " + std::to_string(q) + "-th root after reparametrization");
    spent.insert(*u);
    const auto cs = f.num().coefficients_in(*u);
    const RatExpr alpha(cs[1]), beta(cs[0]), den(f.den());
    // u -> (u^q den - beta) / alpha turns the coordinate into u^q.
    wk.apply({{*u, (RatExpr::variable(*u).pow(q) * den - beta) / alpha}});
  }

  std::vector<MonomialForm> forms;
  for (std::size_t j = 0; j < n; ++j) {
    auto m = monomial_form(wk.w[j], v.params);
    if (!m)
      throw UnsupportedError("divide: multiplicative coordinate " + std::to_string(j + 1) + " of '" + v.name +
                             "' is not a monomial after reparametrization");
    forms.push_back(std::move(*m));
  }
  // Parameters with an exponent not divisible by q are re-embedded p -> p^q.
  const long ql = static_cast<long>(q);
  std::map<Symbol, RatExpr> powers;
  for (std::size_t k = 0; k < v.params.size(); ++k) {
    bool divisible = true;
    for (const auto& m : forms) divisible = divisible && m.exponents[k] % ql == 0;
    if (divisible) continue;
    powers[v.params[k]] = RatExpr::variable(v.params[k]).pow(q);
    for (auto& m : forms) m.exponents[k] *= ql;
  }
  if (!powers.empty()) wk.apply(powers);

  std::vector<RatExpr> roots;
  std::vector<std::vector<long>> f(n);  // exponents of the roots
  for (std::size_t j = 0; j < n; ++j) {
    auto c = constant_root(forms[j].constant, q);
    if (!c)
      throw UnsupportedError("divide: the constant " + forms[j].constant.to_string() + " has no exact " +
                             std::to_string(q) + "-th root");
    RatExpr rho = *c;
    for (std::size_t k = 0; k < v.params.size(); ++k) {
      f[j].push_back(forms[j].exponents[k] / ql);
      rho *= RatExpr::variable(v.params[k]).pow(f[j].back());
    }
    roots.push_back(std::move(rho));
  }

  // Diagonal symmetries p -> zeta_q^k p of the current parametrization move
  // the roots by zeta_q^(f k); twists differing by such a shift give the
  // same component.
  std::vector<Twist> shifts;
  const std::size_t np = v.params.size();
  auto try_symmetry = [&](const std::vector<long>& k) {
    std::map<Symbol, RatExpr> sub;
    for (std::size_t i = 0; i < np; ++i)
      if (k[i]) sub[v.params[i]] = RatExpr(Scalar::zeta(q, k[i])) * RatExpr::variable(v.params[i]);
    if (sub.empty() || !invariant_under(wk, sub)) return;
    Twist s(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      long acc = 0;
      for (std::size_t i = 0; i < np; ++i) acc += k[i] * f[j][i];
      s[j] = ((acc % ql) + ql) % ql;
    }
    shifts.push_back(std::move(s));
  };
  double combos = 1;
  for (std::size_t i = 0; i < np; ++i) combos *= q;
  if (combos <= 4096) {
    for_each_vector(np, ql, try_symmetry);
  } else {
    for (std::size_t i = 0; i < np; ++i) {
      std::vector<long> k(np, 0);
      k[i] = 1;
      try_symmetry(k);
    }
  }
  const std::set<Twist> orbit = generated_subgroup(shifts, n, ql);

  std::vector<Twist> reps;
  std::set<Twist> covered;
  for_each_vector(n, ql, [&](const Twist& t) {
    if (covered.count(t)) return;
    reps.push_back(t);
    for (const auto& h : orbit) covered.insert(add_mod(t, h, ql));
  });

  std::map<Symbol, RatExpr> scale_back;
  for (std::size_t j = 0; j < n; ++j) {
    scale_back[coordinate(true, j + 1)] = qq * RatExpr::variable(coordinate(true, j + 1));
    scale_back[coordinate(false, j + 1)] = RatExpr::variable(coordinate(false, j + 1)).pow(q);
  }
  std::vector<Division> out;
  for (std::size_t c = 0; c < reps.size(); ++c) {
    Division d;
    d.q = q;
    d.twist = reps[c];
    d.substitution = wk.substitution;
    ParamVariety& W = d.W;
    W.name = v.name + "/" + std::to_string(q) + (reps.size() > 1 ? "#" + std::to_string(c) : "");
    W.params = v.params;
    for (std::size_t j = 0; j < n; ++j) {
      W.additive.push_back(wk.z[j] / qq);
      W.multiplicative.push_back(RatExpr(Scalar::zeta(q, reps[c][j])) * roots[j]);
    }
    for (const auto& e : v.equations) W.equations.push_back(field::evaluate(e, scale_back).num());
    W.provenance = v.provenance;
    std::string tw;
    for (long t : reps[c]) tw += (tw.empty() ? "" : ",") + std::to_string(t);
    W.provenance.push_back("divide q=" + std::to_string(q) + " twist=(" + tw + ")");
    if (!verify_division(v, d)) throw std::logic_error("divide produced a variety that does not map onto the input");
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<ParamVariety> divide(const ParamVariety& v, unsigned q) {
  std::vector<ParamVariety> out;
  for (auto& d : divide_with_receipts(v, q)) out.push_back(std::move(d.W));
  return out;
}

bool verify_division(const ParamVariety& v, const Division& d) {
  const ParamVariety image = push(IntMat::scalar(v.n(), d.q), d.W);
  if (!(image.generic_point() == v.point_at(d.substitution))) return false;
  ParamVariety check = image;
  check.equations = v.equations;
  return equations_hold(check);
}

bool is_kummer_generic(const ParamVariety& v, unsigned q) { return divide_with_receipts(v, q).size() == 1; }

std::string canonical_key(const ParamVariety& v) {
  std::map<Symbol, Symbol> names;
  for (std::size_t k = 0; k < v.params.size(); ++k) names[v.params[k]] = Symbol::intern("#" + std::to_string(k));
  std::string key = std::to_string(v.n());
  for (const auto& f : v.additive) key += "|" + f.rename(names).to_string();
  for (const auto& f : v.multiplicative) key += "|" + f.rename(names).to_string();
  return key;
}

std::vector<Division> roots_system(const ParamVariety& v, unsigned q_max) {
  std::vector<Division> out;
  std::set<std::string> seen;
  for (unsigned q = 1; q <= q_max; ++q)
    for (auto& d : divide_with_receipts(v, q))
      if (seen.insert(canonical_key(d.W)).second) out.push_back(std::move(d));
  return out;
}

TransferCertificate roots_transfer(const ParamVariety& v, const Division& d, const IntMat& M) {
  TransferCertificate c;
  c.M = M;
  c.q = d.q;
  c.MW = push(M, d.W);
  c.MV = push(M, v);
  const ParamVariety qMW = push(IntMat::scalar(M.rows(), d.q), c.MW);
  c.holds = qMW.generic_point() == c.MV.point_at(d.substitution);
  return c;
}

}  // namespace pexp::varieties
