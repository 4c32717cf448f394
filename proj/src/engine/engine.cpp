#include "pseudoexp/engine/engine.hpp"

#include <chrono>
#include <fstream>
#include <numeric>
#include <set>

#include "pseudoexp/errors.hpp"
#include "pseudoexp/field/relations.hpp"
#include "pseudoexp/field/transcendence.hpp"
#include "pseudoexp/varieties/catalog.hpp"
#include "pseudoexp/varieties/io.hpp"

namespace pexp::engine {

using efield::BasisEntry;
using efield::SigmaType;
using efield::SolutionRecord;
using efield::ValueKind;
using field::Scalar;
using field::Symbol;
using intmat::IntMat;
using nlohmann::json;

const char* to_string(Parity p) { return p == Parity::Real ? "real" : "imaginary"; }

Parity parity_from(const std::string& s) {
  if (s == "real") return Parity::Real;
  if (s == "imaginary" || s == "circle") return Parity::Imaginary;
  throw ParseError("unknown parity '" + s + "'");
}

namespace {

constexpr Op kOps[] = {Op::Domain, Op::Image, Op::Sol, Op::Roots, Op::Audit, Op::Classify, Op::Realize,
                       Op::RestrictionCheck};

RatExpr cayley(Symbol s) {
  const RatExpr is = RatExpr(Scalar::imaginary_unit()) * RatExpr::variable(s);
  return (RatExpr(1) + is) / (RatExpr(1) - is);
}

void require_registered(const field::Involution& inv, const std::vector<RatExpr>& es, const std::string& what) {
  for (Symbol s : field::variables_of(es))
    if (!inv.registered(s)) throw ConfigError(what + ": indeterminate '" + s.name() + "' is not declared");
}

json exprs(const std::vector<RatExpr>& v) {
  json j = json::array();
  for (const auto& e : v) j.push_back(e.to_string());
  return j;
}

json expr_map(const std::map<Symbol, RatExpr>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k.name()] = v.to_string();
  return j;
}

bool all_checks(const json& checks) {
  for (const auto& [k, v] : checks.items())
    if (v.is_boolean() && !v.get<bool>()) return false;
  return true;
}

// Audits `next` against `old`, fills in the common certificate fields.
json certify(const EFieldState& old, const EFieldState& next, Op op, json inputs, const std::string& rule,
             bool rule_ok, const std::string& rule_detail, json checks, json extra = json::object()) {
  json c;
  c["step"] = old.history.size();
  c["op"] = to_string(op);
  c["inputs"] = std::move(inputs);
  json added = json::array();
  for (std::size_t j = old.basis.size(); j < next.basis.size(); ++j) added.push_back(j);
  c["added"] = added;
  c["identity"] = next.basis.size() == old.basis.size() && next.torsion == old.torsion &&
                  next.receipts.size() == old.receipts.size();
  for (auto& [k, v] : extra.items()) c[k] = v;
  const auto kernel = efield::audit_kernel(next);
  const auto sigma = efield::audit_sigma(next);
  const auto strong = efield::strong_certificate(next, old.basis.size(), rule, rule_ok, rule_detail);
  c["checks"] = checks;
  c["kernel"] = efield::to_json(kernel);
  c["sigma"] = efield::to_json(sigma);
  c["strong"] = efield::to_json(strong);
  c["ok"] = kernel.ok && sigma.ok && strong.ok() && all_checks(checks);
  return c;
}

StepResult commit(EFieldState next, json cert) {
  next.history.push_back(cert);
  return {std::move(next), std::move(cert)};
}

// A Z-combination of basis elements, or nullopt.
std::optional<std::vector<long>> integer_coordinates(const EFieldState& s, const RatExpr& x) {
  const auto c = efield::coordinates(s, x);
  if (!c) return std::nullopt;
  std::vector<long> out;
  for (const auto& r : *c) {
    if (r.get_den() != 1 || !r.get_num().fits_slong_p()) return std::nullopt;
    out.push_back(r.get_num().get_si());
  }
  return out;
}

json coords_json(const std::vector<long>& v) { return json(v); }

bool on_equations(const ParamVariety& v, const std::vector<RatExpr>& z, const std::vector<RatExpr>& w) {
  std::map<Symbol, RatExpr> at;
  for (std::size_t j = 0; j < v.n(); ++j) {
    at[varieties::coordinate(true, j + 1)] = z[j];
    at[varieties::coordinate(false, j + 1)] = w[j];
  }
  for (const auto& e : v.equations)
    if (!field::evaluate(e, at).is_zero()) return false;
  return true;
}

// SOL without touching the history.
StepResult sol_step(const EFieldState& s, const ParamVariety& v, bool no_sigma, unsigned bound) {
  const auto rep = varieties::classify(v, bound);
  if (!rep.simple.holds())
    throw MathError("simpleness of '" + v.name + "' not established: " + rep.simple.detail);
  const std::size_t n = v.n();
  const std::size_t old_size = s.basis.size();
  EFieldState next = s;
  SolutionRecord rec;
  rec.variety = v.name;
  rec.key = varieties::canonical_key(v);
  rec.sigma_mode = !no_sigma;
  const std::string origin = std::string(no_sigma ? "sol-nosigma " : "sol ") + v.name;
  json checks;
  json extra;
  extra["classification"] = {{"simple", varieties::to_json(rep.simple)},
                             {"perfectly_rotund", varieties::to_json(rep.perfectly_rotund)},
                             {"dim", rep.dim}};
  std::size_t expected_td = 0;

  if (!no_sigma) {
    const auto r = varieties::realize(v, next.inv, next.names);
    const auto ver = varieties::verify_realization(v, r, next.inv);
    const auto& ch = r.check;
    for (std::size_t j = 0; j < n; ++j) {
      next.basis.push_back({ch.additive[j], ch.multiplicative[j], SigmaType::Real, ValueKind::Solution, origin, ""});
      next.basis.push_back(
          {ch.additive[n + j], ch.multiplicative[n + j], SigmaType::Imaginary, ValueKind::Solution, origin, ""});
      rec.block.push_back(old_size + 2 * j);
      rec.block.push_back(old_size + 2 * j + 1);
      rec.point.push_back(ch.additive[j] + ch.additive[n + j]);
      rec.values.push_back(ch.multiplicative[j] * ch.multiplicative[n + j]);
    }
    rec.witness = r.witness;
    checks["witness_identity"] = ver.witness;
    checks["realization_sigma"] = ver.sigma;
    json pairs = json::array();
    for (const auto& [a, b] : r.pairs) pairs.push_back({a.name(), b.name()});
    extra["pairs"] = pairs;
    expected_td = 2 * rep.dim;
  } else {
    std::set<Symbol> params(v.params.begin(), v.params.end());
    std::vector<RatExpr> maps = v.additive;
    maps.insert(maps.end(), v.multiplicative.begin(), v.multiplicative.end());
    for (Symbol c : field::variables_of(maps))
      if (!params.count(c) && !next.inv.registered(c))
        throw ConfigError("constant '" + c.name() + "' of '" + v.name + "' is not declared");
    std::map<Symbol, Symbol> fresh;
    for (Symbol p : v.params) {
      const Symbol f = next.names.fresh("u", next.inv);
      next.inv.add_real(f);
      fresh[p] = f;
      rec.witness[p] = RatExpr::variable(f);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const RatExpr z = v.additive[j].rename(fresh);
      const RatExpr w = v.multiplicative[j].rename(fresh);
      next.basis.push_back({z, w, SigmaType::Untracked, ValueKind::Solution, origin, ""});
      rec.block.push_back(old_size + j);
      rec.point.push_back(z);
      rec.values.push_back(w);
    }
    expected_td = rep.dim;
  }

  checks["membership"] = v.point_at(rec.witness) == intmat::GPoint(rec.point, rec.values);
  checks["equations"] = on_equations(v, rec.point, rec.values);
  bool e_ok = true;
  for (std::size_t j = 0; j < n; ++j) e_ok = e_ok && efield::E_of(next, rec.point[j]) == rec.values[j];
  checks["E_of_point"] = e_ok;
  std::vector<RatExpr> els = next.elements();
  checks["independent"] = field::linear_dimension(els) == els.size();
  const efield::DeltaOracle oracle(next);
  IntMat block(next.basis.size() - old_size, next.basis.size());
  for (std::size_t i = 0; i < block.rows(); ++i) block(i, old_size + i) = 1;
  const std::size_t td = oracle.tr_deg(block, old_size);
  checks["tr_deg"] = td == expected_td;
  extra["tr_deg"] = td;
  extra["tr_deg_expected"] = expected_td;
  extra["solution"] = {{"variety", rec.variety},
                       {"point", exprs(rec.point)},
                       {"values", exprs(rec.values)},
                       {"witness", expr_map(rec.witness)}};
  next.solutions.push_back(rec);

  json inputs = {{"variety", v.name}, {"noSigma", no_sigma}, {"bound", bound}};
  const bool rule_ok = rep.simple.holds() && td == expected_td;
  json cert = certify(s, next, Op::Sol, inputs, no_sigma ? "generic point of a simple variety (no sigma)"
                                                          : "generic real point of a simple variety",
                      rule_ok, rule_ok ? "" : "generic-point conditions failed", checks, extra);
  return {std::move(next), std::move(cert)};
}

// q z lies in the domain with E(q z) = E(z)^q, and (q z, E(z)^q) is V at the
// composed witness.
json transfer_check(const EFieldState& s, const ParamVariety& v, const varieties::Division& d,
                    const SolutionRecord& rec) {
  const RatExpr qq(static_cast<long>(d.q));
  std::vector<RatExpr> qz, wq;
  bool e_ok = true;
  for (std::size_t j = 0; j < rec.point.size(); ++j) {
    qz.push_back(qq * rec.point[j]);
    wq.push_back(rec.values[j].pow(d.q));
    const auto c = integer_coordinates(s, qz.back());
    e_ok = e_ok && c && efield::E_of(s, *c) == wq.back();
  }
  std::map<Symbol, RatExpr> at;
  for (Symbol p : v.params) {
    const auto it = d.substitution.find(p);
    const RatExpr e = it == d.substitution.end() ? RatExpr::variable(p) : it->second;
    at[p] = e.substitute(rec.witness);
  }
  const bool member = v.point_at(at) == intmat::GPoint(qz, wq);
  return {{"q", d.q}, {"E_of", e_ok}, {"membership", member}, {"holds", e_ok && member}};
}

}  // namespace

const char* to_string(Op op) {
  switch (op) {
    case Op::Domain: return "Domain";
    case Op::Image: return "Image";
    case Op::Sol: return "Sol";
    case Op::Roots: return "Roots";
    case Op::Audit: return "Audit";
    case Op::Classify: return "Classify";
    case Op::Realize: return "Realize";
    case Op::RestrictionCheck: return "RestrictionCheck";
  }
  return "?";
}

Op op_from(const std::string& s) {
  for (Op op : kOps)
    if (s == to_string(op)) return op;
  throw ParseError("unknown step '" + s + "'");
}

StepResult op_base(const EFieldState& s) {
  EFieldState empty = s;
  empty.basis.clear();
  const auto sp = efield::audit_sp(s);
  json checks = {{"sp", sp.ok}, {"torsion_one", s.torsion == 1}};
  json cert = certify(empty, s, Op::Audit, {{"omega", s.omega.name()}}, "base", true, "", checks,
                      {{"sp", efield::to_json(sp)}});
  cert["op"] = "base";
  cert["identity"] = false;
  return commit(s, std::move(cert));
}

StepResult op_domain(const EFieldState& s, const RatExpr& alpha, Parity parity) {
  require_registered(s.inv, {alpha}, "Domain");
  const RatExpr sa = s.inv.apply(alpha);
  if (parity == Parity::Real ? sa != alpha : sa != -alpha)
    throw MathError("alpha '" + alpha.to_string() + "' is not " + (parity == Parity::Real ? "real" : "imaginary"));
  json inputs = {{"alpha", alpha.to_string()}, {"parity", to_string(parity)}};
  EFieldState next = s;
  json checks = json::object();
  if (efield::coordinates(s, alpha)) {
    const RatExpr value = efield::E_of_refining(next, alpha);
    const auto c = integer_coordinates(next, alpha);
    checks["in_domain"] = c.has_value();
    json extra = {{"value", value.to_string()}};
    if (c) extra["coordinates"] = coords_json(*c);
    const bool refined = next.basis.size() == s.basis.size() &&
                         (next.torsion != s.torsion || next.receipts.size() != s.receipts.size());
    return commit(next, certify(s, next, Op::Domain, inputs, refined ? "refinement" : "identity", true, "", checks,
                                extra));
  }
  Symbol fresh;
  BasisEntry b;
  b.element = alpha;
  b.origin = "domain";
  if (parity == Parity::Real) {
    fresh = next.names.fresh("u", next.inv);
    next.inv.add_real(fresh);
    b.value = RatExpr::variable(fresh);
    b.sigma = SigmaType::Real;
    b.kind = ValueKind::Monomial;
    b.positivity = "positive";
    checks["value_sigma"] = next.inv.apply(b.value) == b.value;
  } else {
    fresh = next.names.fresh("s", next.inv);
    next.inv.add_real(fresh);
    b.value = cayley(fresh);
    b.sigma = SigmaType::Imaginary;
    b.kind = ValueKind::Circle;
    checks["value_sigma"] = next.inv.apply(b.value) * b.value == RatExpr(1);
  }
  next.basis.push_back(b);
  const bool fresh_ok = !s.inv.registered(fresh);
  return commit(next, certify(s, next, Op::Domain, inputs, "fresh value", fresh_ok,
                              fresh_ok ? "" : "value indeterminate not fresh", checks,
                              {{"value", b.value.to_string()}}));
}

StepResult op_image(const EFieldState& s, const RatExpr& beta, Parity parity) {
  if (beta.is_zero()) throw MathError("E never takes the value 0");
  require_registered(s.inv, {beta}, "Image");
  const RatExpr sb = s.inv.apply(beta);
  if (parity == Parity::Real ? sb != beta : sb * beta != RatExpr(1))
    throw MathError("beta '" + beta.to_string() + "' is not " + (parity == Parity::Real ? "real" : "on the unit circle"));
  json inputs = {{"beta", beta.to_string()}, {"parity", to_string(parity)}};
  json checks = json::object();

  EFieldState next = s;
  auto pre = efield::preimage(next, beta);
  if (!pre) {
    // beta^k is a value for some k > 1: refine until beta itself is one.
    std::vector<RatExpr> vals = next.values();
    vals.push_back(beta);
    const auto K = efield::unit_kernel(field::mult_relations(vals, next.indeterminates()));
    const std::size_t m = next.basis.size();
    if (K) {
      for (std::size_t i = 0; i < K->rows() && !pre; ++i) {
        const long k = (*K)(i, m).get_si();
        if (k == 0) continue;
        RatExpr x;
        for (std::size_t j = 0; j < m; ++j) {
          field::Rational c(-(*K)(i, j), intmat::Integer(k));
          c.canonicalize();
          x += RatExpr(field::Scalar(c)) * next.basis[j].element;
        }
        EFieldState trial = next;
        try {
          const RatExpr gamma = efield::E_of_refining(trial, x);
          const RatExpr ratio = beta / gamma;
          if (!ratio.is_constant()) continue;
          const auto order = ratio.constant_value().root_of_unity_order();
          if (!order) continue;
          const unsigned long t = std::lcm(trial.torsion, *order);
          trial = efield::refine(trial, 0, t / trial.torsion);
          pre = efield::preimage(trial, beta);
          if (pre) next = std::move(trial);
        } catch (const UnsupportedError&) {
          throw UnsupportedError("beta '" + beta.to_string() + "' is a root of a value that cannot be refined");
        }
      }
    }
  }
  if (pre) {
    checks["preimage"] = efield::E_of(next, *pre) == beta;
    const bool refined = next.torsion != s.torsion || next.receipts.size() != s.receipts.size();
    return commit(next, certify(s, next, Op::Image, inputs, refined ? "refinement" : "identity", true, "", checks,
                                {{"coordinates", coords_json(*pre)}}));
  }

  const Symbol a = next.names.fresh("a", next.inv);
  next.inv.add_real(a);
  BasisEntry b;
  b.value = beta;
  b.origin = "image";
  b.kind = ValueKind::Opaque;
  const auto vars = beta.variables();
  const bool single = vars.size() == 1 && next.inv.is_real(vars.front());
  if (parity == Parity::Real) {
    b.element = RatExpr::variable(a);
    b.sigma = SigmaType::Real;
    if (single && beta == RatExpr::variable(vars.front())) b.kind = ValueKind::Monomial;
  } else {
    b.element = RatExpr(Scalar::imaginary_unit()) * RatExpr::variable(a);
    b.sigma = SigmaType::Imaginary;
    if (single && beta == cayley(vars.front())) b.kind = ValueKind::Circle;
  }
  next.basis.push_back(b);
  const bool fresh_ok = !s.inv.registered(a);
  return commit(next, certify(s, next, Op::Image, inputs, "fresh element", fresh_ok,
                              fresh_ok ? "" : "element indeterminate not fresh", checks,
                              {{"element", b.element.to_string()}, {"kind", efield::to_string(b.kind)}}));
}

StepResult op_sol(const EFieldState& s, const ParamVariety& v, bool no_sigma, unsigned bound) {
  StepResult r = sol_step(s, v, no_sigma, bound);
  return commit(std::move(r.state), std::move(r.certificate));
}

StepResult op_roots(const EFieldState& s, const ParamVariety& v, unsigned q_max, bool no_sigma, unsigned bound) {
  if (q_max == 0) throw MathError("Roots needs qMax >= 1");
  const auto system = varieties::roots_system(v, q_max);
  EFieldState next = s;
  json components = json::array();
  bool subs_ok = true;
  for (const auto& d : system) {
    const std::string key = varieties::canonical_key(d.W);
    json comp = {{"q", d.q}, {"variety", d.W.name}, {"twist", d.twist}};
    auto solved = [&]() -> const SolutionRecord* {
      for (auto it = next.solutions.rbegin(); it != next.solutions.rend(); ++it)
        if (it->key == key && it->sigma_mode == !no_sigma) return &*it;
      return nullptr;
    };
    if (solved()) {
      comp["skipped"] = true;
    } else {
      StepResult r = sol_step(next, d.W, no_sigma, bound);
      comp["skipped"] = false;
      comp["sol"] = r.certificate;
      subs_ok = subs_ok && r.ok();
      next = std::move(r.state);
    }
    comp["transfer"] = transfer_check(next, v, d, *solved());
    components.push_back(std::move(comp));
  }
  json checks = json::object();
  bool transfer = true;
  for (const auto& c : components) transfer = transfer && c["transfer"]["holds"].get<bool>();
  checks["solutions"] = subs_ok;
  checks["transfer"] = transfer;
  json inputs = {{"variety", v.name}, {"qMax", q_max}, {"noSigma", no_sigma}, {"bound", bound}};
  return commit(next, certify(s, next, Op::Roots, inputs, "solutions of the system of roots", subs_ok,
                              subs_ok ? "" : "a component solution is not certified", checks,
                              {{"components", components}}));
}

StepResult op_audit(const EFieldState& s) {
  const auto a = efield::audit(s);
  json cert = certify(s, s, Op::Audit, json::object(), "identity", true, "", {{"audit", a.ok()}},
                      {{"audit", efield::to_json(a)}});
  return commit(s, std::move(cert));
}

// ---------------------------------------------------------------------------
// Scripts

namespace {

ParamVariety declared_variety(const std::string& key, const json& j) {
  if (j.is_string()) {
    ParamVariety v = varieties::catalog(j.get<std::string>());
    return v;
  }
  if (j.is_object() && j.contains("catalog")) return varieties::catalog(j.at("catalog").get<std::string>());
  auto spec = varieties::spec_from_json(j);
  if (!j.contains("name")) spec.name = key;
  return varieties::make_variety(spec);
}

const ParamVariety& variety_of(const Script& s, const Step& st) {
  const auto it = s.varieties.find(st.variety);
  if (it == s.varieties.end()) throw ParseError("undeclared variety '" + st.variety + "'");
  return it->second;
}

}  // namespace

Script parse_script(const json& j) {
  if (!j.is_object()) throw ParseError("script must be an object");
  Script s;
  try {
    s.seed = j.value("seed", std::uint64_t{0});
    s.omega = j.value("omega", std::string("omega"));
    if (!field::is_valid_name(s.omega)) throw ParseError("invalid omega name '" + s.omega + "'");
    if (j.contains("indeterminates")) {
      const json& ind = j.at("indeterminates");
      if (ind.contains("real")) s.reals = ind.at("real").get<std::vector<std::string>>();
      if (ind.contains("pairs"))
        for (const auto& p : ind.at("pairs")) {
          if (!p.is_array() || p.size() != 2) throw ParseError("a pair needs two names");
          s.pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
        }
    }
    for (const auto& n : s.reals)
      if (!field::is_valid_name(n)) throw ParseError("invalid indeterminate name '" + n + "'");
    for (const auto& [a, b] : s.pairs)
      if (!field::is_valid_name(a) || !field::is_valid_name(b))
        throw ParseError("invalid indeterminate name in pair (" + a + ", " + b + ")");
    if (j.contains("varieties"))
      for (const auto& [key, val] : j.at("varieties").items()) s.varieties.emplace(key, declared_variety(key, val));
    if (j.contains("steps"))
      for (const auto& st : j.at("steps")) {
        Step step;
        step.op = op_from(st.at("op").get<std::string>());
        switch (step.op) {
          case Op::Domain:
            step.expr = RatExpr::parse(st.at("alpha").get<std::string>());
            step.parity = parity_from(st.value("parity", std::string("real")));
            break;
          case Op::Image:
            step.expr = RatExpr::parse(st.at("beta").get<std::string>());
            step.parity = parity_from(st.value("parity", std::string("real")));
            break;
          case Op::Audit:
            break;
          default:
            step.variety = st.at("variety").get<std::string>();
            if (!s.varieties.count(step.variety)) throw ParseError("undeclared variety '" + step.variety + "'");
            step.bound = st.value("bound", 3u);
            step.q_max = st.value("qMax", 1u);
            step.no_sigma = st.value("noSigma", false);
        }
        s.steps.push_back(std::move(step));
      }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed script: ") + e.what());
  }
  return s;
}

Script load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open script '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("script '" + path + "': " + e.what());
  }
  return parse_script(j);
}

json to_json(const Script& s) {
  json pairs = json::array();
  for (const auto& [a, b] : s.pairs) pairs.push_back({a, b});
  json vars = json::object();
  for (const auto& [k, v] : s.varieties) vars[k] = varieties::to_json(v);
  json steps = json::array();
  for (const auto& st : s.steps) {
    json x = {{"op", to_string(st.op)}};
    if (st.op == Op::Domain) x["alpha"] = st.expr->to_string();
    if (st.op == Op::Image) x["beta"] = st.expr->to_string();
    if (st.op == Op::Domain || st.op == Op::Image) x["parity"] = to_string(st.parity);
    if (!st.variety.empty()) {
      x["variety"] = st.variety;
      x["bound"] = st.bound;
      x["qMax"] = st.q_max;
      x["noSigma"] = st.no_sigma;
    }
    steps.push_back(std::move(x));
  }
  return {{"seed", s.seed},
          {"omega", s.omega},
          {"indeterminates", {{"real", s.reals}, {"pairs", pairs}}},
          {"varieties", vars},
          {"steps", steps}};
}

EFieldState initial_state(const Script& s) {
  field::Involution inv;
  for (const auto& r : s.reals) inv.add_real(Symbol::intern(r));
  for (const auto& [a, b] : s.pairs) inv.add_pair(Symbol::intern(a), Symbol::intern(b));
  const Symbol omega = Symbol::intern(s.omega);
  if (!inv.registered(omega)) inv.add_real(omega);
  return efield::new_base(std::move(inv), omega, s.seed);
}

namespace {

const char* error_kind(const Error& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const DimensionError*>(&e)) return "dimension";
  if (dynamic_cast<const MathError*>(&e)) return "math";
  if (dynamic_cast<const UnsupportedError*>(&e)) return "unsupported";
  if (dynamic_cast<const NotInDomainError*>(&e)) return "not-in-domain";
  if (dynamic_cast<const NeedsRefinementError*>(&e)) return "needs-refinement";
  return "error";
}

StepResult run_step(const Script& script, const EFieldState& s, const Step& st) {
  switch (st.op) {
    case Op::Domain: return op_domain(s, *st.expr, st.parity);
    case Op::Image: return op_image(s, *st.expr, st.parity);
    case Op::Sol: return op_sol(s, variety_of(script, st), st.no_sigma, st.bound);
    case Op::Roots: return op_roots(s, variety_of(script, st), st.q_max, st.no_sigma, st.bound);
    case Op::Audit: return op_audit(s);
    case Op::Classify: {
      const auto rep = varieties::classify(variety_of(script, st), st.bound);
      json c = {{"step", s.history.size()},
                {"op", "Classify"},
                {"inputs", {{"variety", st.variety}, {"bound", st.bound}}},
                {"report", varieties::to_json(rep)},
                {"ok", true}};
      return commit(s, std::move(c));
    }
    case Op::Realize: {
      field::Involution inv = s.inv;
      field::NameSupply names = s.names;
      const ParamVariety& v = variety_of(script, st);
      const auto r = varieties::realize(v, inv, names);
      const auto ver = varieties::verify_realization(v, r, inv);
      json c = {{"step", s.history.size()},
                {"op", "Realize"},
                {"inputs", {{"variety", st.variety}}},
                {"realization", varieties::to_json(r)},
                {"checks", {{"witness_identity", ver.witness}, {"sigma", ver.sigma}}},
                {"ok", ver.witness && ver.sigma}};
      return commit(s, std::move(c));
    }
    case Op::RestrictionCheck: {
      field::NameSupply names = s.names;
      const auto rep = varieties::restriction_theorem_check(variety_of(script, st), st.bound, s.inv, names);
      json c = {{"step", s.history.size()},
                {"op", "RestrictionCheck"},
                {"inputs", {{"variety", st.variety}, {"bound", st.bound}}},
                {"report", varieties::to_json(rep)},
                {"ok", rep.holds()}};
      return commit(s, std::move(c));
    }
  }
  throw std::logic_error("unhandled step");
}

}  // namespace

RunResult run_script(const Script& script) {
  using clock = std::chrono::steady_clock;
  RunResult out{{}, initial_state(script)};
  RunReport& rep = out.report;
  rep.seed = script.seed;
  auto t0 = clock::now();
  auto record = [&](StepResult&& r) {
    rep.step_ms.push_back(std::chrono::duration<double, std::milli>(clock::now() - t0).count());
    rep.certificates.push_back(r.certificate);
    const bool ok = r.ok();
    out.state = std::move(r.state);
    return ok;
  };
  if (!record(op_base(out.state))) {
    rep.ok = false;
    rep.failure = json{{"step", 0}, {"op", "base"}, {"reason", "red certificate"}};
  }
  for (std::size_t i = 0; rep.ok && i < script.steps.size(); ++i) {
    const Step& st = script.steps[i];
    t0 = clock::now();
    try {
      if (!record(run_step(script, out.state, st))) {
        rep.ok = false;
        rep.failure = json{{"step", i + 1}, {"op", to_string(st.op)}, {"reason", "red certificate"}};
      }
    } catch (const Error& e) {
      rep.ok = false;
      rep.failure = json{{"step", i + 1}, {"op", to_string(st.op)}, {"reason", error_kind(e)}, {"message", e.what()}};
    }
  }
  rep.final_audit = efield::audit(out.state);
  if (!rep.final_audit.ok() && rep.ok) {
    rep.ok = false;
    rep.failure = json{{"step", script.steps.size() + 1}, {"op", "final audit"}, {"reason", "red audit"}};
  }
  return out;
}

json to_json(const RunReport& r, const EFieldState& final_state) {
  json j = {{"seed", r.seed},
            {"certificates", r.certificates},
            {"final_audit", efield::to_json(r.final_audit)},
            {"ok", r.ok},
            {"final_state", efield::to_json(final_state)}};
  if (r.failure) j["failure"] = *r.failure;
  return j;
}

json timing_json(const RunReport& r) { return {{"step_ms", r.step_ms}}; }

}  // namespace pexp::engine
