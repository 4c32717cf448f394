#include "pseudoexp/varieties/io.hpp"

#include <fstream>

#include "pseudoexp/errors.hpp"

namespace pexp::varieties {

using nlohmann::json;

namespace {

std::vector<std::string> strings(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw ParseError(std::string("variety is missing '") + key + "'");
    return {};
  }
  const json& a = j.at(key);
  if (!a.is_array()) throw ParseError(std::string("'") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& e : a) {
    if (e.is_string()) out.push_back(e.get<std::string>());
    else if (e.is_number_integer()) out.push_back(std::to_string(e.get<long>()));
    else throw ParseError(std::string("entries of '") + key + "' must be expressions");
  }
  return out;
}

json exprs(const std::vector<RatExpr>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(f.to_string());
  return a;
}

json names(const std::vector<Symbol>& ss) {
  json a = json::array();
  for (Symbol s : ss) a.push_back(s.name());
  return a;
}

json substitution(const std::map<Symbol, RatExpr>& m) {
  json o = json::object();
  for (const auto& [s, e] : m) o[s.name()] = e.to_string();
  return o;
}

}  // namespace

VarietySpec spec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("variety must be an object");
  VarietySpec s;
  s.name = j.value("name", std::string("V"));
  s.params = strings(j, "params", true);
  s.additive = strings(j, "additive", true);
  s.multiplicative = strings(j, "multiplicative", true);
  s.equations = strings(j, "equations", false);
  s.n = j.contains("n") ? j.at("n").get<std::size_t>() : s.additive.size();
  return s;
}

json to_json(const VarietySpec& s) {
  json j{{"name", s.name}, {"n", s.n}, {"params", s.params}, {"additive", s.additive},
         {"multiplicative", s.multiplicative}};
  if (!s.equations.empty()) j["equations"] = s.equations;
  return j;
}

ParamVariety load_variety(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open variety file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("variety file '" + path + "': " + e.what());
  }
  return make_variety(spec_from_json(j));
}

json to_json(const IntMat& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (m(i, k).fits_slong_p()) r.push_back(m(i, k).get_si());
      else r.push_back(m(i, k).get_str());
    }
    a.push_back(std::move(r));
  }
  return a;
}

json to_json(const ParamVariety& v) {
  json eqs = json::array();
  for (const auto& e : v.equations) eqs.push_back(e.to_string());
  return json{{"name", v.name},
              {"n", v.n()},
              {"params", names(v.params)},
              {"additive", exprs(v.additive)},
              {"multiplicative", exprs(v.multiplicative)},
              {"equations", eqs},
              {"provenance", v.provenance}};
}

json to_json(const Flag& f) {
  json j{{"status", to_string(f.status)}};
  if (f.witness) j["witness"] = to_json(*f.witness);
  if (f.witness_dim) j["witness_dim"] = *f.witness_dim;
  if (!f.detail.empty()) j["detail"] = f.detail;
  return j;
}

json to_json(const field::RelationLattice& l) {
  json notes = json::array();
  for (const auto& n : l.notes) {
    json e{{"constant", n.constant.to_string()}, {"kind", field::to_string(n.kind)}};
    if (n.kind == field::ConstantKind::RootOfUnity) e["order"] = n.order;
    notes.push_back(std::move(e));
  }
  return json{{"generators", to_json(l.generators)}, {"notes", notes}};
}

json to_json(const ClassificationReport& r) {
  json eq = json::array();
  for (const auto& e : r.equality_matrices) eq.push_back(json{{"M", to_json(e.M)}, {"rank", e.rank}});
  return json{{"n", r.n},
              {"dim", r.dim},
              {"depth", r.depth},
              {"bound", r.bound},
              {"rotund", to_json(r.rotund)},
              {"absolutely_free", to_json(r.abs_free)},
              {"simple", to_json(r.simple)},
              {"perfectly_rotund", to_json(r.perfectly_rotund)},
              {"additive_relations", to_json(r.additive_relations)},
              {"multiplicative_relations", to_json(r.multiplicative_relations)},
              {"equality_matrices", eq},
              {"matrices_checked", r.matrices_checked}};
}

json to_json(const Division& d) {
  return json{{"q", d.q}, {"twist", d.twist}, {"variety", to_json(d.W)}, {"substitution", substitution(d.substitution)}};
}

json to_json(const Realization& r) {
  json pairs = json::array();
  for (const auto& [x, y] : r.pairs) pairs.push_back({x.name(), y.name()});
  return json{{"variety", to_json(r.check)},
              {"half", to_json(r.half)},
              {"pairs", pairs},
              {"witness", substitution(r.witness)}};
}

json to_json(const RestrictionReport& r) {
  auto cases = [](const std::vector<RestrictionCase>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back(json{{"M", to_json(c.M)}, {"rank", c.rank}, {"dim", c.dim}, {"shape", c.shape}});
    return a;
  };
  return json{{"bound", r.bound},
              {"input", to_json(r.input)},
              {"realization", to_json(r.realization)},
              {"check_dim", r.check_dim},
              {"check_absolutely_free", to_json(r.check_abs_free)},
              {"check_rotund", to_json(r.check_rotund)},
              {"equality_cases", cases(r.equality_cases)},
              {"counterexamples", cases(r.counterexamples)},
              {"matrices_checked", r.matrices_checked},
              {"holds", r.holds()}};
}

}  // namespace pexp::varieties
