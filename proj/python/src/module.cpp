#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "pseudoexp/efield/audit.hpp"
#include "pseudoexp/engine/engine.hpp"
#include "pseudoexp/errors.hpp"
#include "pseudoexp/intmat/lemmas.hpp"
#include "pseudoexp/varieties/catalog.hpp"
#include "pseudoexp/varieties/io.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace pexp;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

// Catalog name or a JSON variety spec.
varieties::ParamVariety variety_of(const std::string& arg) {
  const auto names = varieties::catalog_names();
  if (std::find(names.begin(), names.end(), arg) != names.end()) return varieties::catalog(arg);
  return varieties::make_variety(varieties::spec_from_json(parse(arg)));
}

field::Involution involution_for(const varieties::ParamVariety& v) {
  field::Involution inv;
  std::vector<field::RatExpr> all = v.additive;
  all.insert(all.end(), v.multiplicative.begin(), v.multiplicative.end());
  for (field::Symbol s : field::variables_of(all))
    if (std::find(v.params.begin(), v.params.end(), s) == v.params.end()) inv.add_real(s);
  return inv;
}

json checks_json(const intmat::Checks& cs) {
  json j = json::object();
  for (const auto& [name, ok] : cs) j[name] = ok;
  return j;
}

std::string classify(const std::string& v, unsigned bound, std::optional<unsigned> kummer) {
  const auto var = variety_of(v);
  json j = varieties::to_json(varieties::classify(var, bound));
  j["variety"] = var.name;
  if (kummer) j["kummer_generic"] = {{"q", *kummer}, {"holds", varieties::is_kummer_generic(var, *kummer)}};
  return j.dump();
}

std::string divide(const std::string& v, unsigned q) {
  json j = json::array();
  for (const auto& d : varieties::divide_with_receipts(variety_of(v), q)) j.push_back(varieties::to_json(d));
  return j.dump();
}

std::string realize(const std::string& v) {
  const auto var = variety_of(v);
  field::Involution inv = involution_for(var);
  field::NameSupply names;
  const auto r = varieties::realize(var, inv, names);
  const auto ver = varieties::verify_realization(var, r, inv);
  json j = varieties::to_json(r);
  j["checks"] = {{"witness_identity", ver.witness}, {"sigma", ver.sigma}};
  return j.dump();
}

std::string decompose(const std::string& n, const std::string& p) {
  const auto N = intmat::IntMat::parse(n), P = intmat::IntMat::parse(p);
  const auto d = intmat::decompose_block(N, P);
  return json{{"A", varieties::to_json(d.A)},
              {"N0", varieties::to_json(d.N0)},
              {"P0", varieties::to_json(d.P0)},
              {"P1", varieties::to_json(d.P1)},
              {"checks", checks_json(intmat::verify_block(N, P, d))}}
      .dump();
}

std::string reduce(const std::string& m) {
  const auto M = intmat::IntMat::parse(m);
  const auto r = intmat::reduce_general(M);
  return json{{"A", varieties::to_json(r.A)},
              {"N0", varieties::to_json(r.N0)},
              {"N1", varieties::to_json(r.N1)},
              {"P1", varieties::to_json(r.P1)},
              {"P0", varieties::to_json(r.P0)},
              {"k", r.k},
              {"l", r.l},
              {"m", r.m},
              {"checks", checks_json(intmat::verify_reduction(M, r))}}
      .dump();
}

std::pair<std::vector<std::string>, std::vector<std::string>> act(const std::string& m,
                                                                  const std::vector<std::string>& additive,
                                                                  const std::vector<std::string>& multiplicative) {
  std::vector<field::RatExpr> z, w;
  for (const auto& e : additive) z.push_back(field::RatExpr::parse(e));
  for (const auto& e : multiplicative) w.push_back(field::RatExpr::parse(e));
  const auto q = intmat::act(intmat::IntMat::parse(m), intmat::GPoint(z, w));
  std::pair<std::vector<std::string>, std::vector<std::string>> out;
  for (const auto& e : q.additive) out.first.push_back(e.to_string());
  for (const auto& e : q.multiplicative) out.second.push_back(e.to_string());
  return out;
}

std::string run_script(const std::string& script) {
  const auto r = engine::run_script(engine::parse_script(parse(script)));
  return engine::to_json(r.report, r.state).dump();
}

std::string audit(const std::string& state) {
  return efield::to_json(efield::audit(efield::state_from_json(parse(state)))).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact pseudo-exponential constructions; results are JSON strings.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<MathError>(m, "MathError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<NotInDomainError>(m, "NotInDomainError", base.ptr());
  py::register_exception<NeedsRefinementError>(m, "NeedsRefinementError", base.ptr());

  m.def("catalog_names", &varieties::catalog_names);
  m.def("classify", &classify, py::arg("variety"), py::arg("bound") = 3, py::arg("kummer") = py::none());
  m.def("divide", &divide, py::arg("variety"), py::arg("q"));
  m.def("realize", &realize, py::arg("variety"));
  m.def("decompose", &decompose, py::arg("N"), py::arg("P"));
  m.def("reduce", &reduce, py::arg("M"));
  m.def("act", &act, py::arg("M"), py::arg("additive"), py::arg("multiplicative"));
  m.def("run_script", &run_script, py::arg("script"));
  m.def("audit", &audit, py::arg("state"));
}
