// pexp: command line front end for the pseudoexp library.
//
// Exit status: 0 when every certificate is green, 1 when one is red, 2 on
// errors (bad input, unsupported construction).

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "pseudoexp/efield/audit.hpp"
#include "pseudoexp/engine/engine.hpp"
#include "pseudoexp/errors.hpp"
#include "pseudoexp/intmat/lemmas.hpp"
#include "pseudoexp/varieties/catalog.hpp"
#include "pseudoexp/varieties/io.hpp"

using nlohmann::json;
using namespace pexp;

namespace {

bool structured = false;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

// A variety file, or the name of a catalog entry.
varieties::ParamVariety variety_arg(const std::string& arg) {
  if (!std::filesystem::exists(arg)) {
    const auto names = varieties::catalog_names();
    if (std::find(names.begin(), names.end(), arg) != names.end()) return varieties::catalog(arg);
  }
  return varieties::load_variety(arg);
}

// Constants of V become sigma-fixed indeterminates.
field::Involution involution_for(const varieties::ParamVariety& v) {
  field::Involution inv;
  std::vector<field::RatExpr> all = v.additive;
  all.insert(all.end(), v.multiplicative.begin(), v.multiplicative.end());
  for (field::Symbol s : field::variables_of(all))
    if (std::find(v.params.begin(), v.params.end(), s) == v.params.end()) inv.add_real(s);
  return inv;
}

void emit(const json& j, const std::string& text) {
  if (structured)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string flag_line(const char* name, const varieties::Flag& f) {
  std::string s = "  " + std::string(name);
  s.resize(20, ' ');
  s += varieties::to_string(f.status);
  if (f.witness) s += "  witness " + f.witness->to_string();
  if (f.witness_dim) s += " (dim " + std::to_string(*f.witness_dim) + ")";
  if (!f.holds() && !f.detail.empty()) s += "  (" + f.detail + ")";
  return s + "\n";
}

std::string checks_text(const intmat::Checks& cs) {
  std::string s;
  for (const auto& [name, ok] : cs) s += std::string(ok ? "  ok    " : "  FAIL  ") + name + "\n";
  return s;
}

bool all_ok(const intmat::Checks& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const auto& c) { return c.second; });
}

json checks_json(const intmat::Checks& cs) {
  json j = json::object();
  for (const auto& [name, ok] : cs) j[name] = ok;
  return j;
}

int cmd_check(const std::string& file, unsigned bound, std::optional<unsigned> kummer) {
  const auto v = variety_arg(file);
  const auto rep = varieties::classify(v, bound);
  json j = varieties::to_json(rep);
  j["variety"] = v.name;
  std::string text = "variety " + v.name + "  n=" + std::to_string(rep.n) + " dim=" + std::to_string(rep.dim) +
                     " depth=" + std::to_string(rep.depth) + " bound=" + std::to_string(bound) + "\n";
  text += flag_line("rotund", rep.rotund);
  text += flag_line("absolutely free", rep.abs_free);
  text += flag_line("simple", rep.simple);
  text += flag_line("perfectly rotund", rep.perfectly_rotund);
  if (kummer) {
    const bool kg = varieties::is_kummer_generic(v, *kummer);
    j["kummer_generic"] = {{"q", *kummer}, {"holds", kg}};
    text += "  kummer-generic q=" + std::to_string(*kummer) + (kg ? "  yes\n" : "  no\n");
  }
  emit(j, text);
  return 0;
}

int cmd_realize(const std::string& file) {
  const auto v = variety_arg(file);
  field::Involution inv = involution_for(v);
  field::NameSupply names;
  const auto r = varieties::realize(v, inv, names);
  const auto ver = varieties::verify_realization(v, r, inv);
  json j = varieties::to_json(r);
  j["checks"] = {{"witness_identity", ver.witness}, {"sigma", ver.sigma}};
  std::string text = "realization of " + v.name + " in G^" + std::to_string(r.check.n()) + "\n";
  const std::size_t n = v.n();
  for (std::size_t k = 0; k < n; ++k) {
    text += "  a" + std::to_string(k + 1) + " = " + r.check.additive[k].to_string() + "\n";
    text += "  c" + std::to_string(k + 1) + " = " + r.check.additive[n + k].to_string() + "\n";
    text += "  b" + std::to_string(k + 1) + " = " + r.check.multiplicative[k].to_string() + "\n";
    text += "  d" + std::to_string(k + 1) + " = " + r.check.multiplicative[n + k].to_string() + "\n";
  }
  text += std::string("  witness identity ") + (ver.witness ? "ok" : "FAIL") + "\n";
  text += std::string("  sigma            ") + (ver.sigma ? "ok" : "FAIL") + "\n";
  emit(j, text);
  return ver.witness && ver.sigma ? 0 : 1;
}

int cmd_restrict(const std::string& file, unsigned bound) {
  const auto v = variety_arg(file);
  field::NameSupply names;
  const auto rep = varieties::restriction_theorem_check(v, bound, involution_for(v), names);
  std::string text = "restriction check for " + v.name + " bound=" + std::to_string(bound) + "\n";
  text += "  dim of realization  " + std::to_string(rep.check_dim) + "\n";
  text += "  matrices checked    " + std::to_string(rep.matrices_checked) + "\n";
  text += "  equality cases      " + std::to_string(rep.equality_cases.size()) + "\n";
  for (const auto& c : rep.equality_cases) text += "    " + c.M.to_string() + "  " + c.shape + "\n";
  text += "  counterexamples     " + std::to_string(rep.counterexamples.size()) + "\n";
  text += std::string("  result              ") + (rep.holds() ? "holds" : "FAILS") + "\n";
  emit(varieties::to_json(rep), text);
  return rep.holds() ? 0 : 1;
}

int cmd_decompose(const std::string& n, const std::string& p) {
  const auto N = intmat::IntMat::parse(n);
  const auto P = intmat::IntMat::parse(p);
  const auto d = intmat::decompose_block(N, P);
  const auto cs = intmat::verify_block(N, P, d);
  json j = {{"A", varieties::to_json(d.A)},
            {"N0", varieties::to_json(d.N0)},
            {"P0", varieties::to_json(d.P0)},
            {"P1", varieties::to_json(d.P1)},
            {"checks", checks_json(cs)}};
  std::string text = "A  = " + d.A.to_string() + "\nN0 = " + d.N0.to_string() + "\nP0 = " + d.P0.to_string() +
                     "\nP1 = " + d.P1.to_string() + "\n" + checks_text(cs);
  emit(j, text);
  return all_ok(cs) ? 0 : 1;
}

int cmd_reduce(const std::string& m) {
  const auto M = intmat::IntMat::parse(m);
  const auto r = intmat::reduce_general(M);
  const auto cs = intmat::verify_reduction(M, r);
  json j = {{"A", varieties::to_json(r.A)},   {"N0", varieties::to_json(r.N0)}, {"N1", varieties::to_json(r.N1)},
            {"P1", varieties::to_json(r.P1)}, {"P0", varieties::to_json(r.P0)}, {"k", r.k},
            {"l", r.l},                       {"m", r.m},                       {"checks", checks_json(cs)}};
  std::string text = "A  = " + r.A.to_string() + "\nN0 = " + r.N0.to_string() + "\nN1 = " + r.N1.to_string() +
                     "\nP1 = " + r.P1.to_string() + "\nP0 = " + r.P0.to_string() + "\nk=" + std::to_string(r.k) +
                     " l=" + std::to_string(r.l) + " m=" + std::to_string(r.m) + "\n" + checks_text(cs);
  emit(j, text);
  return all_ok(cs) ? 0 : 1;
}

int cmd_act(const std::string& m, const std::string& point_file) {
  const auto M = intmat::IntMat::parse(m);
  const json pj = read_json(point_file);
  std::vector<field::RatExpr> z, w;
  try {
    for (const auto& e : pj.at("additive")) z.push_back(field::RatExpr::parse(e.get<std::string>()));
    for (const auto& e : pj.at("multiplicative")) w.push_back(field::RatExpr::parse(e.get<std::string>()));
  } catch (const json::exception& e) {
    throw ParseError(std::string("point file: ") + e.what());
  }
  const auto q = intmat::act(M, intmat::GPoint(z, w));
  json j = {{"additive", json::array()}, {"multiplicative", json::array()}};
  std::string text;
  for (const auto& e : q.additive) {
    j["additive"].push_back(e.to_string());
    text += "z: " + e.to_string() + "\n";
  }
  for (const auto& e : q.multiplicative) {
    j["multiplicative"].push_back(e.to_string());
    text += "w: " + e.to_string() + "\n";
  }
  emit(j, text);
  return 0;
}

std::string certificate_line(const json& c) {
  std::string s = c.value("ok", false) ? "[ok]   " : "[RED]  ";
  s += std::to_string(c.value("step", 0)) + " " + c.value("op", std::string("?"));
  if (c.contains("inputs"))
    for (const auto& [k, v] : c["inputs"].items()) s += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  if (c.contains("added") && !c["added"].empty()) s += "  added " + std::to_string(c["added"].size());
  if (c.contains("strong")) s += "  delta " + c["strong"]["block"]["delta"].dump();
  return s + "\n";
}

int cmd_run(const std::string& file, std::optional<std::uint64_t> seed, const std::string& out, bool timing) {
  engine::Script script = engine::load_script(file);
  if (seed) script.seed = *seed;
  const auto res = engine::run_script(script);
  json j = engine::to_json(res.report, res.state);
  if (timing) j["timing"] = engine::timing_json(res.report);
  if (!out.empty()) {
    std::ofstream o(out);
    if (!o) throw ConfigError("cannot write '" + out + "'");
    o << j.dump(2) << "\n";
  }
  std::string text;
  for (std::size_t i = 0; i < res.report.certificates.size(); ++i) {
    text += certificate_line(res.report.certificates[i]);
    if (timing) text.insert(text.size() - 1, "  (" + std::to_string(res.report.step_ms[i]) + " ms)");
  }
  if (res.report.failure) text += "failure: " + res.report.failure->dump() + "\n";
  text += std::string("final audit ") + (res.report.final_audit.ok() ? "ok" : "RED") + "\n";
  text += std::string("result ") + (res.report.ok ? "green" : "red") + "\n";
  emit(j, text);
  return res.report.ok ? 0 : 1;
}

int cmd_audit(const std::string& file) {
  json j = read_json(file);
  if (j.contains("final_state")) j = j["final_state"];
  const auto s = efield::state_from_json(j);
  const auto a = efield::audit(s);
  std::string text = "basis size " + std::to_string(s.basis.size()) + ", torsion " + std::to_string(s.torsion) + "\n";
  text += std::string("  kernel  ") + (a.kernel.ok ? "ok " : "RED ") + a.kernel.kernel.to_string() + "\n";
  text += std::string("  sigma   ") + (a.sigma.ok ? "ok" : "RED") + "\n";
  text += std::string("  delta   ") + (a.sp.ok ? "ok" : "RED") + " minimum " + std::to_string(a.sp.minimum) +
          " over " + std::to_string(a.sp.family_size) + " sets\n";
  emit(efield::to_json(a), text);
  return a.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for partial exponential fields with an involution"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));

  std::string file, mat_n, mat_p, mat_m, point, out;
  unsigned bound = 3;
  std::optional<unsigned> kummer;
  std::optional<std::uint64_t> seed;
  bool timing = false;

  auto* check = app.add_subcommand("check", "Classify a variety");
  check->add_option("variety", file, "Variety file or catalog name")->required();
  check->add_option("--bound", bound, "Entry bound for matrix enumeration");
  check->add_option("--kummer", kummer, "Also test Kummer genericity at q");

  auto* realize = app.add_subcommand("realize", "Restriction of scalars of a variety");
  realize->add_option("variety", file, "Variety file or catalog name")->required();

  auto* restrict = app.add_subcommand("restrict-check", "Check the restriction theorem up to a bound");
  restrict->add_option("variety", file, "Variety file or catalog name")->required();
  restrict->add_option("--bound", bound, "Entry bound for matrix enumeration");

  auto* decompose = app.add_subcommand("decompose", "Block decomposition of (N, P)");
  decompose->add_option("--N", mat_n, "Matrix, e.g. [[1,0]]")->required();
  decompose->add_option("--P", mat_p, "Matrix")->required();

  auto* reduce = app.add_subcommand("reduce", "Reduction of M = (L | R)");
  reduce->add_option("--M", mat_m, "Matrix with an even number of columns")->required();

  auto* act = app.add_subcommand("act", "Apply an integer matrix to a point");
  act->add_option("--M", mat_m, "Matrix")->required();
  act->add_option("--point", point, "Point file {additive: [...], multiplicative: [...]}")->required();

  auto* run = app.add_subcommand("run", "Run a construction script");
  run->add_option("script", file, "Script file")->required();
  run->add_option("--seed", seed, "Override the script seed");
  run->add_option("--out", out, "Write the report here");
  run->add_flag("--timing", timing, "Include wall-clock timings");

  auto* audit = app.add_subcommand("audit", "Audit a state file or run report");
  audit->add_option("state", file, "State or report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  structured = format == "structured";

  try {
    if (*check) return cmd_check(file, bound, kummer);
    if (*realize) return cmd_realize(file);
    if (*restrict) return cmd_restrict(file, bound);
    if (*decompose) return cmd_decompose(mat_n, mat_p);
    if (*reduce) return cmd_reduce(mat_m);
    if (*act) return cmd_act(mat_m, point);
    if (*run) return cmd_run(file, seed, out, timing);
    if (*audit) return cmd_audit(file);
  } catch (const Error& e) {
    if (structured)
      std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
