#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pseudoexp/efield/audit.hpp"
#include "pseudoexp/efield/state.hpp"
#include "pseudoexp/varieties/variety.hpp"

namespace pexp::engine {

using efield::EFieldState;
using field::RatExpr;
using varieties::ParamVariety;

/// Real: sigma x = x. Imaginary: sigma x = -x for DOMAIN, E-value on the unit
/// circle for IMAGE.
enum class Parity { Real, Imaginary };

const char* to_string(Parity p);
/// Accepts "real", "imaginary" and "circle".
Parity parity_from(const std::string& s);

enum class Op { Domain, Image, Sol, Roots, Audit, Classify, Realize, RestrictionCheck };

const char* to_string(Op op);
Op op_from(const std::string& s);

struct Step {
  Op op = Op::Audit;
  std::optional<RatExpr> expr;  // alpha for Domain, beta for Image
  Parity parity = Parity::Real;
  std::string variety;
  unsigned bound = 3;
  unsigned q_max = 1;
  bool no_sigma = false;
};

struct Script {
  std::uint64_t seed = 0;
  std::string omega = "omega";
  std::vector<std::string> reals;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::map<std::string, ParamVariety> varieties;
  std::vector<Step> steps;
};

/// {"seed", "omega", "indeterminates": {"real": [...], "pairs": [[a, b], ...]},
///  "varieties": {name: spec | "catalog-name" | {"catalog": name}},
///  "steps": [{"op": "Domain", "alpha": "t", "parity": "real"}, ...]}
/// Throws ParseError on malformed input or an undeclared variety.
Script parse_script(const nlohmann::json& j);
Script load_script(const std::string& path);
nlohmann::json to_json(const Script& s);

/// The involution and base state a script starts from.
EFieldState initial_state(const Script& s);

struct StepResult {
  EFieldState state;
  nlohmann::json certificate;
  bool ok() const { return certificate.value("ok", false); }
};

/// Every operation returns the new state together with its certificate and
/// appends the certificate to the state's history. The input is unchanged.
StepResult op_base(const EFieldState& s);
StepResult op_domain(const EFieldState& s, const RatExpr& alpha, Parity parity);
StepResult op_image(const EFieldState& s, const RatExpr& beta, Parity parity);
StepResult op_sol(const EFieldState& s, const ParamVariety& v, bool no_sigma = false, unsigned bound = 3);
StepResult op_roots(const EFieldState& s, const ParamVariety& v, unsigned q_max, bool no_sigma = false,
                    unsigned bound = 3);
StepResult op_audit(const EFieldState& s);

struct RunReport {
  std::uint64_t seed = 0;
  std::vector<nlohmann::json> certificates;  // base first
  efield::AuditReport final_audit;
  bool ok = true;
  std::optional<nlohmann::json> failure;
  std::vector<double> step_ms;  // wall clock per certificate; not part of to_json
};

struct RunResult {
  RunReport report;
  EFieldState state;
};

/// Runs the steps in order, stopping at the first red certificate or error.
RunResult run_script(const Script& script);

/// Deterministic part of the report, including the final state.
nlohmann::json to_json(const RunReport& r, const EFieldState& final_state);
nlohmann::json timing_json(const RunReport& r);

}  // namespace pexp::engine
