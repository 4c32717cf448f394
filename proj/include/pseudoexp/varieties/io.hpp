#pragma once

#include <json.hpp>
#include <string>

#include "pseudoexp/varieties/variety.hpp"

namespace pexp::varieties {

/// {name, n, params[], additive[], multiplicative[], equations[]?}
VarietySpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const VarietySpec& s);
ParamVariety load_variety(const std::string& path);

nlohmann::json to_json(const IntMat& m);
nlohmann::json to_json(const ParamVariety& v);
nlohmann::json to_json(const Flag& f);
nlohmann::json to_json(const field::RelationLattice& l);
nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const Division& d);
nlohmann::json to_json(const Realization& r);
nlohmann::json to_json(const RestrictionReport& r);

}  // namespace pexp::varieties
