#include "pseudoexp/varieties/catalog.hpp"

#include "pseudoexp/errors.hpp"

namespace pexp::varieties {

std::vector<std::string> catalog_names() { return {"graph", "line", "square", "parabola-half", "graph2", "vmn"}; }

ParamVariety catalog(const std::string& name) {
  VarietySpec s;
  s.name = name;
  if (name == "graph") {
    s = {name, 1, {"u"}, {"u"}, {"u"}, {"w1 - z1"}};
  } else if (name == "line") {
    s = {name, 1, {"u"}, {"u"}, {"u + 1"}, {"w1 - z1 - 1"}};
  } else if (name == "square") {
    s = {name, 1, {"u"}, {"u"}, {"u^2"}, {"w1 - z1^2"}};
  } else if (name == "parabola-half") {
    s = {name, 1, {"u"}, {"u^2/2"}, {"u"}, {"w1^2 - 2*z1"}};
  } else if (name == "graph2") {
    s = {name, 2, {"u1", "u2"}, {"u1", "u2"}, {"u1", "u2"}, {"w1 - z1", "w2 - z2"}};
  } else if (name == "vmn") {
    s = {name, 2, {"s", "v"}, {"-t*s", "s"}, {"v", "1/v"}, {"z1 + t*z2", "w1*w2 - 1"}};
  } else {
    throw ConfigError("unknown catalog variety '" + name + "'");
  }
  return make_variety(s);
}

}  // namespace pexp::varieties
