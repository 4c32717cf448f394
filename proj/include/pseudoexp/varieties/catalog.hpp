#pragma once

#include <string>
#include <vector>

#include "pseudoexp/varieties/variety.hpp"

namespace pexp::varieties {

/// Named fixture varieties: graph {z=u, w=u}, line {z=u, w=u+1},
/// square {z=u, w=u^2}, parabola-half {z=u^2/2, w=u}, graph2 (graph x graph)
/// and vmn, the kernel-line/subtorus variety {z1 + t z2 = 0, w1 w2 = 1} with t
/// a constant.
std::vector<std::string> catalog_names();
/// Throws ConfigError for an unknown name.
ParamVariety catalog(const std::string& name);

}  // namespace pexp::varieties
