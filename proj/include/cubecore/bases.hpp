#pragma once

#include "cubecore/developer.hpp"

#include <string>

namespace cubecore::bases {

/// One vertex "v0" and one loop per name.
BaseComplex wedge(const std::vector<std::string>& loops);
/// One vertex, loops a and b, square a.b.-a.-b.
BaseComplex torus();
/// One vertex, loops a, b, c, three squares, and the 3-cube when `filled`.
BaseComplex three_torus(bool filled);
/// Product of the wedge on `left` with the wedge on `right`: one square per pair.
BaseComplex wedge_product(const std::vector<std::string>& left, const std::vector<std::string>& right);

/// "line", "wedge2", "torus", "t3", "t3-hollow", "f2xz", "txt".
BaseComplex builtin(const std::string& name);

}  // namespace cubecore::bases
