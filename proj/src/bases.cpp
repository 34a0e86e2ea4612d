#include "cubecore/bases.hpp"

#include "cubecore/errors.hpp"

namespace cubecore::bases {

BaseComplex wedge(const std::vector<std::string>& loops) {
  BaseComplex b;
  b.vertices = {"v0"};
  for (const auto& n : loops) b.edges.push_back({n, 0, 0});
  return b;
}

BaseComplex wedge_product(const std::vector<std::string>& left, const std::vector<std::string>& right) {
  std::vector<std::string> all = left;
  all.insert(all.end(), right.begin(), right.end());
  BaseComplex b = wedge(all);
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) {
      Code x = static_cast<Code>(2 * i), y = static_cast<Code>(2 * (left.size() + j));
      b.squares.push_back({x, y, BaseComplex::rev(x), BaseComplex::rev(y)});
    }
  return b;
}

BaseComplex torus() { return wedge_product({"a"}, {"b"}); }

BaseComplex three_torus(bool filled) {
  BaseComplex b = wedge({"a", "b", "c"});
  const Code a = 0, bb = 2, c = 4;
  b.squares = {{a, bb, 1, 3}, {a, c, 1, 5}, {bb, c, 3, 5}};
  if (filled) {
    BaseCube q;
    q.dim = 3;
    q.corners.assign(8, 0);
    // corner c ascending, bits with c's bit clear ascending
    for (std::size_t corner = 0; corner < 8; ++corner)
      for (int bit = 0; bit < 3; ++bit)
        if (!(corner & (std::size_t{1} << bit))) q.edges.push_back(static_cast<Code>(2 * bit));
    b.cubes.push_back(q);
  }
  return b;
}

BaseComplex builtin(const std::string& name) {
  if (name == "line") return wedge({"a"});
  if (name == "wedge2") return wedge({"a", "b"});
  if (name == "torus") return torus();
  if (name == "t3") return three_torus(true);
  if (name == "t3-hollow") return three_torus(false);
  if (name == "f2xz") return wedge_product({"a", "b"}, {"c"});
  if (name == "txt") return wedge_product({"a", "b"}, {"p", "q"});
  throw ValidationError("unknown builtin base '" + name + "'");
}

}  // namespace cubecore::bases
