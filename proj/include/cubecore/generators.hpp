#pragma once

#include "cubecore/cube_graph.hpp"

#include <string>
#include <vector>

namespace cubecore::gen {

// Raw graphs. Vertex names: "(x,y)" for grids, bit strings for cubes,
// "o", "o.0", "o.0.1", ... for trees, "a|b" for products.
SimpleGraph cube_graph(int n);
SimpleGraph grid_graph(int w, int h);
SimpleGraph path_graph(int length);
SimpleGraph star_graph(int leaves);
SimpleGraph tree_graph(int valence, int depth);
SimpleGraph cycle_graph(int n);
SimpleGraph complete_graph(int n);
SimpleGraph product_graph(const SimpleGraph& a, const SimpleGraph& b);

CubeGraph cube(int n);
/// w squares by h squares, (w+1)(h+1) vertices.
CubeGraph grid(int w, int h);
/// [0,n]^2 with frontier on the far edges x = n and y = n.
CubeGraph quarter_grid(int n);
CubeGraph path(int length);
CubeGraph star(int leaves);
/// Ball of radius `depth` in the regular tree of the given valence.
CubeGraph tree(int valence, int depth);
CubeGraph product(const CubeGraph& a, const CubeGraph& b);

/// Parses "cube(3)", "grid(3,2)", "quarter_grid(12)", "tree(3,2)", "path(4)",
/// "star(3)". product() needs files and is handled by the CLI.
CubeGraph generate(const std::string& spec);

}  // namespace cubecore::gen
