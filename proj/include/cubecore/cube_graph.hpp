#pragma once

#include <boost/dynamic_bitset.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cubecore {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using WallId = std::uint32_t;
using VertexSet = boost::dynamic_bitset<std::uint64_t>;

inline constexpr int kUnreachable = -1;

/// One side of a wall. `side` is 0 or 1; side 0 contains the lower endpoint
/// of the wall's first dual edge.
struct Halfspace {
  WallId wall = 0;
  std::uint8_t side = 0;

  Halfspace complement() const { return {wall, static_cast<std::uint8_t>(1 - side)}; }
  std::uint32_t index() const { return 2 * wall + side; }
  static Halfspace from_index(std::uint32_t i) {
    return {i / 2, static_cast<std::uint8_t>(i % 2)};
  }
  auto operator<=>(const Halfspace&) const = default;
};

/// Where a graph came from. Windows carry their basepoint and radius.
struct Provenance {
  std::string kind = "explicit";  // explicit | generator | dual | quotient | window | product
  std::string detail;
  std::optional<VertexId> basepoint;
  std::optional<int> radius;
};

/// Plain simple graph with named vertices; the raw input of verify_median.
struct SimpleGraph {
  std::vector<std::string> names;
  std::vector<std::pair<VertexId, VertexId>> edges;

  std::size_t vertex_count() const { return names.size(); }
  std::vector<std::vector<VertexId>> adjacency() const;
};

struct Wall {
  WallId id = 0;
  std::vector<EdgeId> dual_edges;
  VertexSet side[2];
};

/// The 1-skeleton of a finite CAT(0) cube complex (or a convex window of
/// one) together with its walls. Cubes are implicit. Immutable once built.
struct BuildOptions {
  bool verify = true;
  std::uint64_t seed = 0x5eed;
};

class CubeGraph {
 public:

  /// Verifies the median property (see verify_median) and computes walls.
  /// Throws ValidationError if the graph is not the 1-skeleton of a CAT(0)
  /// cube complex.
  static CubeGraph build(const SimpleGraph& g, Provenance prov = {},
                         VertexSet frontier = {}, BuildOptions opts = {});
  static CubeGraph build(const SimpleGraph& g, Provenance prov, VertexSet frontier,
                         bool verify) {
    BuildOptions o;
    o.verify = verify;
    return build(g, std::move(prov), std::move(frontier), o);
  }

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t wall_count() const { return walls_.size(); }

  const std::string& name(VertexId v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<VertexId> find(const std::string& name) const;

  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
  const std::pair<VertexId, VertexId>& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }
  std::optional<EdgeId> edge_between(VertexId u, VertexId v) const;
  bool adjacent(VertexId u, VertexId v) const { return edge_between(u, v).has_value(); }

  const std::vector<Wall>& walls() const { return walls_; }
  const Wall& wall(WallId w) const { return walls_[w]; }
  WallId wall_of_edge(EdgeId e) const { return wall_of_edge_[e]; }
  const VertexSet& halfspace(Halfspace h) const { return walls_[h.wall].side[h.side]; }
  std::uint8_t side_of(VertexId v, WallId w) const { return walls_[w].side[1].test(v) ? 1 : 0; }
  Halfspace halfspace_containing(VertexId v, WallId w) const { return {w, side_of(v, w)}; }
  bool crosses(WallId a, WallId b) const { return crossing_[a].test(b); }
  const boost::dynamic_bitset<std::uint64_t>& crossing_row(WallId w) const { return crossing_[w]; }

  const VertexSet& frontier() const { return frontier_; }
  bool has_frontier() const { return frontier_.any(); }
  const Provenance& provenance() const { return prov_; }
  VertexSet empty_set() const { return VertexSet(vertex_count()); }
  VertexSet full_set() const { return ~empty_set(); }

  /// BFS distances from v (kUnreachable never occurs in a valid CubeGraph).
  std::vector<int> distances_from(VertexId v) const;
  /// BFS distances from a vertex set.
  std::vector<int> distances_from(const VertexSet& sources) const;

  SimpleGraph as_simple_graph() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> incident_;
  std::vector<WallId> wall_of_edge_;
  std::vector<Wall> walls_;
  std::vector<boost::dynamic_bitset<std::uint64_t>> crossing_;
  VertexSet frontier_;
  Provenance prov_;
};

// ---------------------------------------------------------------------------
// median_core operations

struct MedianReport {
  bool valid = false;
  bool exhaustive = false;
  std::size_t triples_checked = 0;
  std::string reason;
  std::optional<std::array<VertexId, 3>> violating_triple;
};

/// Exhaustive up to `exhaustive_limit` vertices, otherwise 10*|V| seeded
/// random triples.
MedianReport verify_median(const SimpleGraph& g, std::uint64_t seed = 0x5eed,
                           std::size_t exhaustive_limit = 300);

struct WallDecomposition {
  std::vector<std::pair<VertexId, VertexId>> edges;  // sorted (min, max)
  std::vector<WallId> wall_of_edge;
  std::size_t wall_count = 0;
};

/// Theta-classes of edges (opposite edges of 4-cycles, transitively closed).
WallDecomposition theta_classes(const SimpleGraph& g);

int l1_distance(const CubeGraph& x, VertexId a, VertexId b);
std::vector<WallId> separating_walls(const CubeGraph& x, VertexId a, VertexId b);
VertexId median(const CubeGraph& x, VertexId a, VertexId b, VertexId c);
VertexSet interval(const CubeGraph& x, VertexId a, VertexId b);
/// Intersection of all half-spaces containing `s` (s must be non-empty).
VertexSet convex_hull(const CubeGraph& x, const VertexSet& s);
bool is_convex(const CubeGraph& x, const VertexSet& s);
/// Maximum number of pairwise crossing walls.
int dimension(const CubeGraph& x);
/// Maximum clique of an undirected graph given by adjacency bitsets.
std::vector<std::uint32_t> max_clique(const std::vector<boost::dynamic_bitset<std::uint64_t>>& adj);

/// Distance from v to the carrier of wall w on v's side (0 on the carrier).
int wall_distance(const CubeGraph& x, VertexId v, WallId w);
/// wall_distance for all vertices at once.
std::vector<int> wall_distances(const CubeGraph& x, WallId w);

}  // namespace cubecore
