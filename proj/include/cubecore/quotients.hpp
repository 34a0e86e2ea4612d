#pragma once

#include "cubecore/cube_graph.hpp"

#include <vector>

namespace cubecore {

inline constexpr WallId kNoWall = ~WallId{0};

struct RestrictionQuotient {
  std::vector<WallId> kept;               // source walls, sorted
  CubeGraph quotient;
  std::vector<VertexId> projection;       // source vertex -> quotient vertex
  std::vector<WallId> source_wall;        // quotient wall -> source wall
  std::vector<WallId> quotient_wall_of;   // source wall -> quotient wall or kNoWall
};

/// Cube complex dual to the walls in `kept`. Quotient vertices are the
/// distinct side patterns on the kept walls, named after their first source
/// vertex and ordered by it.
RestrictionQuotient restriction_quotient(const CubeGraph& x, std::vector<WallId> kept);

/// Restriction quotient onto the walls crossing w.
RestrictionQuotient hyperplane_complex(const CubeGraph& x, WallId w);

}  // namespace cubecore

#include "cubecore/group.hpp"

#include <memory>
#include <string>

namespace cubecore {

enum class WallType { essential, half_essential, trivial };
std::string to_string(WallType t);

struct WallClass {
  WallId wall = 0;
  WallType type = WallType::trivial;
  bool deep[2] = {false, false};
  /// Largest wall-distance of an interior / frontier witness on each side,
  /// -1 if there is none.
  int reach_interior[2] = {-1, -1};
  int reach_frontier[2] = {-1, -1};
};

struct Classification {
  int depth = 0;
  /// Complex has a frontier, so depth means "escaping through the frontier".
  bool window_relative = false;
  VertexSet witnesses;
  std::vector<WallClass> walls;

  std::vector<WallId> of_type(WallType t) const;
};

/// Orbit of the basepoint under the generators' partial maps, or every
/// vertex when the group has no generators.
VertexSet orbit_witnesses(const GroupModel& g);

/// Side h of a wall is deep when:
///  - on a complex with frontier: some frontier witness in h lies farther
///    from the wall than every interior witness in h;
///  - otherwise: some witness in h has wall-distance >= depth.
Classification classify_walls(const GroupModel& g, int depth);
WallClass classify_wall(const GroupModel& g, WallId w, int depth);

/// Restriction quotient onto the essential walls.
RestrictionQuotient essential_core(const GroupModel& g, int depth);
RestrictionQuotient essential_core(const GroupModel& g, const Classification& c);

struct OrbitQuotient {
  std::vector<WallId> orbit;
  /// Every generator image of every orbit wall was resolved.
  bool closed = false;
  /// "finite" when closed, "window-truncated" otherwise.
  std::string status;
  RestrictionQuotient quotient;
};
OrbitQuotient orbit_quotient(const GroupModel& g, WallId w);
/// Partition of the walls into orbits under the generators (resolved images only).
std::vector<std::vector<WallId>> wall_orbits(const GroupModel& g);

struct Subcomplex {
  CubeGraph graph;
  std::vector<VertexId> to_parent;  // vertex of graph -> vertex of parent
};
/// Induced subgraph on a convex vertex set, names and frontier inherited.
Subcomplex induced_subcomplex(const CubeGraph& x, const VertexSet& s);

/// Generators restricted to a subcomplex (images outside it dropped).
std::unique_ptr<GroupModel> restrict_group(const GroupModel& g, const Subcomplex& y);

struct PruneResult {
  /// Nested vertex sets of the original complex, starting with all vertices.
  std::vector<VertexSet> chain;
  std::vector<std::string> log;
  bool inconclusive = false;
  std::string reason;
  bool window_relative = false;
  /// Classification of the final stage (in its own wall ids).
  Classification final_classification;
  std::shared_ptr<Subcomplex> final_stage;
  std::shared_ptr<GroupModel> final_group;
};
PruneResult prune(const GroupModel& g, int depth, int max_rounds = 64);

}  // namespace cubecore
