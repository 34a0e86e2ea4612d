#pragma once

#include "cubecore/cube_graph.hpp"
#include "cubecore/quotients.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cubecore {

struct Decomposition {
  /// Wall classes, each sorted, ordered by smallest wall id. Empty for a
  /// wall-free complex, which counts as irreducible.
  std::vector<std::vector<WallId>> factors;
  std::vector<RestrictionQuotient> factor_quotients;
  /// coords[v][i] = projection of v to factor i.
  std::vector<std::vector<VertexId>> coords;
  /// The coordinate map was checked to be a graph isomorphism onto the
  /// Cartesian product of the factor graphs.
  bool product_verified = false;
  std::string verification_note;
};

Decomposition decompose(const CubeGraph& x);
bool is_irreducible(const CubeGraph& x);
/// Checks that `coords` is an isomorphism X -> product of the factor graphs.
bool verify_product_witness(const CubeGraph& x, const Decomposition& d, std::string* why = nullptr);

/// Walls that do not cross and share no crossing wall. Throws on w1 == w2.
bool strongly_separated(const CubeGraph& x, WallId w1, WallId w2);

struct SSPair {
  Halfspace inner;  // inner ⊊ h
  Halfspace outer;  // h ⊊ outer
};
/// Nested pair inner ⊊ h ⊊ outer with strongly separated walls. Candidates
/// are scanned by total carrier distance to h's wall, then by half-space index.
std::optional<SSPair> find_ss_pair_through(const CubeGraph& x, Halfspace h);

/// Carrier-to-carrier edge distance between two walls (0 if they cross or touch).
int wall_gap(const CubeGraph& x, WallId a, WallId b);

bool halfspaces_disjoint(const CubeGraph& x, Halfspace a, Halfspace b);
/// a ⊊ b as vertex sets.
bool halfspace_properly_contains(const CubeGraph& x, Halfspace outer, Halfspace inner);

struct FacingTriple {
  std::array<Halfspace, 3> halfspaces;
};
/// Lexicographically smallest pairwise-disjoint triple by half-space index.
std::optional<FacingTriple> facing_triple(const CubeGraph& x);

/// Ramsey numbers for 1 <= k, m <= 5 (R(5,5) as an upper bound).
int ramsey_number(int k, int m);

struct Pencil {
  /// Decreasing chain along the geodesic: each half-space contains the
  /// path's end and properly contains the next.
  std::vector<Halfspace> chain;
};
struct PencilResult {
  std::optional<Pencil> pencil;
  std::size_t walls_crossed = 0;
  int ramsey_threshold = 0;  // R(k, dim+1), 0 when outside the table
  bool guaranteed = false;   // walls_crossed >= ramsey_threshold
};
/// Throws ValidationError for a non-adjacent step or a repeated wall.
PencilResult extract_pencil(const CubeGraph& x, const std::vector<VertexId>& geodesic, int k);

struct HellyResult {
  std::optional<VertexId> point;
  std::optional<std::pair<Halfspace, Halfspace>> disjoint_pair;
};
HellyResult helly_point(const CubeGraph& x, const std::vector<Halfspace>& family);

/// Quadrants indexed 2*s1 + s2 for sides s1 of w1 and s2 of w2.
std::array<VertexSet, 4> sectors(const CubeGraph& x, WallId w1, WallId w2);
/// Walls whose carrier lies inside the given quadrant.
std::vector<WallId> walls_in_sector(const CubeGraph& x, WallId w1, WallId w2, int sector);

VertexSet carrier(const CubeGraph& x, WallId w);

}  // namespace cubecore
