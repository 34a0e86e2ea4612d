#pragma once

#include "cubecore/cube_graph.hpp"
#include "cubecore/group.hpp"
#include "cubecore/quotients.hpp"
#include "cubecore/walls.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cubecore {

/// Vertices of minimal displacement d(v, γv) over the domain of γ.
struct Axis {
  int displacement = -1;  // -1: empty domain
  VertexSet vertices;
};
Axis combinatorial_axis(const GroupModel& g, const Word& gamma);

/// γ^n h ⊊ h with n != 0 (negative n uses the inverse). `witness` lies in h
/// but not in the image.
struct SkewerCert {
  Word element;
  int n = 1;
  Halfspace h;
  Halfspace image;
  VertexId witness = 0;
};
struct SkewerResult {
  std::optional<SkewerCert> cert;
  bool inconclusive = false;  // some power left the domain before a certificate
  int n_reached = 0;
};
SkewerResult skewer_test(const GroupModel& g, const Word& gamma, WallId w, int n_max);

enum class WallBehaviour { elliptic, skewers, parallel, peripheral };
std::string to_string(WallBehaviour b);
struct WallBehaviourReport {
  WallBehaviour kind = WallBehaviour::peripheral;
  int displacement = 0;
  std::optional<SkewerCert> skewer;
  std::optional<int> stabilizing_power;  // parallel: γ^n fixes the wall
  std::optional<int> disjoint_power;     // peripheral: γ^n moves the wall off itself
  bool window_relative = false;
};
WallBehaviourReport classify_vs_wall(const GroupModel& g, const Word& gamma, WallId w, int n_max = 8);

/// h* ⊊ γh. `witness` lies in h ∩ γh.
struct FlipCert {
  Word element;
  Halfspace h;
  Halfspace image;
  VertexId witness = 0;
};
/// First γ of the word ball in shortlex order.
std::optional<FlipCert> find_flip(const GroupModel& g, Halfspace h, int word_radius);

/// γh ⊊ k ⊊ h. `witness` lies in k but not in γh.
struct DoubleSkewerCert {
  Word element;
  Halfspace k;
  Halfspace h;
  Halfspace image;
  VertexId witness = 0;
  std::string method;  // "two-flip" or "direct"
  std::optional<FlipCert> flip_g;  // flips k
  std::optional<FlipCert> flip_a;  // flips g.h*
};
struct DoubleSkewerResult {
  std::optional<DoubleSkewerCert> cert;
  std::vector<std::string> log;
};
DoubleSkewerResult double_skewer(const GroupModel& g, Halfspace k, Halfspace h, int word_radius);

/// inner ⊊ outer with strongly separated walls and outer ⊊ γ^n inner.
struct ContractingCert {
  Word element;
  int n = 1;
  Halfspace inner;
  Halfspace outer;
  Halfspace image;
  VertexId witness = 0;  // in the image but not in outer
};
struct ContractingResult {
  std::optional<ContractingCert> cert;
  std::string reason;
  std::vector<std::string> log;
};
/// Given element: scans nested strongly separated pairs skewered by γ^n, n <= n_max.
ContractingResult contracting_certificate(const GroupModel& g, const Word& gamma, int n_max);
/// Through a half-space: strongly separated pair around h, element by double skewering.
ContractingResult contracting_certificate(const GroupModel& g, Halfspace h, int word_radius);
/// First half-space (by index) admitting the above.
ContractingResult contracting_certificate(const GroupModel& g, int word_radius);

struct ContractionProfile {
  bool inconclusive = false;
  std::string reason;
  VertexId p0 = 0;
  int period = 0;             // N = d(p0, γ^n p0)
  int orbit_walls = 0;
  int triples = 0;
  std::size_t crossing_points = 0;
  int max_axis_distance = 0;  // over crossing points of the middle wall
  bool bound_holds = false;   // max_axis_distance <= 2N
};
ContractionProfile contraction_profile(const GroupModel& g, const ContractingCert& c);

struct SchottkyCert {
  std::array<Halfspace, 3> triple;
  FlipCert flip;
  std::array<Halfspace, 4> quadruple;
  /// first.element maps quadruple[1]* into quadruple[0], second likewise for 3, 2.
  DoubleSkewerCert first, second;
};
struct SchottkyResult {
  std::optional<SchottkyCert> cert;
  std::string stage;  // failing stage when absent
  std::vector<std::string> log;
};
SchottkyResult schottky_pair(const GroupModel& g, int word_radius);

struct OrbitWitness {
  std::vector<WallId> orbit;
  ContractingCert cert;
};
struct RankRigidityReport {
  std::string outcome;  // product | contracting | bounded core | inconclusive
  std::string stage;
  std::vector<std::string> log;
  int prune_rounds = 0;
  std::size_t core_vertices = 0;
  /// true when the core is the input complex itself (certificates refer to it)
  bool core_is_input = false;
  std::shared_ptr<PruneResult> pruned;
  std::shared_ptr<RestrictionQuotient> core;  // unset when core_is_input
  std::shared_ptr<GroupModel> core_group;
  Decomposition decomposition;
  std::vector<OrbitWitness> witnesses;
  bool window_relative = false;
};
RankRigidityReport rank_rigidity(const GroupModel& g, int word_radius, int depth);

struct RegularResult {
  std::optional<Word> element;
  std::vector<ContractingCert> per_factor;
  bool generators_preserve_factors = true;
  std::size_t words_tried = 0;
  std::string reason;
  std::shared_ptr<Decomposition> decomposition;
  /// Induced action on each factor quotient; per_factor certificates refer to these.
  std::vector<std::shared_ptr<GroupModel>> factor_groups;
};
RegularResult regular_element(const GroupModel& g, int word_radius, int n_max = 4);

struct EuclideanFactor {
  std::vector<WallId> walls;
  bool r_like = false;
  std::string reason;
  std::optional<FacingTriple> triple;  // in factor wall ids
};
/// One entry per irreducible factor; empty for a single vertex.
std::vector<EuclideanFactor> euclidean_like_decomposition(const GroupModel& g);

}  // namespace cubecore
