#pragma once

#include "cubecore/cube_graph.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cubecore {

inline constexpr VertexId kUndefined = ~VertexId{0};

/// Letters: 2i is generator i, 2i+1 its inverse. Shortlex order on freely
/// reduced words therefore runs a, a^-1, b, b^-1, ...
struct Word {
  std::vector<std::uint32_t> letters;
  auto operator<=>(const Word&) const = default;
  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  Word inverse() const;
  Word operator*(const Word& other) const;
  static Word letter(std::uint32_t l) { return Word{{l}}; }
};

/// Vertex map with kUndefined outside its domain.
struct PartialMap {
  std::vector<VertexId> image;
  bool total() const;
  std::size_t domain_size() const;
  VertexId operator()(VertexId v) const { return image[v]; }
  bool defined(VertexId v) const { return image[v] != kUndefined; }
};

PartialMap compose(const PartialMap& outer, const PartialMap& inner);

/// A group acting on a fixed CubeGraph through named generators. Words are
/// realized as partial maps (total on finite complexes).
class GroupModel {
 public:
  virtual ~GroupModel() = default;
  virtual const CubeGraph& space() const = 0;
  virtual std::size_t generator_count() const = 0;
  virtual const std::string& generator_name(std::size_t i) const = 0;
  /// True when every realization is a total map (finite complex, no window).
  virtual bool exact() const = 0;
  /// Cached.
  const PartialMap& realize(const Word& w) const;
  /// Image of one vertex (kUndefined outside the domain) without building
  /// or caching the whole map.
  virtual VertexId apply(const Word& w, VertexId v) const { return realize(w)(v); }
  std::string format(const Word& w) const;
  /// Parses "a.b^-1.a" / "a b-1" style words; "e" or "" is the identity.
  Word parse(const std::string& text) const;

 protected:
  virtual PartialMap compute(const Word& w) const = 0;

 private:
  mutable std::map<Word, PartialMap> cache_;
};

/// Generators given as explicit (possibly partial) vertex maps.
class PermutationGroup : public GroupModel {
 public:
  PermutationGroup(const CubeGraph& x, std::vector<std::string> names, std::vector<PartialMap> maps);
  const CubeGraph& space() const override { return *x_; }
  std::size_t generator_count() const override { return names_.size(); }
  const std::string& generator_name(std::size_t i) const override { return names_[i]; }
  bool exact() const override { return exact_; }
  VertexId apply(const Word& w, VertexId v) const override;

 protected:
  PartialMap compute(const Word& w) const override;

 private:
  const CubeGraph* x_;
  std::vector<std::string> names_;
  std::vector<PartialMap> maps_;  // 2i forward, 2i+1 inverse
  bool exact_ = true;
};

/// Trivial group with no generators.
std::unique_ptr<GroupModel> trivial_group(const CubeGraph& x);

/// Action induced on a restriction quotient: the image of a quotient vertex
/// is the projection of the image of any preimage. Vertices whose preimages
/// disagree are left undefined and counted in conflicts().
class InducedGroup : public GroupModel {
 public:
  InducedGroup(const GroupModel& parent, const CubeGraph& quotient, std::vector<VertexId> projection);
  const CubeGraph& space() const override { return *q_; }
  std::size_t generator_count() const override { return parent_->generator_count(); }
  const std::string& generator_name(std::size_t i) const override { return parent_->generator_name(i); }
  bool exact() const override { return parent_->exact(); }
  /// Uses the first preimage with a defined image; conflicts are not checked.
  VertexId apply(const Word& w, VertexId v) const override;
  std::size_t conflicts(const Word& w) const;

 protected:
  PartialMap compute(const Word& w) const override;

 private:
  const GroupModel* parent_;
  const CubeGraph* q_;
  std::vector<VertexId> projection_;
  std::vector<std::vector<VertexId>> fibers_;
  mutable std::map<Word, std::size_t> conflicts_;
};

/// Freely reduced words of length <= radius in shortlex order.
std::vector<Word> word_ball(std::size_t generators, int radius);

struct AutomorphismReport {
  bool valid = false;
  std::string reason;
  std::optional<std::pair<VertexId, VertexId>> offending_edge;
  /// wall -> image wall (kNoWall equivalent ~0 when unresolved)
  std::vector<WallId> wall_image;
};

/// Injective, adjacency preserving and reflecting on its domain, and the
/// induced edge map sends Theta-classes to Theta-classes injectively.
AutomorphismReport verify_automorphism(const CubeGraph& x, const PartialMap& f);

}  // namespace cubecore

namespace cubecore {

/// Image of a wall under a partial map, resolved through any dual edge with
/// both endpoints in the domain.
std::optional<WallId> image_wall(const CubeGraph& x, const PartialMap& f, WallId w);
/// Image half-space (wall image plus the side containing the image of an
/// inside endpoint).
std::optional<Halfspace> image_halfspace(const CubeGraph& x, const PartialMap& f, Halfspace h);
/// Same through GroupModel::apply, for one-off words.
std::optional<Halfspace> image_halfspace(const GroupModel& g, const Word& w, Halfspace h);
/// Word repeated n times (n >= 0), freely reduced.
Word power(const Word& w, int n);
/// Basepoint: provenance basepoint if set, else vertex 0.
VertexId basepoint_of(const CubeGraph& x);

}  // namespace cubecore
