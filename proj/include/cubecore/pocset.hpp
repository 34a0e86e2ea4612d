#pragma once

#include "cubecore/cube_graph.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace cubecore {

using ElementId = std::uint32_t;
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

/// Finite pocset. Elements come in pairs: 2i and 2i+1 are involutes of each
/// other, so star(x) = x ^ 1. `above[x]` holds every y with x < y.
class Pocset {
 public:
  Pocset() = default;
  /// `pairs` gives the names of each pair; `less` lists generating relations
  /// a < b. The order is closed under the involution (a < b gives b* < a*)
  /// and transitively. The result may still be invalid; see verify_pocset.
  static Pocset from_relations(const std::vector<std::pair<std::string, std::string>>& pairs,
                               const std::vector<std::pair<ElementId, ElementId>>& less);
  /// Takes `above` as given, with no closure. Used to test the validator.
  static Pocset from_raw(std::vector<std::string> names, std::vector<ElementSet> above);

  std::size_t size() const { return names_.size(); }
  std::size_t pair_count() const { return names_.size() / 2; }
  static ElementId star(ElementId x) { return x ^ 1u; }
  const std::string& name(ElementId x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<ElementId> find(const std::string& name) const;

  bool less(ElementId a, ElementId b) const { return above_[a].test(b); }
  bool comparable(ElementId a, ElementId b) const { return less(a, b) || less(b, a); }
  /// Pairs i and j are transverse when no element of one is comparable with
  /// an element of the other.
  bool transverse(std::size_t i, std::size_t j) const;
  const ElementSet& above(ElementId x) const { return above_[x]; }
  /// Generating relations (the Hasse diagram), sorted.
  std::vector<std::pair<ElementId, ElementId>> cover_relations() const;

 private:
  std::vector<std::string> names_;
  std::vector<ElementSet> above_;
};

struct PocsetReport {
  bool valid = false;
  std::string reason;
  std::optional<std::pair<ElementId, ElementId>> offending;
  int width = 0;
  /// Largest |{c : a <= c <= b}| over comparable a <= b (1 if unordered).
  int max_interval = 0;
};

PocsetReport verify_pocset(const Pocset& p);
int pocset_width(const Pocset& p);
/// A maximum family of pairwise transverse pairs (pair indices).
std::vector<std::uint32_t> max_transverse_family(const Pocset& p);

struct DualOptions {
  std::size_t max_vertices = std::size_t{1} << 16;
  int max_width = 16;
};

/// Ultrafilters as element sets, in lexicographic order of the choice string
/// (pair i picks 2i before 2i+1).
std::vector<ElementSet> ultrafilters(const Pocset& p, const DualOptions& opts = {});

/// Vertex names are choice strings: character i is '0' if the ultrafilter
/// contains element 2i, '1' otherwise. The empty pocset gives one vertex "()".
CubeGraph dual_complex(const Pocset& p, const DualOptions& opts = {});

/// Half-spaces of X. Wall w gives elements 2w (side 0, "h<w>") and 2w+1
/// (side 1, "h<w>*"); the order is proper inclusion.
Pocset halfspace_pocset(const CubeGraph& x);

/// Element bijection f: P -> Q commuting with the involution and preserving
/// and reflecting the order; nullopt if none exists.
std::optional<std::vector<ElementId>> pocset_isomorphism(const Pocset& p, const Pocset& q);
bool is_pocset_isomorphism(const Pocset& p, const Pocset& q, const std::vector<ElementId>& f);

/// Seeded random valid pocset with the given number of pairs and width at
/// most `max_width`. Relations are added one at a time and kept only when
/// the closure stays valid.
Pocset random_pocset(std::mt19937_64& rng, std::size_t pairs, int max_width);

}  // namespace cubecore
