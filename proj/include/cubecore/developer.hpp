#pragma once

#include "cubecore/cube_graph.hpp"
#include "cubecore/group.hpp"

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cubecore {

/// Oriented edge end: 2e traverses edge e from `from` to `to`, 2e+1 backwards.
using Code = std::uint32_t;
using CoverId = std::uint32_t;

struct BaseEdge {
  std::string name;
  VertexId from = 0, to = 0;
};

/// k-cube with corners in binary-coordinate order; `edges` holds, for each
/// corner c and bit b with bit b of c clear (c ascending, then b ascending),
/// the code of the cube edge from corner c to corner c | (1 << b).
struct BaseCube {
  int dim = 0;
  std::vector<VertexId> corners;
  std::vector<Code> edges;
};

/// Finite cube complex given by vertices, oriented edges, squares (closed
/// boundary words of four codes) and optional higher cubes.
struct BaseComplex {
  std::vector<std::string> vertices;
  std::vector<BaseEdge> edges;
  std::vector<std::array<Code, 4>> squares;
  std::vector<BaseCube> cubes;

  VertexId start(Code c) const { return (c & 1) ? edges[c / 2].to : edges[c / 2].from; }
  VertexId target(Code c) const { return (c & 1) ? edges[c / 2].from : edges[c / 2].to; }
  static Code rev(Code c) { return c ^ 1u; }
  /// "a" or "-a".
  std::string code_name(Code c) const;
  Code parse_code(const std::string& signed_name) const;
  std::optional<VertexId> find_vertex(const std::string& name) const;
};

struct NpcReport {
  bool valid = false;
  std::string reason;
  VertexId vertex = 0;
  /// Offending link simplex (edge ends at `vertex`).
  std::vector<Code> simplex;
};

/// Builds each vertex link (vertices = edge ends, edges = square corners)
/// and checks that it is a simplicial flag complex whose higher simplices
/// are exactly the declared cube corners.
NpcReport check_nonpositively_curved(const BaseComplex& b);

struct Window {
  CubeGraph graph;
  std::vector<CoverId> cover_of;  // window vertex -> cover vertex
  std::unordered_map<CoverId, VertexId> index;
  VertexId basepoint = 0;
  int radius = 0;
  int requested_radius = 0;
  bool truncated = false;
  std::vector<std::string> log;
  /// window edges with the code from the first endpoint to the second
  std::vector<std::vector<std::pair<VertexId, Code>>> steps;

  std::optional<VertexId> find(CoverId c) const {
    auto it = index.find(c);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

/// Lazily developed universal cover of an NPC cube complex. A cover vertex
/// is identified with its canonical parent (the neighbour across its
/// smallest descending edge end) and the edge end used to reach it.
class Developer {
 public:
  Developer(BaseComplex base, VertexId basepoint);

  const BaseComplex& base() const { return base_; }
  CoverId root() const { return 0; }
  std::size_t cover_size() const { return verts_.size(); }
  VertexId base_vertex(CoverId v) const { return verts_[v].base; }
  int level(CoverId v) const { return verts_[v].level; }
  const std::vector<Code>& out_codes(VertexId base_vertex) const { return out_[base_vertex]; }

  CoverId step(CoverId v, Code c);
  CoverId walk(CoverId v, const std::vector<Code>& path);
  /// Edge ends along canonical parents from the root.
  std::vector<Code> canonical_word(CoverId v) const;
  std::string vertex_name(CoverId v) const;

  /// Convex hull of the radius-R ball around the root. If the ball would
  /// exceed `budget` vertices the radius is reduced and the window is marked
  /// truncated.
  Window window(int radius, std::size_t budget = 250000);

  /// Deck transformation taking the root to the end of the lifted loop,
  /// restricted to window vertices whose image stays in the window.
  PartialMap deck_transformation(const Window& w, const std::vector<Code>& loop);
  /// Throws ValidationError unless `loop` is a closed edge path at the basepoint.
  void check_loop(const std::vector<Code>& loop) const;

 private:
  struct Vertex {
    VertexId base;
    int level;
    std::vector<Code> down;  // sorted
    CoverId parent;
    Code parent_code;        // code at parent leading here
    std::vector<CoverId> nbr;
  };
  static constexpr CoverId kNone = ~CoverId{0};

  CoverId up_step(CoverId y, Code g);
  CoverId down_step(CoverId x, Code e);
  CoverId& cache(CoverId v, Code c) { return verts_[v].nbr[pos_[c]]; }
  bool is_down(CoverId v, Code c) const;
  const std::pair<Code, Code>* corner(Code f, Code g) const;

  BaseComplex base_;
  VertexId basepoint_;
  std::vector<std::vector<Code>> out_;
  std::vector<std::uint32_t> pos_;
  std::unordered_map<std::uint64_t, std::pair<Code, Code>> corners_;
  std::unordered_map<std::uint64_t, CoverId> children_;
  std::vector<Vertex> verts_;
};

/// Group generated by loops at the basepoint acting on a developed window.
/// Words are realized as deck transformations of the concatenated loop.
class DeckGroup : public GroupModel {
 public:
  DeckGroup(Developer& dev, const Window& w, std::vector<std::string> names, std::vector<std::vector<Code>> loops);
  const CubeGraph& space() const override { return w_->graph; }
  std::size_t generator_count() const override { return names_.size(); }
  const std::string& generator_name(std::size_t i) const override { return names_[i]; }
  bool exact() const override { return false; }
  VertexId apply(const Word& w, VertexId v) const override;
  std::vector<Code> loop_of(const Word& w) const;
  const Window& window() const { return *w_; }

 protected:
  PartialMap compute(const Word& w) const override;

 private:
  Developer* dev_;
  const Window* w_;
  std::vector<std::string> names_;
  std::vector<std::vector<Code>> loops_;
};

}  // namespace cubecore

namespace cubecore {

/// Deck group of a one-vertex base generated by its edge loops, in edge order.
std::unique_ptr<DeckGroup> edge_loop_group(Developer& dev, const Window& w);

}  // namespace cubecore
