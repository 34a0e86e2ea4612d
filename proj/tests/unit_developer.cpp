#include <doctest.h>

#include "cubecore/bases.hpp"
#include "cubecore/errors.hpp"
#include "cubecore/generators.hpp"
#include "oracles.hpp"

using namespace cubecore;

namespace {

std::vector<Code> loop(const BaseComplex& b, const std::vector<std::string>& names) {
  std::vector<Code> out;
  for (const auto& n : names) out.push_back(b.parse_code(n));
  return out;
}

// Ball of radius r in the 2k-regular tree, built independently.
SimpleGraph regular_tree_ball(int degree, int r) { return gen::tree_graph(degree, r); }

}  // namespace

TEST_CASE("nonpositive curvature check") {
  CHECK(check_nonpositively_curved(bases::wedge({"a", "b"})).valid);
  CHECK(check_nonpositively_curved(bases::torus()).valid);
  CHECK(check_nonpositively_curved(bases::three_torus(true)).valid);
  CHECK(check_nonpositively_curved(bases::builtin("txt")).valid);
  CHECK(check_nonpositively_curved(bases::builtin("f2xz")).valid);

  // the 2-skeleton of the 3-torus: octahedral link with empty triangles
  auto hollow = check_nonpositively_curved(bases::three_torus(false));
  CHECK_FALSE(hollow.valid);
  CHECK(hollow.simplex.size() == 3);
  CHECK(hollow.reason.find("not flag") != std::string::npos);
  // the offending triple is pairwise linked but spans no cube corner
  auto b = bases::three_torus(false);
  std::set<std::pair<Code, Code>> link;
  for (const auto& s : b.squares)
    for (int i = 0; i < 4; ++i) link.insert(std::minmax(BaseComplex::rev(s[(i + 3) % 4]), s[i]));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(link.count(std::minmax(hollow.simplex[i], hollow.simplex[j])));

  // the same square glued twice along a corner: double edge in the link
  auto dbl = bases::torus();
  dbl.squares.push_back(dbl.squares[0]);
  auto rd = check_nonpositively_curved(dbl);
  CHECK_FALSE(rd.valid);
  CHECK(rd.reason.find("double edge") != std::string::npos);

  // square a.a.-a.-a has a corner using the same edge end twice
  auto loopy = bases::wedge({"a"});
  loopy.squares.push_back({0, 0, 1, 1});
  CHECK_FALSE(check_nonpositively_curved(loopy).valid);

  CHECK_THROWS_AS(Developer(bases::three_torus(false), 0), ValidationError);
}

TEST_CASE("develop examples") {
  Developer wedge(bases::wedge({"a", "b"}), 0);
  auto w3 = wedge.window(3);
  CHECK(w3.graph.vertex_count() == 53);
  CHECK(oracle::isomorphic(w3.graph.as_simple_graph(), regular_tree_ball(4, 3)));
  CHECK(w3.graph.frontier().count() == 36);

  Developer line(bases::wedge({"a"}), 0);
  auto l5 = line.window(5);
  CHECK(l5.graph.vertex_count() == 11);
  CHECK(oracle::isomorphic(l5.graph.as_simple_graph(), gen::path_graph(10)));
  CHECK(l5.graph.frontier().count() == 2);

  Developer torus(bases::torus(), 0);
  auto t3 = torus.window(3);
  // hull of the diamond is the square [-3,3]^2
  CHECK(t3.graph.vertex_count() == 49);
  CHECK(oracle::isomorphic(t3.graph.as_simple_graph(), gen::grid_graph(6, 6)));
  CHECK(t3.graph.frontier().count() == 24);

  Developer t3c(bases::three_torus(true), 0);
  auto c2 = t3c.window(1);
  CHECK(c2.graph.vertex_count() == 27);
  CHECK(dimension(c2.graph) == 3);

  Developer txt(bases::builtin("txt"), 0);
  auto p1 = txt.window(1);
  CHECK(p1.graph.vertex_count() == 25);
  CHECK(oracle::isomorphic(p1.graph.as_simple_graph(), gen::product_graph(gen::star_graph(4), gen::star_graph(4))));
}

TEST_CASE("windows are interval-closed and named stably") {
  Developer f2z(bases::builtin("f2xz"), 0);
  auto w2 = f2z.window(2);
  auto w4 = f2z.window(4);
  const auto& x = w2.graph;
  for (VertexId a = 0; a < x.vertex_count(); ++a) {
    auto da = x.distances_from(a);
    for (VertexId b = a + 1; b < x.vertex_count(); ++b) {
      if (da[b] > 2) continue;
      // interval in the larger window stays inside the smaller one
      auto ia = *w4.graph.find(x.name(a)), ib = *w4.graph.find(x.name(b));
      auto iv = interval(w4.graph, ia, ib);
      for (auto v = iv.find_first(); v != iv.npos; v = iv.find_next(v))
        CHECK(x.find(w4.graph.name(static_cast<VertexId>(v))));
    }
  }
  // relative order of shared vertices is unchanged
  std::vector<std::string> shared;
  for (VertexId v = 0; v < w4.graph.vertex_count(); ++v)
    if (x.find(w4.graph.name(v))) shared.push_back(w4.graph.name(v));
  CHECK(shared == x.names());
  CHECK(is_convex(w4.graph, [&] {
    VertexSet s = w4.graph.empty_set();
    for (const auto& n : shared) s.set(*w4.graph.find(n));
    return s;
  }()));
}

TEST_CASE("budget truncation keeps an honest frontier") {
  Developer wedge(bases::wedge({"a", "b"}), 0);
  auto w = wedge.window(6, 100);
  CHECK(w.truncated);
  CHECK(w.radius == 3);
  CHECK(w.graph.vertex_count() == 53);
  CHECK(w.graph.frontier().count() == 36);
}

TEST_CASE("deck transformations") {
  Developer torus(bases::torus(), 0);
  auto w = torus.window(3);
  const auto& b = torus.base();
  auto ta = torus.deck_transformation(w, loop(b, {"a"}));
  CHECK(verify_automorphism(w.graph, ta).valid);
  CHECK(ta.domain_size() == 42);  // 6 of 7 columns
  auto tb = torus.deck_transformation(w, loop(b, {"b"}));
  auto comm = torus.deck_transformation(w, loop(b, {"a", "b", "-a", "-b"}));
  CHECK(comm.domain_size() == w.graph.vertex_count());
  for (VertexId v = 0; v < w.graph.vertex_count(); ++v) CHECK(comm(v) == v);
  // a translation: every defined image is one step away in a fixed direction
  for (VertexId v = 0; v < w.graph.vertex_count(); ++v)
    if (ta.defined(v)) CHECK(w.graph.adjacent(v, ta(v)));
  auto ab = compose(ta, tb), ba = compose(tb, ta);
  for (VertexId v = 0; v < w.graph.vertex_count(); ++v)
    if (ab.defined(v) && ba.defined(v)) CHECK(ab(v) == ba(v));
}

TEST_CASE("loops must be closed edge paths at the basepoint") {
  BaseComplex seg;
  seg.vertices = {"p", "q"};
  seg.edges = {{"e", 0, 1}, {"f", 0, 1}};
  Developer d(seg, 0);
  CHECK_THROWS_AS(d.check_loop({0}), ValidationError);
  CHECK_THROWS_AS(d.check_loop({0, 0}), ValidationError);
  CHECK_NOTHROW(d.check_loop({0, 3}));
  auto w = d.window(4);
  // the cover of a theta-less digon is a line
  CHECK(oracle::isomorphic(w.graph.as_simple_graph(), gen::path_graph(8)));
}

TEST_CASE("deck transformations on the tree and composition") {
  Developer wedge(bases::wedge({"a", "b"}), 0);
  auto w = wedge.window(4);
  DeckGroup g(wedge, w, {"a", "b"}, {{0}, {2}});
  auto a = g.realize(g.parse("a"));
  CHECK(verify_automorphism(w.graph, a).valid);
  // hyperbolic: displacement is 1 on the axis and 1 + 2 d(v, axis) off it
  CHECK(l1_distance(w.graph, w.basepoint, a(w.basepoint)) == 1);
  for (VertexId v = 0; v < w.graph.vertex_count(); ++v)
    if (a.defined(v)) CHECK(l1_distance(w.graph, v, a(v)) % 2 == 1);
  for (const auto& [u, v] : std::vector<std::pair<std::string, std::string>>{{"a", "b"}, {"a.b", "a^-1"}, {"b.b", "a.b"}}) {
    Word wu = g.parse(u), wv = g.parse(v);
    auto uv = g.realize(wu * wv);
    auto comp = compose(g.realize(wu), g.realize(wv));
    for (VertexId x = 0; x < w.graph.vertex_count(); ++x)
      if (comp.defined(x)) CHECK(uv(x) == comp(x));
  }
}
