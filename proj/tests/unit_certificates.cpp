#include <doctest.h>

#include "cubecore/actions.hpp"
#include "cubecore/bases.hpp"
#include "cubecore/certificates.hpp"
#include "cubecore/developer.hpp"
#include "cubecore/generators.hpp"
#include "cubecore/io.hpp"
#include "cubecore/walls.hpp"

#include <random>

using namespace cubecore;
using cert::json;

namespace {

std::string fixture(const std::string& name) { return std::string(CUBECORE_FIXTURES) + "/" + name; }

VertexSet bfs_halfspace(const CubeGraph& x, VertexId inside, VertexId outside) {
  auto di = x.distances_from(inside), dout = x.distances_from(outside);
  VertexSet s = x.empty_set();
  for (VertexId v = 0; v < x.vertex_count(); ++v)
    if (di[v] < dout[v]) s.set(v);
  return s;
}

Halfspace side_of_edge(const CubeGraph& x, const std::string& from, const std::string& toward) {
  VertexId a = *x.find(from), b = *x.find(toward);
  return x.halfspace_containing(b, x.wall_of_edge(*x.edge_between(a, b)));
}

struct F2 {
  Developer dev{bases::wedge({"a", "b"}), 0};
  Window w;
  std::unique_ptr<DeckGroup> g;
  explicit F2(int r) : w(dev.window(r)), g(edge_loop_group(dev, w)) {}
  const CubeGraph& x() const { return w.graph; }
};

bool ok(const json& c, const CubeGraph& x, const GroupModel* g) { return cert::check_certificate(c, x, g).ok; }
std::string why(const json& c, const CubeGraph& x, const GroupModel* g) {
  return cert::check_certificate(c, x, g).explanation;
}

void swap_edge(json& h) { std::swap(h["edge"][0], h["edge"][1]); }

}  // namespace

TEST_CASE("skewer fixture from the search re-checks") {
  F2 s(6);
  auto c = io::read_json_file(fixture("f2_skewer_cert.json"));
  CHECK(c["checked"] == true);
  auto r = cert::check_certificate(c, s.x(), s.g.get());
  CHECK_MESSAGE(r.ok, r.explanation);

  // against another window: digest mismatch
  F2 big(8);
  auto wrong = cert::check_certificate(c, big.x(), big.g.get());
  CHECK_FALSE(wrong.ok);
  CHECK(wrong.explanation.find("digest mismatch") != std::string::npos);

  // stale wall id
  json stale = c;
  stale["h"]["wall"] = stale["h"]["wall"].get<int>() + 1;
  CHECK(why(stale, s.x(), s.g.get()).find("stale wall id") != std::string::npos);
  stale["h"]["wall"] = 100000;
  CHECK(why(stale, s.x(), s.g.get()).find("stale wall id") != std::string::npos);

  // element changed
  json other = c;
  other["element"] = "b.a";
  CHECK_FALSE(ok(other, s.x(), s.g.get()));
  other["element"] = "a.c";
  CHECK(why(other, s.x(), s.g.get()).find("unknown generator") != std::string::npos);

  // checked flag is recomputed, never trusted
  json lying = other;
  lying["checked"] = true;
  CHECK(cert::checked(lying, s.x(), s.g.get())["checked"] == false);
}

TEST_CASE("flip and double skewer certificates on the free group window") {
  F2 s(6);
  const auto& x = s.x();
  Halfspace h = side_of_edge(x, "v0", "v0:a");
  auto flip = find_flip(*s.g, h, 3);
  REQUIRE(flip);
  auto fj = cert::to_json(*s.g, *flip);
  CHECK(fj["type"] == "flip");
  CHECK(ok(fj, x, s.g.get()));
  CHECK(cert::checked(fj, x, s.g.get())["checked"] == true);

  // swapped orientation of h
  json t = fj;
  swap_edge(t["h"]);
  CHECK_FALSE(ok(t, x, s.g.get()));
  // swapped orientation of the image
  t = fj;
  swap_edge(t["image"]);
  CHECK_FALSE(ok(t, x, s.g.get()));
  // the identity does not flip anything
  t = fj;
  t["element"] = "e";
  CHECK_FALSE(ok(t, x, s.g.get()));
  // without a group there is nothing to apply
  CHECK(why(fj, x, nullptr).find("no group") != std::string::npos);

  auto ds = double_skewer(*s.g, h, side_of_edge(x, "v0:-a", "v0"), 9);
  REQUIRE(ds.cert);
  auto dj = cert::to_json(*s.g, *ds.cert);
  CHECK(dj["method"] == "two-flip");
  auto r = cert::check_certificate(dj, x, s.g.get());
  CHECK_MESSAGE(r.ok, r.explanation);
  // composition order matters: g.a is not the certified element
  t = dj;
  t["flip_a"]["element"] = dj["flip_g"]["element"];
  CHECK_FALSE(ok(t, x, s.g.get()));
  t = dj;
  swap_edge(t["k"]);
  CHECK_FALSE(ok(t, x, s.g.get()));
}

TEST_CASE("contracting, Schottky, facing triple certificates") {
  F2 s(6);
  const auto& x = s.x();
  auto c = contracting_certificate(*s.g, s.g->parse("a.b"), 4);
  REQUIRE(c.cert);
  auto cj = cert::to_json(*s.g, *c.cert);
  auto r = cert::check_certificate(cj, x, s.g.get());
  CHECK_MESSAGE(r.ok, r.explanation);
  json t = cj;
  std::swap(t["inner"], t["outer"]);
  CHECK_FALSE(ok(t, x, s.g.get()));

  // crossing pair presented as nested: on the torus nothing is strongly separated
  Developer td(bases::torus(), 0);
  auto tw = td.window(3);
  auto tg = edge_loop_group(td, tw);
  const auto& tx = tw.graph;
  Halfspace in = side_of_edge(tx, "v0", "v0:a"), out = side_of_edge(tx, "v0:-a", "v0");
  CHECK(tx.halfspace(in).is_proper_subset_of(tx.halfspace(out)));
  ContractingCert fake{tg->parse("a"), 2, in, out, *image_halfspace(*tg, tg->parse("a.a"), in), 0};
  auto fr = cert::check_certificate(cert::to_json(*tg, fake), tx, tg.get());
  CHECK_FALSE(fr.ok);
  CHECK(fr.explanation.find("strongly separated") != std::string::npos);

  auto sch = schottky_pair(*s.g, 9);
  REQUIRE(sch.cert);
  auto sj = cert::to_json(*s.g, *sch.cert);
  r = cert::check_certificate(sj, x, s.g.get());
  CHECK_MESSAGE(r.ok, r.explanation);
  t = sj;
  std::swap(t["quadruple"][0], t["quadruple"][2]);
  CHECK_FALSE(ok(t, x, s.g.get()));

  auto tree = gen::tree(3, 2);
  auto ft = facing_triple(tree);
  REQUIRE(ft);
  auto tj = cert::to_json(tree, *ft);
  CHECK(ok(tj, tree, nullptr));
  swap_edge(tj["halfspaces"][1]);
  CHECK_FALSE(ok(tj, tree, nullptr));
}

TEST_CASE("structural certificates: decomposition, ss pair, pencil") {
  auto g = gen::grid(3, 2);
  auto d = decompose(g);
  auto dj = cert::to_json(g, d);
  CHECK(ok(dj, g, nullptr));
  // moving a wall to the other factor breaks the crossing pattern
  json t = dj;
  t["factors"][0].push_back(t["factors"][1][0]);
  t["factors"][1].erase(0);
  CHECK_FALSE(ok(t, g, nullptr));
  t = dj;
  t["factors"][0].erase(0);
  CHECK(why(t, g, nullptr).find("cover") != std::string::npos);

  auto tree = gen::tree(3, 3);
  bool found = false;
  for (WallId w = 0; w < tree.wall_count() && !found; ++w) {
    Halfspace h{w, 0};
    if (auto p = find_ss_pair_through(tree, h)) {
      found = true;
      auto sj = cert::to_json(tree, *p, h);
      CHECK(ok(sj, tree, nullptr));
      std::swap(sj["inner"], sj["outer"]);
      CHECK_FALSE(ok(sj, tree, nullptr));
    }
  }
  CHECK(found);

  auto line = gen::path(5);
  std::vector<VertexId> geo;
  for (VertexId v = 0; v <= 5; ++v) geo.push_back(*line.find(line.name(v)));
  auto pen = extract_pencil(line, geo, 3);
  REQUIRE(pen.pencil);
  auto pj = cert::to_json(line, *pen.pencil);
  CHECK(ok(pj, line, nullptr));
  std::swap(pj["chain"][0], pj["chain"][1]);
  CHECK_FALSE(ok(pj, line, nullptr));
}

TEST_CASE("checker agrees with a brute-force oracle on random claims") {
  F2 s(4);
  const auto& x = s.x();
  std::mt19937_64 rng(5);
  auto words = word_ball(2, 3);
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Halfspace h{static_cast<WallId>(rng() % x.wall_count()), static_cast<std::uint8_t>(rng() % 2)};
    const Word& w = words[1 + rng() % (words.size() - 1)];
    auto img = image_halfspace(*s.g, w, h);
    if (!img) continue;
    // oracle: image computed from an oriented dual edge, flip iff h* ⊊ image
    VertexSet hs = x.halfspace(h), is = x.halfspace(*img);
    VertexId a = 0, b = 0;
    for (EdgeId e : x.wall(h.wall).dual_edges) {
      auto [u, v] = x.edge(e);
      if (!hs.test(u)) std::swap(u, v);
      if (s.g->apply(w, u) != kUndefined && s.g->apply(w, v) != kUndefined) {
        a = u;
        b = v;
        break;
      }
    }
    VertexSet brute = bfs_halfspace(x, s.g->apply(w, a), s.g->apply(w, b));
    REQUIRE(brute == is);
    bool flips = (~hs).is_proper_subset_of(brute);
    bool skews = brute.is_proper_subset_of(hs);
    FlipCert f{w, h, *img, 0};
    if (flips) f.witness = static_cast<VertexId>((brute & hs).find_first());
    json fj = cert::to_json(*s.g, f);
    if (!flips) fj.erase("witness");
    CHECK(ok(fj, x, s.g.get()) == flips);
    SkewerCert sk{w, 1, h, *img, 0};
    json sj = cert::to_json(*s.g, sk);
    sj.erase("witness");
    CHECK(ok(sj, x, s.g.get()) == skews);
    (flips ? accepted : rejected)++;
  }
  CHECK(accepted > 0);
  CHECK(rejected > 0);
}
