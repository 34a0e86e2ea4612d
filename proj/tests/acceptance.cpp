// One line per acceptance criterion: PASS/FAIL, elapsed time against its
// limit, and a short summary of what was measured.

#include "cubecore/actions.hpp"
#include "cubecore/bases.hpp"
#include "cubecore/certificates.hpp"
#include "cubecore/developer.hpp"
#include "cubecore/generators.hpp"
#include "cubecore/io.hpp"
#include "cubecore/pocset.hpp"
#include "cubecore/quotients.hpp"
#include "cubecore/stability.hpp"
#include "cubecore/walls.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cubecore;
using cert::json;

namespace {

std::string fixture(const std::string& name) { return std::string(CUBECORE_FIXTURES) + "/" + name; }

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Collects the first failure; later checks still run so the summary is complete.
struct Check {
  Verdict v;
  std::ostringstream note;
  void expect(bool cond, const std::string& what) {
    if (!cond && v.pass) {
      v.pass = false;
      v.detail = what;
    }
  }
  Verdict done() {
    if (v.pass) v.detail = note.str();
    return v;
  }
};

Halfspace side_of_edge(const CubeGraph& x, const std::string& from, const std::string& toward) {
  VertexId a = *x.find(from), b = *x.find(toward);
  return x.halfspace_containing(b, x.wall_of_edge(*x.edge_between(a, b)));
}

struct Space {
  Developer dev;
  Window w;
  std::unique_ptr<DeckGroup> g;
  Space(BaseComplex b, int r) : dev(std::move(b), 0), w(dev.window(r)), g(edge_loop_group(dev, w)) {}
  const CubeGraph& x() const { return w.graph; }
};

BaseComplex f2_base() { return io::base_from_json(io::read_json_file(fixture("wedge2.json"))); }

bool cert_ok(const json& c, const CubeGraph& x, const GroupModel* g, std::string* why = nullptr) {
  auto r = cert::check_certificate(c, x, g);
  if (!r.ok && why) *why = r.explanation;
  return r.ok;
}

// ---------------------------------------------------------------------------

Verdict duality() {
  Check c;
  std::mt19937_64 rng(20261014);
  int checked = 0;
  std::size_t largest = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t pairs = 1 + rng() % 12;
    Pocset sigma = random_pocset(rng, pairs, 4);
    auto rep = verify_pocset(sigma);
    c.expect(rep.valid && rep.width <= 4, "trial " + std::to_string(trial) + ": generator gave an invalid pocset");
    CubeGraph x = dual_complex(sigma);
    largest = std::max(largest, x.vertex_count());

    // H(X(Σ)) ≅ Σ
    Pocset h = halfspace_pocset(x);
    auto f = pocset_isomorphism(sigma, h);
    c.expect(f && is_pocset_isomorphism(sigma, h, *f), "trial " + std::to_string(trial) + ": H(X(S)) not isomorphic to S");

    // X(H(X)) ≅ X through principal ultrafilters: v picks side_of(v, w) on wall w
    CubeGraph y = dual_complex(h);
    bool iso = y.vertex_count() == x.vertex_count() && y.edge_count() == x.edge_count();
    std::vector<VertexId> to(x.vertex_count());
    VertexSet hit = y.empty_set();
    for (VertexId v = 0; v < x.vertex_count() && iso; ++v) {
      std::string s;
      for (WallId w = 0; w < x.wall_count(); ++w) s += x.side_of(v, w) ? '1' : '0';
      if (x.wall_count() == 0) s = "()";
      auto u = y.find(s);
      if (!u || hit.test(*u)) {
        iso = false;
        break;
      }
      hit.set(*u);
      to[v] = *u;
    }
    for (const auto& [a, b] : x.edges())
      if (iso && !y.adjacent(to[a], to[b])) iso = false;
    c.expect(iso, "trial " + std::to_string(trial) + ": X(H(X)) not isomorphic to X");
    ++checked;
  }
  c.note << checked << " pocsets, largest dual " << largest << " vertices";
  return c.done();
}

std::vector<std::pair<std::string, CubeGraph>> complex_zoo(std::size_t want) {
  std::vector<std::pair<std::string, CubeGraph>> zoo;
  auto add = [&](std::string name, CubeGraph x) {
    if (zoo.size() < want && x.vertex_count() <= 300) zoo.emplace_back(std::move(name), std::move(x));
  };
  for (int n = 1; n <= 7; ++n) add("cube(" + std::to_string(n) + ")", gen::cube(n));
  for (int a = 1; a <= 5; a += 2)
    for (int b = 1; b <= 5; b += 2) add("grid(" + std::to_string(a) + "," + std::to_string(b) + ")", gen::grid(a, b));
  for (int v = 2; v <= 4; ++v)
    for (int d = 1; d <= 3; ++d) add("tree(" + std::to_string(v) + "," + std::to_string(d) + ")", gen::tree(v, d));
  add("quarter_grid(8)", gen::quarter_grid(8));
  add("star(5)", gen::star(5));
  add("tree(3,2)xpath(3)", gen::product(gen::tree(3, 2), gen::path(3)));
  add("grid(2,2)xpath(6)", gen::product(gen::grid(2, 2), gen::path(6)));
  add("star(3)xstar(3)", gen::product(gen::star(3), gen::star(3)));
  for (const char* b : {"torus", "wedge2", "f2xz", "t3"}) {
    Developer dev(bases::builtin(b), 0);
    add(std::string(b) + " window 2", dev.window(2).graph);
  }
  std::mt19937_64 rng(77);
  for (int i = 0; zoo.size() < want; ++i) {
    Pocset p = random_pocset(rng, 3 + rng() % 8, 3);
    add("dual #" + std::to_string(i), dual_complex(p));
  }
  return zoo;
}

Verdict distance_is_wall_count() {
  Check c;
  auto zoo = complex_zoo(50);
  c.expect(zoo.size() == 50, "zoo has " + std::to_string(zoo.size()) + " complexes");
  std::size_t pairs = 0;
  for (const auto& [name, x] : zoo) {
    for (VertexId a = 0; a < x.vertex_count(); ++a) {
      auto d = x.distances_from(a);
      for (VertexId b = a + 1; b < x.vertex_count(); ++b) {
        int sep = 0;
        for (WallId w = 0; w < x.wall_count(); ++w) sep += x.side_of(a, w) != x.side_of(b, w);
        if (d[b] != sep) c.expect(false, name + ": " + x.name(a) + " " + x.name(b));
        ++pairs;
      }
    }
  }
  c.note << zoo.size() << " complexes, " << pairs << " pairs";
  return c.done();
}

Verdict helly() {
  Check c;
  std::vector<CubeGraph> pool;
  pool.push_back(gen::grid(4, 4));
  pool.push_back(gen::tree(3, 3));
  pool.push_back(gen::cube(4));
  pool.push_back(gen::product(gen::tree(3, 2), gen::path(3)));
  {
    std::mt19937_64 r(9);
    pool.push_back(dual_complex(random_pocset(r, 9, 3)));
  }
  std::mt19937_64 rng(31);
  int families = 0;
  std::size_t sizes = 0;
  while (families < 500) {
    const CubeGraph& x = pool[families % pool.size()];
    if (x.wall_count() == 0) continue;
    std::size_t k = 2 + rng() % 5;
    std::vector<Halfspace> fam;
    for (int attempt = 0; attempt < 200 && fam.size() < k; ++attempt) {
      Halfspace h{static_cast<WallId>(rng() % x.wall_count()), static_cast<std::uint8_t>(rng() % 2)};
      bool meets = true;
      for (Halfspace g : fam) meets = meets && (x.halfspace(g) & x.halfspace(h)).any();
      if (meets) fam.push_back(h);
    }
    VertexSet all = x.full_set();
    for (Halfspace h : fam) all &= x.halfspace(h);
    auto r = helly_point(x, fam);
    std::string tag = "family " + std::to_string(families);
    c.expect(all.any(), tag + ": brute intersection empty");
    c.expect(r.point.has_value() && !r.disjoint_pair, tag + ": no Helly point reported");
    if (r.point) c.expect(all.test(*r.point), tag + ": point not in every half-space");
    sizes += fam.size();
    ++families;
  }
  c.note << families << " families, mean size " << static_cast<double>(sizes) / families;
  return c.done();
}

void geodesics(const CubeGraph& x, VertexId a, VertexId b, const std::vector<int>& db,
               const std::function<void(const std::vector<VertexId>&)>& visit) {
  std::vector<VertexId> path{a};
  std::function<void(VertexId)> go = [&](VertexId v) {
    if (v == b) {
      visit(path);
      return;
    }
    for (VertexId u : x.neighbors(v))
      if (db[u] == db[v] - 1) {
        path.push_back(u);
        go(u);
        path.pop_back();
      }
  };
  go(a);
}

Verdict pencils() {
  Check c;
  std::vector<std::pair<std::string, CubeGraph>> fixtures;
  fixtures.emplace_back("grid(4,4)", gen::grid(4, 4));
  fixtures.emplace_back("tree(3,3)", gen::tree(3, 3));
  fixtures.emplace_back("tree(3,2)xpath(4)", gen::product(gen::tree(3, 2), gen::path(4)));
  fixtures.emplace_back("grid(2,2)xpath(6)", gen::product(gen::grid(2, 2), gen::path(6)));
  std::size_t total = 0;
  for (const auto& [name, x] : fixtures) {
    int dim = dimension(x);
    int threshold = ramsey_number(3, dim + 1);
    std::size_t here = 0;
    for (VertexId b = 0; b < x.vertex_count(); ++b) {
      auto db = x.distances_from(b);
      for (VertexId a = 0; a < x.vertex_count(); ++a) {
        if (a == b || db[a] < threshold) continue;
        geodesics(x, a, b, db, [&](const std::vector<VertexId>& geo) {
          auto r = extract_pencil(x, geo, 3);
          ++here;
          if (!r.pencil || r.pencil->chain.size() < 3 || !r.guaranteed) {
            c.expect(false, name + ": no 3-pencil on a geodesic from " + x.name(a));
            return;
          }
          const auto& ch = r.pencil->chain;
          bool nested = true;
          for (std::size_t i = 0; i < ch.size(); ++i) {
            nested = nested && x.halfspace(ch[i]).test(geo.back());
            if (i + 1 < ch.size()) nested = nested && x.halfspace(ch[i + 1]).is_proper_subset_of(x.halfspace(ch[i]));
          }
          c.expect(nested, name + ": chain is not a pencil");
          // spot-check the serialized form on a sample
          if (here % 97 == 1) c.expect(cert_ok(cert::to_json(x, *r.pencil), x, nullptr), name + ": pencil cert rejected");
        });
      }
    }
    c.expect(here > 0, name + ": no geodesic long enough");
    c.note << name << " dim " << dim << " R=" << threshold << ": " << here << " geodesics; ";
    total += here;
  }
  c.note << "total " << total;
  return c.done();
}

Verdict decompositions() {
  Check c;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {4, 2}, {5, 5}}) {
    auto x = gen::grid(a, b);
    auto d = decompose(x);
    std::string tag = "grid(" + std::to_string(a) + "," + std::to_string(b) + ")";
    c.expect(d.factors.size() == 2 && d.product_verified && verify_product_witness(x, d), tag + ": not a verified 2-factor product");
    if (d.factors.size() == 2) {
      auto p0 = d.factor_quotients[0].quotient.as_simple_graph(), p1 = d.factor_quotients[1].quotient.as_simple_graph();
      auto pa = gen::path_graph(a), pb = gen::path_graph(b);
      bool paths = (oracle::isomorphic(p0, pa) && oracle::isomorphic(p1, pb)) ||
                   (oracle::isomorphic(p0, pb) && oracle::isomorphic(p1, pa));
      c.expect(paths, tag + ": factors are not the two paths");
    }
  }
  Space txt(bases::builtin("txt"), 2);
  auto d = decompose(txt.x());
  c.expect(d.factors.size() == 2 && d.product_verified && verify_product_witness(txt.x(), d),
           "txt window: not a verified 2-factor product");
  for (const auto& q : d.factor_quotients) {
    const auto& t = q.quotient;
    c.expect(t.edge_count() + 1 == t.vertex_count() && t.vertex_count() > 2 && dimension(t) == 1,
             "txt window: a factor is not a tree");
  }
  auto tj = cert::to_json(txt.x(), d);
  c.expect(cert_ok(tj, txt.x(), nullptr), "txt window: decomposition cert rejected");
  c.expect(decompose(gen::tree(3, 3)).factors.size() == 1, "tree(3,3): more than one factor");
  c.expect(decompose(gen::tree(4, 2)).factors.size() == 1, "tree(4,2): more than one factor");
  c.note << "grids 2 path factors, txt window " << txt.x().vertex_count() << " vertices 2 tree factors, trees 1 factor";
  return c.done();
}

Verdict no_ss_in_products() {
  Check c;
  std::vector<std::pair<std::string, CubeGraph>> xs;
  xs.emplace_back("grid(3,3)", gen::grid(3, 3));
  xs.emplace_back("grid(4,2)", gen::grid(4, 2));
  xs.emplace_back("cube(3)", gen::cube(3));
  xs.emplace_back("cube(4)", gen::cube(4));
  xs.emplace_back("tree(3,2)xpath(3)", gen::product(gen::tree(3, 2), gen::path(3)));
  for (auto [b, r] : std::vector<std::pair<const char*, int>>{{"txt", 2}, {"torus", 3}, {"f2xz", 2}}) {
    Developer dev(bases::builtin(b), 0);
    xs.emplace_back(std::string(b) + " window", dev.window(r).graph);
  }
  std::size_t pairs = 0;
  for (const auto& [name, x] : xs) {
    c.expect(decompose(x).factors.size() >= 2, name + ": not a product");
    for (WallId a = 0; a < x.wall_count(); ++a)
      for (WallId b = a + 1; b < x.wall_count(); ++b) {
        ++pairs;
        if (strongly_separated(x, a, b)) c.expect(false, name + ": walls " + std::to_string(a) + "," + std::to_string(b));
      }
  }
  c.note << xs.size() << " complexes, " << pairs << " wall pairs";
  return c.done();
}

bool quarter_outcome(int n, std::string* summary) {
  auto q = gen::quarter_grid(n);
  auto g = trivial_group(q);
  auto cl = classify_walls(*g, 3);
  bool all_half = cl.walls.size() == static_cast<std::size_t>(2 * n);
  for (const auto& w : cl.walls) all_half = all_half && w.type == WallType::half_essential;
  auto core = essential_core(*g, cl);
  if (summary)
    *summary = std::to_string(cl.walls.size()) + " walls half-essential, core " +
               std::to_string(core.quotient.vertex_count()) + " vertex";
  return all_half && core.quotient.vertex_count() == 1;
}

Verdict quarter_core() {
  Check c;
  std::string s;
  c.expect(quarter_outcome(12, &s), "quarter_grid(12): " + s);
  c.note << s;
  return c.done();
}

Verdict flips() {
  Check c;
  Space s(f2_base(), 6);
  const auto& x = s.x();
  Halfspace h = cert::halfspace_from_json(x, io::read_json_file(fixture("f2_flip_halfspace.json")));
  c.expect(h == side_of_edge(x, "v0", "v0:a"), "fixture half-space resolved elsewhere");
  auto flip = find_flip(*s.g, h, 3);
  std::string why;
  c.expect(flip.has_value(), "no flip within radius 3");
  if (flip) {
    c.expect(cert_ok(cert::to_json(*s.g, *flip), x, s.g.get(), &why), "flip cert rejected: " + why);
    c.note << "flip " << s.g->format(flip->element);
  }
  auto ds = double_skewer(*s.g, h, side_of_edge(x, "v0:-a", "v0"), 9);
  c.expect(ds.cert.has_value() && ds.cert->method == "two-flip", "no two-flip double skewer within radius 9");
  if (ds.cert) {
    c.expect(cert_ok(cert::to_json(*s.g, *ds.cert), x, s.g.get(), &why), "double skewer rejected: " + why);
    c.note << ", double skewer " << s.g->format(ds.cert->element);
  }

  Space t(bases::torus(), 6);
  int flippable = 0;
  for (WallId w = 0; w < t.x().wall_count(); ++w)
    for (std::uint8_t side : {0, 1})
      if (find_flip(*t.g, Halfspace{w, side}, 4)) ++flippable;
  c.expect(flippable == 0, std::to_string(flippable) + " torus half-spaces flip");
  c.note << ", torus: 0 of " << 2 * t.x().wall_count() << " half-spaces flip";
  return c.done();
}

Verdict contracting() {
  Check c;
  Space s(f2_base(), 8);
  auto r = contracting_certificate(*s.g, s.g->parse("a.b"), 4);
  c.expect(r.cert.has_value(), "no certificate: " + r.reason);
  if (!r.cert) return c.done();
  const auto& x = s.x();
  std::string why;
  c.expect(cert_ok(cert::to_json(*s.g, *r.cert), x, s.g.get(), &why), "cert rejected: " + why);
  c.expect(strongly_separated(x, r.cert->inner.wall, r.cert->outer.wall), "pair not strongly separated");
  auto p = contraction_profile(*s.g, *r.cert);
  c.expect(!p.inconclusive, "profile inconclusive: " + p.reason);
  c.expect(p.bound_holds && p.max_axis_distance <= 2 * p.period, "axis distance bound fails");
  c.note << "n=" << r.cert->n << " N=" << p.period << " triples " << p.triples << " points " << p.crossing_points
         << " max distance " << p.max_axis_distance;
  return c.done();
}

Verdict rank_rigidity_cases() {
  Check c;
  std::string why;
  {
    Space txt(bases::builtin("txt"), 1);
    auto r = rank_rigidity(*txt.g, 3, 1);
    c.expect(r.outcome == "product", "txt: " + r.outcome);
    c.expect(r.decomposition.factors.size() >= 2, "txt: fewer than two factors");
    c.note << "txt product (" << r.decomposition.factors.size() << " factors)";
  }
  {
    Space f2(f2_base(), 4);
    auto r = rank_rigidity(*f2.g, 9, 1);
    c.expect(r.outcome == "contracting" && !r.witnesses.empty(), "F2: " + r.outcome);
    const GroupModel& cg = r.core_group ? *r.core_group : *f2.g;
    for (const auto& w : r.witnesses)
      c.expect(cert_ok(cert::to_json(cg, w.cert), cg.space(), &cg, &why), "F2 witness rejected: " + why);
    c.note << ", F2 contracting (" << r.witnesses.size() << " witnesses)";
  }
  {
    auto q = gen::quarter_grid(12);
    auto g = trivial_group(q);
    auto r = rank_rigidity(*g, 3, 3);
    c.expect(r.outcome == "bounded core", "quarter grid: " + r.outcome);
    c.note << ", quarter grid bounded core";
  }
  return c.done();
}

Verdict schottky() {
  Check c;
  Space s(f2_base(), 6);
  const auto& x = s.x();
  auto r = schottky_pair(*s.g, 9);
  c.expect(r.cert.has_value(), "failed at " + r.stage);
  if (!r.cert) return c.done();
  const auto& q = r.cert->quadruple;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      c.expect(!(x.halfspace(q[i]) & x.halfspace(q[j])).any(), "quadruple not pairwise disjoint");
  std::string why;
  c.expect(cert_ok(cert::to_json(*s.g, *r.cert), x, s.g.get(), &why), "cert rejected: " + why);
  c.expect(cert_ok(cert::to_json(*s.g, r.cert->first), x, s.g.get(), &why), "first element rejected: " + why);
  c.expect(cert_ok(cert::to_json(*s.g, r.cert->second), x, s.g.get(), &why), "second element rejected: " + why);
  c.note << "elements " << s.g->format(r.cert->first.element) << " and " << s.g->format(r.cert->second.element);
  return c.done();
}

json canonical_or_null(const std::optional<json>& j, const CubeGraph& x) {
  return j ? cert::canonical(*j, x) : json(nullptr);
}

Verdict stability() {
  Check c;
  auto expect_stable = [&](const StabilityReport& r) {
    c.expect(r.stable, r.analysis + " differs between R=" + std::to_string(r.radius) + " and " +
                           std::to_string(r.grown_radius) + ": " + r.before.dump() + " vs " + r.after.dump());
    c.expect(!r.before.is_null(), r.analysis + " found nothing");
    c.note << r.analysis << " ";
  };
  BaseComplex f2 = f2_base();

  expect_stable(stability_check("flip", f2, 0, 6, 2, [](const Window& w, const GroupModel& g) {
    auto f = find_flip(g, side_of_edge(w.graph, "v0", "v0:a"), 3);
    return canonical_or_null(f ? std::optional<json>(cert::to_json(g, *f)) : std::nullopt, w.graph);
  }));
  expect_stable(stability_check("double-skewer", f2, 0, 6, 2, [](const Window& w, const GroupModel& g) {
    const auto& x = w.graph;
    auto d = double_skewer(g, side_of_edge(x, "v0", "v0:a"), side_of_edge(x, "v0:-a", "v0"), 9);
    return canonical_or_null(d.cert ? std::optional<json>(cert::to_json(g, *d.cert)) : std::nullopt, x);
  }));
  expect_stable(stability_check("contracting", f2, 0, 6, 2, [](const Window& w, const GroupModel& g) {
    auto r = contracting_certificate(g, g.parse("a.b"), 4);
    return canonical_or_null(r.cert ? std::optional<json>(cert::to_json(g, *r.cert)) : std::nullopt, w.graph);
  }));
  expect_stable(stability_check("schottky", f2, 0, 6, 2, [](const Window& w, const GroupModel& g) {
    auto r = schottky_pair(g, 9);
    return canonical_or_null(r.cert ? std::optional<json>(cert::to_json(g, *r.cert)) : std::nullopt, w.graph);
  }));
  expect_stable(stability_check("torus-no-flip", bases::torus(), 0, 6, 2, [](const Window& w, const GroupModel& g) {
    json flippable = json::array();
    for (WallId id = 0; id < w.graph.wall_count(); ++id)
      for (std::uint8_t side : {0, 1})
        if (find_flip(g, Halfspace{id, side}, 4)) flippable.push_back(cert::halfspace_to_json(w.graph, {id, side}));
    return json{{"flippable", cert::canonical(json{{"halfspaces", flippable}}, w.graph)}};
  }));
  auto rr = [](int radius) {
    return [radius](const Window&, const GroupModel& g) {
      auto r = rank_rigidity(g, radius, 1);
      json j{{"outcome", r.outcome}, {"factors", r.decomposition.factors.size()}};
      const GroupModel& cg = r.core_group ? *r.core_group : g;
      for (const auto& w : r.witnesses) j["witnesses"].push_back(cert::canonical(cert::to_json(cg, w.cert), cg.space()));
      return j;
    };
  };
  expect_stable(stability_check("rank-rigidity-f2", f2, 0, 4, 2, rr(9)));
  expect_stable(stability_check("rank-rigidity-txt", bases::builtin("txt"), 0, 1, 2, rr(3)));

  std::string small, big;
  bool q12 = quarter_outcome(12, &small), q14 = quarter_outcome(14, &big);
  c.expect(q12 && q14, "quarter grid outcome changes: " + small + " / " + big);
  c.note << "quarter-grid";
  return c.done();
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no limit
  Verdict (*run)();
};

}  // namespace

int main() {
  const Criterion all[] = {
      {1, "pocset duality on 200 random pocsets", 60, duality},
      {2, "distance equals separating walls on 50 complexes", 120, distance_is_wall_count},
      {3, "Helly points of 500 pairwise-meeting families", 0, helly},
      {4, "3-pencils on every long geodesic", 0, pencils},
      {5, "product decompositions", 0, decompositions},
      {6, "no strongly separated walls in products", 0, no_ss_in_products},
      {7, "quarter grid core", 0, quarter_core},
      {8, "flips and double skewering on F2, none on Z^2", 60, flips},
      {9, "contracting a.b with axis bound", 120, contracting},
      {10, "rank rigidity outcomes", 0, rank_rigidity_cases},
      {11, "Schottky pair", 0, schottky},
      {12, "stability under dR = 2", 0, stability},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && s > c.limit_s) {
      v.pass = false;
      v.detail = "over time limit; " + v.detail;
    }
    char timing[64];
    if (c.limit_s > 0) std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", s, c.limit_s);
    else std::snprintf(timing, sizeof timing, "%.2fs", s);
    std::printf("criterion %2d %s  %s  (%s)  %s\n", c.id, v.pass ? "PASS" : "FAIL", c.name, timing, v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(all)) - failed, std::size(all));
  return failed == 0 ? 0 : 1;
}
