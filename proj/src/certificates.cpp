#include "cubecore/certificates.hpp"

#include "cubecore/errors.hpp"
#include "cubecore/io.hpp"

#include <deque>
#include <map>
#include <set>

namespace cubecore::cert {

namespace {

// gate edge of h's wall, oriented inside -> outside
std::pair<VertexId, VertexId> gate_edge(const CubeGraph& x, Halfspace h) {
  auto d = x.distances_from(basepoint_of(x));
  const auto& in = x.halfspace(h);
  std::pair<VertexId, VertexId> best{0, 0};
  int best_d = -1;
  for (EdgeId e : x.wall(h.wall).dual_edges) {
    auto [a, b] = x.edge(e);
    int de = std::min(d[a], d[b]);
    if (best_d < 0 || de < best_d) {
      best_d = de;
      best = in.test(a) ? std::pair{a, b} : std::pair{b, a};
    }
  }
  return best;
}

json edge_json(const CubeGraph& x, std::pair<VertexId, VertexId> e) { return {x.name(e.first), x.name(e.second)}; }

// half-space h with a dual edge whose endpoints both have images under w
json transported(const GroupModel& g, const Word& w, Halfspace h, Halfspace image) {
  const CubeGraph& x = g.space();
  auto gate = gate_edge(x, h);
  std::vector<std::pair<VertexId, VertexId>> cands{gate};
  for (EdgeId e : x.wall(h.wall).dual_edges) {
    auto [a, b] = x.edge(e);
    cands.push_back(x.halfspace(h).test(a) ? std::pair{a, b} : std::pair{b, a});
  }
  for (auto [a, b] : cands) {
    VertexId fa = g.apply(w, a), fb = g.apply(w, b);
    if (fa != kUndefined && fb != kUndefined) {
      json img{{"wall", image.wall}, {"edge", {x.name(fa), x.name(fb)}}};
      return json{{"image", img}, {"transport", {x.name(a), x.name(b)}}};
    }
  }
  throw ValidationError("certificate image is not resolvable in the window");
}

// ---------------------------------------------------------------------------
// checker

struct Failure {
  std::string why;
};

class Checker {
 public:
  Checker(const CubeGraph& x, const GroupModel* g) : x_(x), g_(g) {}

  VertexId vertex(const json& j, const std::string& at) const {
    if (!j.is_string()) fail(at + ": expected a vertex name");
    auto v = x_.find(j.get<std::string>());
    if (!v) fail(at + ": unknown vertex '" + j.get<std::string>() + "'");
    return *v;
  }

  std::pair<VertexId, VertexId> edge(const json& j, const std::string& at) const {
    if (!j.is_array() || j.size() != 2) fail(at + ": expected [inside, outside]");
    VertexId a = vertex(j[0], at + "/0"), b = vertex(j[1], at + "/1");
    if (!adjacent(a, b)) fail(at + ": " + x_.name(a) + " and " + x_.name(b) + " are not adjacent");
    return {a, b};
  }

  // {v : d(v, a) < d(v, b)}
  const VertexSet& split(VertexId a, VertexId b) {
    auto key = std::pair{a, b};
    auto it = splits_.find(key);
    if (it != splits_.end()) return it->second;
    auto da = bfs(a), db = bfs(b);
    VertexSet s(x_.vertex_count());
    for (VertexId v = 0; v < x_.vertex_count(); ++v)
      if (da[v] < db[v]) s.set(v);
    return splits_.emplace(key, std::move(s)).first->second;
  }

  struct Hs {
    long wall;
    std::pair<VertexId, VertexId> e;
    VertexSet set;
  };

  Hs halfspace(const json& j, const std::string& at) {
    if (!j.is_object() || !j.contains("wall") || !j.contains("edge")) fail(at + ": expected {wall, edge}");
    if (!j["wall"].is_number_integer()) fail(at + "/wall: expected an integer");
    Hs h{j["wall"].get<long>(), edge(j["edge"], at + "/edge"), {}};
    h.set = split(h.e.first, h.e.second);
    // the stated id must name the wall the edge is dual to
    if (h.wall < 0 || static_cast<std::size_t>(h.wall) >= x_.wall_count())
      fail(at + ": stale wall id " + std::to_string(h.wall) + " (complex has " + std::to_string(x_.wall_count()) + " walls)");
    auto [u, v] = x_.edge(x_.wall(static_cast<WallId>(h.wall)).dual_edges.front());
    const VertexSet& ref = split(u, v);
    if (ref != h.set && ref != ~h.set) fail(at + ": stale wall id " + std::to_string(h.wall) + " does not match edge " + edge_name(h.e));
    return h;
  }

  Word word(const json& j, const std::string& at) const {
    if (!g_) fail(at + ": certificate has an element but no group was given");
    if (!j.is_string()) fail(at + ": expected a word");
    try {
      return g_->parse(j.get<std::string>());
    } catch (const ValidationError& e) {
      fail(at + ": " + e.what());
    }
  }

  // element from "element" and optional "n"
  Word element(const json& c) const {
    Word w = word(c.value("element", json()), "/element");
    int n = c.value("n", 1);
    if (n == 0) fail("/n: zero power");
    return n > 0 ? power(w, n) : power(w.inverse(), -n);
  }

  // the image half-space of `src` under w, as claimed by c["image"] and c["transport"]
  Hs image(const json& c, const Word& w, const Hs& src, const std::string& key = "image",
           const std::string& tkey = "transport") {
    Hs img = halfspace(c.value(key, json()), "/" + key);
    auto t = edge(c.value(tkey, json()), "/" + tkey);
    if (split(t.first, t.second) != src.set) fail("/" + tkey + ": edge " + edge_name(t) + " does not bound the source half-space");
    VertexId fa = g_->apply(w, t.first), fb = g_->apply(w, t.second);
    if (fa == kUndefined || fb == kUndefined) fail("/" + tkey + ": image of " + edge_name(t) + " leaves the domain");
    if (!adjacent(fa, fb)) fail("/" + tkey + ": image of " + edge_name(t) + " is not an edge");
    if (split(fa, fb) != img.set)
      fail("/" + key + ": claimed image differs from the image of " + edge_name(t) + ", which is " + edge_name({fa, fb}));
    return img;
  }

  bool crosses(const VertexSet& a, const VertexSet& b) const {
    return (a & b).any() && (a - b).any() && (b - a).any() && (~(a | b)).any();
  }

  // Walls are enumerated through one dual edge each; crossing is decided on
  // the recomputed sets.
  std::optional<std::string> strongly_separated(const VertexSet& a, const VertexSet& b) {
    if (crosses(a, b)) return std::string("the walls cross");
    if (a == b || a == ~b) return std::string("the walls coincide");
    for (const auto& w : x_.walls()) {
      auto [u, v] = x_.edge(w.dual_edges.front());
      const VertexSet& s = split(u, v);
      if (crosses(s, a) && crosses(s, b)) return "wall through " + edge_name({u, v}) + " crosses both";
    }
    return std::nullopt;
  }

  void witness(const json& c, const VertexSet& must_be_in) const {
    if (!c.contains("witness")) return;
    VertexId v = vertex(c["witness"], "/witness");
    if (!must_be_in.test(v)) fail("/witness: " + x_.name(v) + " is not where the certificate says");
  }

  std::string edge_name(std::pair<VertexId, VertexId> e) const { return x_.name(e.first) + "->" + x_.name(e.second); }

  [[noreturn]] static void fail(const std::string& why) { throw Failure{why}; }

  const CubeGraph& x_;
  const GroupModel* g_;

 private:
  bool adjacent(VertexId a, VertexId b) const {
    for (VertexId n : x_.neighbors(a))
      if (n == b) return true;
    return false;
  }

  std::vector<int> bfs(VertexId s) const {
    std::vector<int> d(x_.vertex_count(), -1);
    std::deque<VertexId> q{s};
    d[s] = 0;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (VertexId n : x_.neighbors(v))
        if (d[n] < 0) {
          d[n] = d[v] + 1;
          q.push_back(n);
        }
    }
    return d;
  }

  std::map<std::pair<VertexId, VertexId>, VertexSet> splits_;
};

bool proper_subset(const VertexSet& a, const VertexSet& b) { return a.is_proper_subset_of(b); }

std::string check_one(Checker& k, const json& c);

std::string check_flip(Checker& k, const json& c) {
  Word w = k.element(c);
  auto h = k.halfspace(c.value("h", json()), "/h");
  auto img = k.image(c, w, h);
  if (!proper_subset(~h.set, img.set)) Checker::fail("h* is not properly inside the image of h");
  k.witness(c, img.set & h.set);
  return "flip: h* is properly inside " + k.g_->format(w) + ".h";
}

std::string check_skewer(Checker& k, const json& c) {
  Word w = k.element(c);
  auto h = k.halfspace(c.value("h", json()), "/h");
  auto img = k.image(c, w, h);
  if (!proper_subset(img.set, h.set)) Checker::fail("the image of h is not properly inside h");
  k.witness(c, h.set - img.set);
  return "skewer: " + k.g_->format(w) + " maps h properly into itself";
}

std::string check_double_skewer(Checker& k, const json& c) {
  Word w = k.element(c);
  auto kk = k.halfspace(c.value("k", json()), "/k");
  auto h = k.halfspace(c.value("h", json()), "/h");
  if (!proper_subset(kk.set, h.set)) Checker::fail("k is not properly inside h");
  auto img = k.image(c, w, h);
  if (!proper_subset(img.set, kk.set)) Checker::fail("the image of h is not properly inside k");
  k.witness(c, kk.set - img.set);
  std::string how = c.value("method", std::string("direct"));
  if (how == "two-flip") {
    if (!c.contains("flip_g") || !c.contains("flip_a")) Checker::fail("two-flip certificate without its flips");
    check_one(k, c["flip_g"]);
    check_one(k, c["flip_a"]);
    Word g = k.word(c["flip_g"].value("element", json()), "/flip_g/element");
    Word a = k.word(c["flip_a"].value("element", json()), "/flip_a/element");
    if (a * g != w) Checker::fail("element is not a.g");
    auto fk = k.halfspace(c["flip_g"].value("h", json()), "/flip_g/h");
    if (fk.set != kk.set) Checker::fail("flip_g does not flip k");
  }
  return "double skewer (" + how + "): the image of h is properly inside k, which is properly inside h";
}

std::string check_contracting(Checker& k, const json& c) {
  Word w = k.element(c);
  auto in = k.halfspace(c.value("inner", json()), "/inner");
  auto out = k.halfspace(c.value("outer", json()), "/outer");
  if (!proper_subset(in.set, out.set)) Checker::fail("inner is not properly inside outer");
  if (auto why = k.strongly_separated(in.set, out.set)) Checker::fail("inner and outer are not strongly separated: " + *why);
  auto img = k.image(c, w, in);
  if (!proper_subset(out.set, img.set)) Checker::fail("outer is not properly inside the image of inner");
  k.witness(c, img.set - out.set);
  return "contracting: strongly separated nested pair with outer properly inside the image of inner";
}

std::vector<Checker::Hs> halfspace_array(Checker& k, const json& a, const std::string& at, std::size_t n) {
  if (!a.is_array() || (n && a.size() != n)) Checker::fail(at + ": wrong length");
  std::vector<Checker::Hs> r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(k.halfspace(a[i], at + "/" + std::to_string(i)));
  return r;
}

std::vector<Checker::Hs> halfspace_list(Checker& k, const json& c, const std::string& key, std::size_t n) {
  return halfspace_array(k, c.value(key, json()), "/" + key, n);
}

void pairwise_disjoint(const std::vector<Checker::Hs>& hs, const std::string& what) {
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j)
      if ((hs[i].set & hs[j].set).any() || hs[i].set.none() || hs[j].set.none())
        Checker::fail(what + " " + std::to_string(i) + " and " + std::to_string(j) + " meet");
}

std::string check_facing(Checker& k, const json& c) {
  auto hs = halfspace_list(k, c, "halfspaces", 3);
  pairwise_disjoint(hs, "half-spaces");
  return "facing triple: pairwise disjoint";
}

std::string check_schottky(Checker& k, const json& c) {
  auto t = halfspace_list(k, c, "triple", 3);
  pairwise_disjoint(t, "triple members");
  if (!c.contains("flip") || !c.contains("first") || !c.contains("second")) Checker::fail("missing sub-certificate");
  check_one(k, c["flip"]);
  auto q = halfspace_list(k, c, "quadruple", 4);
  pairwise_disjoint(q, "quadruple members");
  // q0, q1 are triple members, q2, q3 their images under the flip element
  auto member = [&](const Checker::Hs& h) {
    for (const auto& m : t)
      if (m.set == h.set) return true;
    return false;
  };
  if (!member(q[0]) || !member(q[1])) Checker::fail("quadruple does not start with two triple members");
  Word f = k.word(c["flip"].value("element", json()), "/flip/element");
  const json& tr = c.value("transport", json());
  if (!tr.is_array() || tr.size() != 2) Checker::fail("/transport: expected two edges");
  for (int i = 0; i < 2; ++i) {
    json sub{{"image", c["quadruple"][2 + i]}, {"transport", tr[i]}};
    k.image(sub, f, q[i]);
  }
  auto pair_check = [&](const json& d, const Checker::Hs& kk, const Checker::Hs& hstar, const std::string& at) {
    check_one(k, d);
    auto dk = k.halfspace(d.value("k", json()), at + "/k");
    auto dh = k.halfspace(d.value("h", json()), at + "/h");
    if (dk.set != kk.set || dh.set != ~hstar.set) Checker::fail(at + ": does not double-skewer the paired half-spaces");
  };
  pair_check(c["first"], q[0], q[1], "/first");
  pair_check(c["second"], q[2], q[3], "/second");
  return "schottky: four pairwise disjoint half-spaces, each pair double-skewered";
}

std::string check_ss_pair(Checker& k, const json& c) {
  auto in = k.halfspace(c.value("inner", json()), "/inner");
  auto h = k.halfspace(c.value("h", json()), "/h");
  auto out = k.halfspace(c.value("outer", json()), "/outer");
  if (!proper_subset(in.set, h.set) || !proper_subset(h.set, out.set)) Checker::fail("the chain is not properly nested");
  if (auto why = k.strongly_separated(in.set, out.set)) Checker::fail("not strongly separated: " + *why);
  return "strongly separated pair around h";
}

std::string check_pencil(Checker& k, const json& c) {
  auto ch = halfspace_list(k, c, "chain", 0);
  for (std::size_t i = 0; i + 1 < ch.size(); ++i)
    if (!proper_subset(ch[i + 1].set, ch[i].set)) Checker::fail("chain link " + std::to_string(i) + " is not proper");
  return "pencil of " + std::to_string(ch.size()) + " nested half-spaces";
}

std::string check_decomposition(Checker& k, const json& c) {
  const json& fs = c.value("factors", json());
  if (!fs.is_array()) Checker::fail("/factors: expected an array");
  std::vector<std::vector<VertexSet>> sets;
  std::vector<VertexSet> all;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto hs = halfspace_array(k, fs[i], "/factors/" + std::to_string(i), 0);
    sets.emplace_back();
    for (auto& h : hs) {
      for (const auto& s : all)
        if (s == h.set || s == ~h.set) Checker::fail("a wall is listed twice");
      all.push_back(h.set);
      sets.back().push_back(h.set);
    }
  }
  if (all.size() != k.x_.wall_count()) Checker::fail("factors do not cover every wall");
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      for (const auto& a : sets[i])
        for (const auto& b : sets[j])
          if (!k.crosses(a, b)) Checker::fail("walls of factors " + std::to_string(i) + " and " + std::to_string(j) + " do not cross");
  return "product: " + std::to_string(sets.size()) + " classes of mutually crossing walls";
}

std::string check_one(Checker& k, const json& c) {
  if (!c.is_object()) Checker::fail("certificate is not an object");
  std::string want = io::digest(k.x_);
  if (c.value("complex", std::string()) != want)
    Checker::fail("digest mismatch: certificate refers to " + c.value("complex", std::string("?")) + ", complex is " + want);
  std::string type = c.value("type", std::string());
  if (type == "flip") return check_flip(k, c);
  if (type == "skewer") return check_skewer(k, c);
  if (type == "double_skewer") return check_double_skewer(k, c);
  if (type == "contracting") return check_contracting(k, c);
  if (type == "facing_triple") return check_facing(k, c);
  if (type == "schottky") return check_schottky(k, c);
  if (type == "ss_pair") return check_ss_pair(k, c);
  if (type == "pencil") return check_pencil(k, c);
  if (type == "decomposition") return check_decomposition(k, c);
  Checker::fail("unknown certificate type '" + type + "'");
}

json base(const CubeGraph& x, const std::string& type) { return json{{"type", type}, {"complex", io::digest(x)}}; }

}  // namespace

json halfspace_to_json(const CubeGraph& x, Halfspace h) {
  return json{{"wall", h.wall}, {"edge", edge_json(x, gate_edge(x, h))}};
}

Halfspace halfspace_from_json(const CubeGraph& x, const json& j, const std::string& at) {
  if (!j.is_object() || !j.contains("edge")) throw SchemaError(at.empty() ? "/" : at, "expected {wall, edge}");
  const json& e = j["edge"];
  if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
    throw SchemaError(at + "/edge", "expected [inside, outside]");
  auto a = x.find(e[0].get<std::string>()), b = x.find(e[1].get<std::string>());
  if (!a || !b) throw SchemaError(at + "/edge", "unknown vertex");
  auto id = x.edge_between(*a, *b);
  if (!id) throw SchemaError(at + "/edge", "not an edge");
  return x.halfspace_containing(*a, x.wall_of_edge(*id));
}

json to_json(const GroupModel& g, const SkewerCert& c) {
  const CubeGraph& x = g.space();
  Word p = c.n > 0 ? power(c.element, c.n) : power(c.element.inverse(), -c.n);
  json j = base(x, "skewer");
  j.update(transported(g, p, c.h, c.image));
  j["element"] = g.format(c.element);
  j["n"] = c.n;
  j["h"] = halfspace_to_json(x, c.h);
  j["witness"] = x.name(c.witness);
  return j;
}

json to_json(const GroupModel& g, const FlipCert& c) {
  const CubeGraph& x = g.space();
  json j = base(x, "flip");
  j.update(transported(g, c.element, c.h, c.image));
  j["element"] = g.format(c.element);
  j["h"] = halfspace_to_json(x, c.h);
  j["witness"] = x.name(c.witness);
  return j;
}

json to_json(const GroupModel& g, const DoubleSkewerCert& c) {
  const CubeGraph& x = g.space();
  json j = base(x, "double_skewer");
  j.update(transported(g, c.element, c.h, c.image));
  j["element"] = g.format(c.element);
  j["k"] = halfspace_to_json(x, c.k);
  j["h"] = halfspace_to_json(x, c.h);
  j["witness"] = x.name(c.witness);
  j["method"] = c.method;
  if (c.flip_g) j["flip_g"] = to_json(g, *c.flip_g);
  if (c.flip_a) j["flip_a"] = to_json(g, *c.flip_a);
  return j;
}

json to_json(const GroupModel& g, const ContractingCert& c) {
  const CubeGraph& x = g.space();
  Word p = c.n > 0 ? power(c.element, c.n) : power(c.element.inverse(), -c.n);
  json j = base(x, "contracting");
  j.update(transported(g, p, c.inner, c.image));
  j["element"] = g.format(c.element);
  j["n"] = c.n;
  j["inner"] = halfspace_to_json(x, c.inner);
  j["outer"] = halfspace_to_json(x, c.outer);
  j["witness"] = x.name(c.witness);
  return j;
}

json to_json(const GroupModel& g, const SchottkyCert& c) {
  const CubeGraph& x = g.space();
  json j = base(x, "schottky");
  for (const auto& h : c.triple) j["triple"].push_back(halfspace_to_json(x, h));
  j["flip"] = to_json(g, c.flip);
  for (int i = 0; i < 2; ++i) j["quadruple"].push_back(halfspace_to_json(x, c.quadruple[i]));
  for (int i = 0; i < 2; ++i) {
    json t = transported(g, c.flip.element, c.quadruple[i], c.quadruple[2 + i]);
    j["quadruple"].push_back(t["image"]);
    j["transport"].push_back(t["transport"]);
  }
  j["first"] = to_json(g, c.first);
  j["second"] = to_json(g, c.second);
  return j;
}

json to_json(const CubeGraph& x, const FacingTriple& t) {
  json j = base(x, "facing_triple");
  for (const auto& h : t.halfspaces) j["halfspaces"].push_back(halfspace_to_json(x, h));
  return j;
}

json to_json(const CubeGraph& x, const SSPair& p, Halfspace h) {
  json j = base(x, "ss_pair");
  j["inner"] = halfspace_to_json(x, p.inner);
  j["h"] = halfspace_to_json(x, h);
  j["outer"] = halfspace_to_json(x, p.outer);
  return j;
}

json to_json(const CubeGraph& x, const Pencil& p) {
  json j = base(x, "pencil");
  j["chain"] = json::array();
  for (const auto& h : p.chain) j["chain"].push_back(halfspace_to_json(x, h));
  return j;
}

json to_json(const CubeGraph& x, const Decomposition& d) {
  json j = base(x, "decomposition");
  j["factors"] = json::array();
  for (const auto& f : d.factors) {
    json a = json::array();
    for (WallId w : f) a.push_back(halfspace_to_json(x, {w, 0}));
    j["factors"].push_back(a);
  }
  return j;
}

CheckResult check_certificate(const json& c, const CubeGraph& x, const GroupModel* g) {
  Checker k(x, g);
  try {
    return {true, check_one(k, c)};
  } catch (const Failure& f) {
    return {false, f.why};
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
}

json canonical(const json& c, const CubeGraph& x) {
  if (c.is_array()) {
    json r = json::array();
    for (const auto& e : c) r.push_back(canonical(e, x));
    return r;
  }
  if (!c.is_object()) return c;
  if (c.contains("wall") && c.contains("edge")) return edge_json(x, gate_edge(x, halfspace_from_json(x, c)));
  json r = json::object();
  for (auto it = c.begin(); it != c.end(); ++it) {
    const std::string& k = it.key();
    if (k == "transport" || k == "witness" || k == "complex" || k == "checked" || k == "check_error") continue;
    r[k] = canonical(it.value(), x);
  }
  return r;
}

json checked(json c, const CubeGraph& x, const GroupModel* g) {
  c.erase("checked");
  c.erase("check_error");
  auto r = check_certificate(c, x, g);
  c["checked"] = r.ok;
  if (!r.ok) c["check_error"] = r.explanation;
  return c;
}

}  // namespace cubecore::cert
