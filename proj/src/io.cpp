#include "cubecore/io.hpp"

#include "cubecore/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

namespace cubecore::io {

namespace {

std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string ptr(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& need(const json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) throw SchemaError(at.empty() ? "/" : at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(ptr(at, key), "missing field");
  return *it;
}

const json& need_array(const json& j, const std::string& at) {
  if (!j.is_array()) throw SchemaError(at, "expected an array");
  return j;
}

std::string need_string(const json& j, const std::string& at) {
  if (!j.is_string()) throw SchemaError(at, "expected a string");
  return j.get<std::string>();
}

int need_int(const json& j, const std::string& at) {
  if (!j.is_number_integer()) throw SchemaError(at, "expected an integer");
  return j.get<int>();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw SchemaError(origin + ":line " + std::to_string(line), "malformed JSON");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ValidationError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot rename into " + path + ": " + ec.message());
  }
}

// nlohmann's default object_t is std::map, so keys come out sorted.
std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// complex

json complex_to_json(const CubeGraph& x) {
  json j;
  j["vertices"] = x.names();
  json edges = json::array();
  for (auto [a, b] : x.edges()) edges.push_back({x.name(a), x.name(b)});
  j["edges"] = edges;
  if (x.has_frontier()) {
    json f = json::array();
    for (VertexId v = 0; v < x.vertex_count(); ++v)
      if (x.frontier().test(v)) f.push_back(x.name(v));
    j["frontier"] = f;
  }
  const auto& p = x.provenance();
  if (p.basepoint) j["basepoint"] = x.name(*p.basepoint);
  if (p.radius) j["radius"] = *p.radius;
  return j;
}

CubeGraph complex_from_json(const json& j) {
  auto r = raw_complex_from_json(j);
  return CubeGraph::build(r.graph, r.provenance, r.frontier);
}

RawComplex raw_complex_from_json(const json& j) {
  SimpleGraph g;
  const json& vs = need_array(need(j, "vertices", ""), "/vertices");
  std::unordered_map<std::string, VertexId> id;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string n = need_string(vs[i], ptr("/vertices", i));
    if (!id.emplace(n, static_cast<VertexId>(i)).second)
      throw SchemaError(ptr("/vertices", i), "duplicate vertex '" + n + "'");
    g.names.push_back(n);
  }
  auto lookup = [&](const json& v, const std::string& at) {
    std::string n = need_string(v, at);
    auto it = id.find(n);
    if (it == id.end()) throw SchemaError(at, "unknown vertex '" + n + "'");
    return it->second;
  };
  const json& es = need_array(need(j, "edges", ""), "/edges");
  std::set<std::pair<VertexId, VertexId>> seen;
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string at = ptr("/edges", i);
    if (!es[i].is_array() || es[i].size() != 2) throw SchemaError(at, "edge must be a pair of vertex names");
    VertexId a = lookup(es[i][0], ptr(at, 0));
    VertexId b = lookup(es[i][1], ptr(at, 1));
    if (a == b) throw SchemaError(at, "loop edge");
    if (!seen.insert(std::minmax(a, b)).second) throw SchemaError(at, "duplicate edge");
    g.edges.emplace_back(a, b);
  }
  Provenance prov;
  VertexSet frontier;
  if (auto it = j.find("frontier"); it != j.end()) {
    need_array(*it, "/frontier");
    frontier = VertexSet(g.vertex_count());
    for (std::size_t i = 0; i < it->size(); ++i) frontier.set(lookup((*it)[i], ptr("/frontier", i)));
  }
  if (auto it = j.find("basepoint"); it != j.end()) {
    prov.kind = "window";
    prov.basepoint = lookup(*it, "/basepoint");
  }
  if (auto it = j.find("radius"); it != j.end()) prov.radius = need_int(*it, "/radius");
  return {std::move(g), std::move(frontier), std::move(prov)};
}

std::string digest(const CubeGraph& x) {
  json j;
  j["vertices"] = x.names();
  json edges = json::array();
  for (auto [a, b] : x.edges()) edges.push_back({x.name(a), x.name(b)});
  j["edges"] = edges;
  json f = json::array();
  for (VertexId v = 0; v < x.vertex_count(); ++v)
    if (x.has_frontier() && x.frontier().test(v)) f.push_back(x.name(v));
  j["frontier"] = f;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return std::string("fnv1a64:") + buf;
}

// ---------------------------------------------------------------------------
// pocset

json pocset_to_json(const Pocset& p) {
  json j;
  json pairs = json::array();
  for (std::size_t i = 0; i < p.pair_count(); ++i) pairs.push_back({p.name(2 * i), p.name(2 * i + 1)});
  j["pairs"] = pairs;
  json less = json::array();
  for (auto [a, b] : p.cover_relations()) less.push_back({p.name(a), p.name(b)});
  j["less"] = less;
  return j;
}

Pocset pocset_from_json(const json& j) {
  const json& ps = need_array(need(j, "pairs", ""), "/pairs");
  std::vector<std::pair<std::string, std::string>> pairs;
  std::unordered_map<std::string, ElementId> id;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::string at = ptr("/pairs", i);
    if (!ps[i].is_array() || ps[i].size() != 2) throw SchemaError(at, "pair must hold two names");
    std::string a = need_string(ps[i][0], ptr(at, 0)), b = need_string(ps[i][1], ptr(at, 1));
    if (a == b) throw SchemaError(at, "an element cannot be its own involute");
    for (auto [n, k] : {std::pair{a, 0}, std::pair{b, 1}})
      if (!id.emplace(n, static_cast<ElementId>(2 * i + k)).second)
        throw SchemaError(ptr(at, k), "duplicate element '" + n + "'");
    pairs.emplace_back(a, b);
  }
  std::vector<std::pair<ElementId, ElementId>> less;
  if (auto it = j.find("less"); it != j.end()) {
    need_array(*it, "/less");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string at = ptr("/less", i);
      const json& r = (*it)[i];
      if (!r.is_array() || r.size() != 2) throw SchemaError(at, "relation must hold two names");
      ElementId e[2];
      for (int k = 0; k < 2; ++k) {
        std::string n = need_string(r[k], ptr(at, k));
        auto f = id.find(n);
        if (f == id.end()) throw SchemaError(ptr(at, k), "unknown element '" + n + "'");
        e[k] = f->second;
      }
      less.emplace_back(e[0], e[1]);
    }
  }
  return Pocset::from_relations(pairs, less);
}

// ---------------------------------------------------------------------------
// base complex

json base_to_json(const BaseComplex& b) {
  json j;
  j["vertices"] = b.vertices;
  json edges = json::array();
  for (const auto& e : b.edges)
    edges.push_back({{"name", e.name}, {"from", b.vertices[e.from]}, {"to", b.vertices[e.to]}});
  j["edges"] = edges;
  json squares = json::array();
  for (const auto& s : b.squares) {
    json q = json::array();
    for (Code c : s) q.push_back(b.code_name(c));
    squares.push_back(q);
  }
  j["squares"] = squares;
  json cubes = json::array();
  for (const auto& c : b.cubes) {
    json corners = json::array(), es = json::array();
    for (VertexId v : c.corners) corners.push_back(b.vertices[v]);
    for (Code e : c.edges) es.push_back(b.code_name(e));
    cubes.push_back({{"corners", corners}, {"edges", es}});
  }
  j["cubes"] = cubes;
  return j;
}

BaseComplex base_from_json(const json& j) {
  BaseComplex b;
  const json& vs = need_array(need(j, "vertices", ""), "/vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string n = need_string(vs[i], ptr("/vertices", i));
    if (b.find_vertex(n)) throw SchemaError(ptr("/vertices", i), "duplicate vertex '" + n + "'");
    b.vertices.push_back(n);
  }
  auto vertex = [&](const json& v, const std::string& at) {
    std::string n = need_string(v, at);
    auto id = b.find_vertex(n);
    if (!id) throw SchemaError(at, "unknown vertex '" + n + "'");
    return *id;
  };
  const json& es = need_array(need(j, "edges", ""), "/edges");
  std::set<std::string> names;
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string at = ptr("/edges", i);
    BaseEdge e;
    e.name = need_string(need(es[i], "name", at), ptr(at, "name"));
    if (e.name.empty() || e.name[0] == '-') throw SchemaError(ptr(at, "name"), "edge names must not start with '-'");
    if (!names.insert(e.name).second) throw SchemaError(ptr(at, "name"), "duplicate edge '" + e.name + "'");
    e.from = vertex(need(es[i], "from", at), ptr(at, "from"));
    e.to = vertex(need(es[i], "to", at), ptr(at, "to"));
    b.edges.push_back(e);
  }
  auto code = [&](const json& c, const std::string& at) {
    std::string n = need_string(c, at);
    try {
      return b.parse_code(n);
    } catch (const ValidationError&) {
      throw SchemaError(at, "unknown edge '" + n + "'");
    }
  };
  if (auto it = j.find("squares"); it != j.end()) {
    need_array(*it, "/squares");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string at = ptr("/squares", i);
      const json& s = (*it)[i];
      if (!s.is_array() || s.size() != 4) throw SchemaError(at, "square must list four signed edge names");
      std::array<Code, 4> q{};
      for (int k = 0; k < 4; ++k) q[k] = code(s[k], ptr(at, k));
      for (int k = 0; k < 4; ++k)
        if (b.target(q[k]) != b.start(q[(k + 1) % 4])) throw SchemaError(ptr(at, k), "boundary word is not closed");
      b.squares.push_back(q);
    }
  }
  if (auto it = j.find("cubes"); it != j.end()) {
    need_array(*it, "/cubes");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string at = ptr("/cubes", i);
      BaseCube c;
      const json& cs = need_array(need((*it)[i], "corners", at), ptr(at, "corners"));
      std::size_t n = cs.size();
      int dim = 0;
      while ((std::size_t{1} << dim) < n) ++dim;
      if (n < 8 || (std::size_t{1} << dim) != n) throw SchemaError(ptr(at, "corners"), "corner count must be 2^k with k >= 3");
      c.dim = dim;
      for (std::size_t k = 0; k < n; ++k) c.corners.push_back(vertex(cs[k], ptr(ptr(at, "corners"), k)));
      const json& ce = need_array(need((*it)[i], "edges", at), ptr(at, "edges"));
      if (ce.size() != n * dim / 2) throw SchemaError(ptr(at, "edges"), "expected " + std::to_string(n * dim / 2) + " edges");
      for (std::size_t k = 0; k < ce.size(); ++k) c.edges.push_back(code(ce[k], ptr(ptr(at, "edges"), k)));
      b.cubes.push_back(c);
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// groups

json group_to_json(const GroupSpec& g) {
  json gens = json::array();
  for (const auto& s : g.generators) {
    json e{{"name", s.name}, {"type", s.type}};
    if (s.type == "permutation") e["map"] = s.map;
    else e["edges"] = s.edges;
    gens.push_back(e);
  }
  return json{{"generators", gens}};
}

GroupSpec group_from_json(const json& j) {
  GroupSpec g;
  const json& gs = need_array(need(j, "generators", ""), "/generators");
  std::set<std::string> names;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    std::string at = ptr("/generators", i);
    GeneratorSpec s;
    s.type = need_string(need(gs[i], "type", at), ptr(at, "type"));
    if (auto it = gs[i].find("name"); it != gs[i].end()) s.name = need_string(*it, ptr(at, "name"));
    else s.name = "g" + std::to_string(i);
    if (s.name.empty() || s.name == "e" || s.name.find_first_of(". *'^") != std::string::npos ||
        (s.name.size() > 2 && s.name.compare(s.name.size() - 2, 2, "-1") == 0))
      throw SchemaError(ptr(at, "name"), "unusable generator name '" + s.name + "'");
    if (!names.insert(s.name).second) throw SchemaError(ptr(at, "name"), "duplicate generator '" + s.name + "'");
    if (s.type == "permutation") {
      const json& m = need(gs[i], "map", at);
      if (!m.is_object()) throw SchemaError(ptr(at, "map"), "expected an object");
      for (auto it = m.begin(); it != m.end(); ++it) s.map[it.key()] = need_string(it.value(), ptr(ptr(at, "map"), it.key()));
    } else if (s.type == "loop") {
      const json& es = need_array(need(gs[i], "edges", at), ptr(at, "edges"));
      for (std::size_t k = 0; k < es.size(); ++k) s.edges.push_back(need_string(es[k], ptr(ptr(at, "edges"), k)));
    } else {
      throw SchemaError(ptr(at, "type"), "unknown generator type '" + s.type + "'");
    }
    g.generators.push_back(std::move(s));
  }
  return g;
}

std::unique_ptr<GroupModel> make_group(const CubeGraph& x, const GroupSpec& spec) {
  std::vector<std::string> names;
  std::vector<PartialMap> maps;
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    const auto& s = spec.generators[i];
    std::string at = ptr("/generators", i);
    if (s.type != "permutation") throw SchemaError(ptr(at, "type"), "loop generators need a base complex");
    PartialMap m;
    m.image.assign(x.vertex_count(), kUndefined);
    for (const auto& [from, to] : s.map) {
      auto a = x.find(from);
      if (!a) throw SchemaError(ptr(ptr(at, "map"), from), "unknown vertex '" + from + "'");
      auto b = x.find(to);
      if (!b) throw SchemaError(ptr(ptr(at, "map"), from), "unknown vertex '" + to + "'");
      m.image[*a] = *b;
    }
    auto rep = verify_automorphism(x, m);
    if (!rep.valid) throw SchemaError(at, "not an automorphism: " + rep.reason);
    names.push_back(s.name);
    maps.push_back(std::move(m));
  }
  return std::make_unique<PermutationGroup>(x, names, maps);
}

std::unique_ptr<DeckGroup> make_deck_group(Developer& dev, const Window& w, const GroupSpec& spec) {
  std::vector<std::string> names;
  std::vector<std::vector<Code>> loops;
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    const auto& s = spec.generators[i];
    std::string at = ptr("/generators", i);
    if (s.type != "loop") throw SchemaError(ptr(at, "type"), "windows take loop generators");
    std::vector<Code> loop;
    for (std::size_t k = 0; k < s.edges.size(); ++k) {
      try {
        loop.push_back(dev.base().parse_code(s.edges[k]));
      } catch (const ValidationError&) {
        throw SchemaError(ptr(ptr(at, "edges"), k), "unknown edge '" + s.edges[k] + "'");
      }
    }
    try {
      dev.check_loop(loop);
    } catch (const ValidationError& e) {
      throw SchemaError(ptr(at, "edges"), e.what());
    }
    names.push_back(s.name);
    loops.push_back(std::move(loop));
  }
  return std::make_unique<DeckGroup>(dev, w, names, loops);
}

Word parse_word(const GroupModel& g, const std::string& text, const std::string& location) {
  try {
    return g.parse(text);
  } catch (const ValidationError& e) {
    throw SchemaError(location, e.what());
  }
}

}  // namespace cubecore::io
