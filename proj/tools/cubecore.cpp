// cubecore command line: every command prints one JSON report on stdout.
// Exit codes: 0 result, 3 inconclusive, 4 validation failure, 5 budget.

#include "cubecore/actions.hpp"
#include "cubecore/bases.hpp"
#include "cubecore/certificates.hpp"
#include "cubecore/developer.hpp"
#include "cubecore/errors.hpp"
#include "cubecore/generators.hpp"
#include "cubecore/io.hpp"
#include "cubecore/pocset.hpp"
#include "cubecore/quotients.hpp"
#include "cubecore/walls.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace cubecore;
using io::json;

namespace {

struct Options {
  std::string command;
  std::string complex_file, gen, base, group_file, pocset_file, cert_file, out;
  std::string h, k, element, path, family;
  int radius = 3;
  int window = 6;
  int depth = 1;
  int nmax = 4;
  int pencil_k = 3;
  int stability = 0;
  std::size_t budget = 250000;
  std::uint64_t seed = 0x5eed;
  bool trace = false;
};

// Exit status carried with a report.
enum class Status { ok, inconclusive, invalid };

// The space a command works on: an explicit complex or a developed window.
struct Space {
  std::optional<CubeGraph> owned;
  std::unique_ptr<Developer> dev;
  std::optional<Window> win;
  std::unique_ptr<GroupModel> group;
  json inputs = json::object();

  const CubeGraph& x() const { return win ? win->graph : *owned; }
  const GroupModel& g() const { return *group; }
  bool windowed() const { return win.has_value(); }
};

struct Outcome {
  json result = json::object();
  json certificates = json::array();
  Status status = Status::ok;
  bool window_relative = false;
  // window-independent answer for the stability protocol
  json answer = json::object();
};

BaseComplex load_base(const std::string& spec) {
  if (std::filesystem::exists(spec)) return io::base_from_json(io::read_json_file(spec));
  return bases::builtin(spec);
}

CubeGraph load_complex_arg(const std::string& spec);

// "product(A,B)" over builtin specs or files, otherwise a builtin generator
CubeGraph generate(const std::string& spec) {
  if (spec.rfind("product(", 0) == 0 && spec.back() == ')') {
    std::string inner = spec.substr(8, spec.size() - 9);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0)
        return gen::product(load_complex_arg(inner.substr(0, i)), load_complex_arg(inner.substr(i + 1)));
    }
    throw ValidationError("product needs two arguments: " + spec);
  }
  return gen::generate(spec);
}

CubeGraph load_complex_arg(const std::string& spec) {
  if (std::filesystem::exists(spec)) return io::complex_from_json(io::read_json_file(spec));
  return generate(spec);
}

Space load_space(const Options& o, int window_radius) {
  Space s;
  if (!o.base.empty()) {
    s.dev = std::make_unique<Developer>(load_base(o.base), 0);
    s.win = s.dev->window(window_radius, o.budget);
    s.inputs["base"] = o.base;
    if (!o.group_file.empty()) {
      s.group = io::make_deck_group(*s.dev, *s.win, io::group_from_json(io::read_json_file(o.group_file)));
      s.inputs["group"] = o.group_file;
    } else {
      s.group = edge_loop_group(*s.dev, *s.win);
    }
  } else {
    if (!o.complex_file.empty()) {
      s.owned = io::complex_from_json(io::read_json_file(o.complex_file));
      s.inputs["complex_file"] = o.complex_file;
    } else if (!o.gen.empty()) {
      s.owned = generate(o.gen);
      s.inputs["generator"] = o.gen;
    } else {
      throw ValidationError("one of --complex, --gen, --base is required");
    }
    if (!o.group_file.empty()) {
      s.group = io::make_group(*s.owned, io::group_from_json(io::read_json_file(o.group_file)));
      s.inputs["group"] = o.group_file;
    } else {
      s.group = trivial_group(*s.owned);
    }
  }
  s.inputs["complex"] = io::digest(s.x());
  return s;
}

std::pair<VertexId, VertexId> parse_edge(const CubeGraph& x, const std::string& text, const std::string& flag) {
  // IN->OUT; names may contain '-' or '>', so try every split
  for (std::size_t p = text.find("->"); p != std::string::npos; p = text.find("->", p + 1)) {
    auto a = x.find(text.substr(0, p)), b = x.find(text.substr(p + 2));
    if (a && b) {
      if (!x.adjacent(*a, *b)) throw SchemaError(flag, "'" + text + "' is not an edge");
      return {*a, *b};
    }
  }
  throw SchemaError(flag, "expected IN->OUT with two vertex names, got '" + text + "'");
}

// side containing IN of the edge IN->OUT
Halfspace parse_halfspace(const CubeGraph& x, const std::string& text, const std::string& flag) {
  auto [a, b] = parse_edge(x, text, flag);
  return x.halfspace_containing(a, x.wall_of_edge(*x.edge_between(a, b)));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> r;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      r.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !r.empty()) r.push_back(cur);
  return r;
}

json names(const CubeGraph& x, const VertexSet& s) {
  json r = json::array();
  for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v)) r.push_back(x.name(static_cast<VertexId>(v)));
  return r;
}

json hs_json(const CubeGraph& x, Halfspace h) { return cert::halfspace_to_json(x, h); }

void add_cert(Outcome& out, json c, const CubeGraph& x, const GroupModel* g) {
  c = cert::checked(std::move(c), x, g);
  out.answer["certificates"].push_back(cert::canonical(c, x));
  out.certificates.push_back(std::move(c));
}

// ---------------------------------------------------------------------------
// commands on a loaded space

Outcome cmd_walls(const Options&, const Space& s) {
  Outcome out;
  const auto& x = s.x();
  json ws = json::array();
  std::size_t crossing = 0;
  for (WallId w = 0; w < x.wall_count(); ++w) {
    ws.push_back({{"id", w},
                  {"gate", hs_json(x, {w, 0})["edge"]},
                  {"dual_edges", x.wall(w).dual_edges.size()},
                  {"sides", {x.wall(w).side[0].count(), x.wall(w).side[1].count()}},
                  {"crosses", x.crossing_row(w).count()}});
    crossing += x.crossing_row(w).count();
  }
  out.result = {{"walls", ws}, {"wall_count", x.wall_count()}, {"crossing_pairs", crossing / 2}, {"dimension", dimension(x)}};
  out.window_relative = x.has_frontier();
  return out;
}

Outcome cmd_decompose(const Options&, const Space& s) {
  Outcome out;
  const auto& x = s.x();
  auto d = decompose(x);
  json fs = json::array();
  for (std::size_t i = 0; i < d.factors.size(); ++i)
    fs.push_back({{"walls", d.factors[i]}, {"vertices", d.factor_quotients[i].quotient.vertex_count()}});
  out.result = {{"factors", fs},
                {"factor_count", d.factors.size()},
                {"product_verified", d.product_verified},
                {"irreducible", d.factors.size() <= 1}};
  out.answer["factor_count"] = d.factors.size();
  add_cert(out, cert::to_json(x, d), x, nullptr);
  out.window_relative = x.has_frontier();
  return out;
}

Outcome cmd_ss_pair(const Options& o, const Space& s) {
  Outcome out;
  const auto& x = s.x();
  std::optional<SSPair> p;
  Halfspace h{};
  if (!o.h.empty()) {
    h = parse_halfspace(x, o.h, "--h");
    p = find_ss_pair_through(x, h);
  } else {
    for (std::uint32_t i = 0; i < 2 * x.wall_count() && !p; ++i) {
      h = Halfspace::from_index(i);
      p = find_ss_pair_through(x, h);
    }
  }
  out.result["found"] = p.has_value();
  out.answer["found"] = p.has_value();
  if (p) add_cert(out, cert::to_json(x, *p, h), x, nullptr);
  out.window_relative = x.has_frontier();
  if (!p && out.window_relative) out.status = Status::inconclusive;
  return out;
}

Outcome cmd_facing_triple(const Options&, const Space& s) {
  Outcome out;
  const auto& x = s.x();
  auto t = facing_triple(x);
  out.result["found"] = t.has_value();
  out.answer["found"] = t.has_value();
  if (t) add_cert(out, cert::to_json(x, *t), x, nullptr);
  out.window_relative = x.has_frontier();
  if (!t && out.window_relative) out.status = Status::inconclusive;
  return out;
}

Outcome cmd_pencil(const Options& o, const Space& s) {
  Outcome out;
  const auto& x = s.x();
  if (o.path.empty()) throw SchemaError("--path", "a geodesic is required (names separated by ';')");
  std::vector<VertexId> geo;
  for (const auto& n : split(o.path, ';')) {
    auto v = x.find(n);
    if (!v) throw SchemaError("--path", "unknown vertex '" + n + "'");
    geo.push_back(*v);
  }
  auto r = extract_pencil(x, geo, o.pencil_k);
  out.result = {{"found", r.pencil.has_value()},
                {"walls_crossed", r.walls_crossed},
                {"ramsey_threshold", r.ramsey_threshold},
                {"guaranteed", r.guaranteed}};
  if (r.pencil) add_cert(out, cert::to_json(x, *r.pencil), x, nullptr);
  else out.status = Status::inconclusive;
  return out;
}

Outcome cmd_helly(const Options& o, const Space& s) {
  Outcome out;
  const auto& x = s.x();
  std::vector<Halfspace> fam;
  for (const auto& t : split(o.family, ';'))
    if (!t.empty()) fam.push_back(parse_halfspace(x, t, "--halfspaces"));
  auto r = helly_point(x, fam);
  out.result["family_size"] = fam.size();
  if (r.point) out.result["point"] = x.name(*r.point);
  if (r.disjoint_pair) out.result["disjoint_pair"] = {hs_json(x, r.disjoint_pair->first), hs_json(x, r.disjoint_pair->second)};
  return out;
}

json classification_json(const CubeGraph& x, const Classification& c) {
  json ws = json::array();
  std::map<std::string, int> counts;
  for (const auto& w : c.walls) {
    ws.push_back({{"wall", w.wall},
                  {"gate", hs_json(x, {w.wall, 0})["edge"]},
                  {"type", to_string(w.type)},
                  {"deep", {w.deep[0], w.deep[1]}},
                  {"reach_interior", {w.reach_interior[0], w.reach_interior[1]}},
                  {"reach_frontier", {w.reach_frontier[0], w.reach_frontier[1]}}});
    counts[to_string(w.type)]++;
  }
  return {{"depth", c.depth}, {"walls", ws}, {"counts", counts}, {"witnesses", c.witnesses.count()}};
}

Outcome cmd_classify(const Options& o, const Space& s) {
  Outcome out;
  auto c = classify_walls(s.g(), o.depth);
  out.result = classification_json(s.x(), c);
  // walls next to the basepoint by gate names, so radii can be compared
  auto d = s.x().distances_from(basepoint_of(s.x()));
  for (const auto& w : c.walls) {
    auto gate = hs_json(s.x(), {w.wall, 0})["edge"];
    if (d[*s.x().find(gate[0])] < 2)
      out.answer["near_walls"].push_back({gate, to_string(w.type)});
  }
  out.window_relative = c.window_relative;
  return out;
}

Outcome cmd_core(const Options& o, const Space& s) {
  Outcome out;
  auto c = classify_walls(s.g(), o.depth);
  auto q = essential_core(s.g(), c);
  out.result = {{"essential_walls", q.kept},
                {"vertices", q.quotient.vertex_count()},
                {"walls", q.quotient.wall_count()},
                {"core", io::digest(q.quotient)}};
  if (!o.out.empty()) io::write_file_atomic(o.out, io::dump(io::complex_to_json(q.quotient)));
  out.window_relative = c.window_relative;
  return out;
}

Outcome cmd_prune(const Options& o, const Space& s) {
  Outcome out;
  const auto& x = s.x();
  auto r = prune(s.g(), o.depth);
  json sizes = json::array();
  for (const auto& c : r.chain) sizes.push_back(c.count());
  out.result = {{"rounds", r.chain.size() - 1},
                {"chain_sizes", sizes},
                {"final", names(x, r.chain.back())},
                {"inconclusive", r.inconclusive}};
  if (r.inconclusive) {
    out.result["reason"] = r.reason;
    out.status = Status::inconclusive;
  }
  if (o.trace) out.result["log"] = r.log;
  out.window_relative = r.window_relative;
  return out;
}

Outcome cmd_develop(const Options& o, const Space& s) {
  Outcome out;
  const auto& w = *s.win;
  out.result = {{"vertices", w.graph.vertex_count()},
                {"edges", w.graph.edge_count()},
                {"walls", w.graph.wall_count()},
                {"radius", w.radius},
                {"requested_radius", w.requested_radius},
                {"truncated", w.truncated},
                {"frontier", w.graph.frontier().count()},
                {"window", io::digest(w.graph)}};
  if (o.trace) out.result["log"] = w.log;
  if (!o.out.empty()) io::write_file_atomic(o.out, io::dump(io::complex_to_json(w.graph)));
  out.window_relative = true;
  return out;
}

Outcome cmd_flip(const Options& o, const Space& s) {
  Outcome out;
  if (o.h.empty()) throw SchemaError("--h", "a half-space IN->OUT is required");
  Halfspace h = parse_halfspace(s.x(), o.h, "--h");
  auto f = find_flip(s.g(), h, o.radius);
  out.result["found"] = f.has_value();
  out.answer["found"] = f.has_value();
  if (f) add_cert(out, cert::to_json(s.g(), *f), s.x(), &s.g());
  out.window_relative = !s.g().exact();
  if (!f) out.status = out.window_relative ? Status::inconclusive : Status::ok;
  return out;
}

Outcome cmd_dskew(const Options& o, const Space& s) {
  Outcome out;
  if (o.h.empty() || o.k.empty()) throw SchemaError("--k", "half-spaces --k and --h (IN->OUT) are required");
  Halfspace k = parse_halfspace(s.x(), o.k, "--k"), h = parse_halfspace(s.x(), o.h, "--h");
  auto r = double_skewer(s.g(), k, h, o.radius);
  out.result["found"] = r.cert.has_value();
  out.answer["found"] = r.cert.has_value();
  if (r.cert) {
    out.result["method"] = r.cert->method;
    add_cert(out, cert::to_json(s.g(), *r.cert), s.x(), &s.g());
  } else {
    out.status = Status::inconclusive;
  }
  if (o.trace) out.result["log"] = r.log;
  out.window_relative = !s.g().exact();
  return out;
}

Outcome cmd_contracting(const Options& o, const Space& s) {
  Outcome out;
  ContractingResult r;
  if (!o.element.empty()) r = contracting_certificate(s.g(), io::parse_word(s.g(), o.element, "--element"), o.nmax);
  else if (!o.h.empty()) r = contracting_certificate(s.g(), parse_halfspace(s.x(), o.h, "--h"), o.radius);
  else r = contracting_certificate(s.g(), o.radius);
  out.result["found"] = r.cert.has_value();
  out.answer["found"] = r.cert.has_value();
  if (r.cert) {
    add_cert(out, cert::to_json(s.g(), *r.cert), s.x(), &s.g());
    auto p = contraction_profile(s.g(), *r.cert);
    out.result["profile"] = {{"inconclusive", p.inconclusive},
                             {"reason", p.reason},
                             {"period", p.period},
                             {"orbit_walls", p.orbit_walls},
                             {"triples", p.triples},
                             {"crossing_points", p.crossing_points},
                             {"max_axis_distance", p.max_axis_distance},
                             {"bound_holds", p.bound_holds}};
    out.answer["bound_holds"] = p.bound_holds;
  } else {
    out.result["reason"] = r.reason;
    out.answer["reason"] = r.reason;
    out.status = Status::inconclusive;
  }
  if (o.trace) out.result["log"] = r.log;
  out.window_relative = !s.g().exact();
  return out;
}

Outcome cmd_schottky(const Options& o, const Space& s) {
  Outcome out;
  auto r = schottky_pair(s.g(), o.radius);
  out.result["found"] = r.cert.has_value();
  out.answer["found"] = r.cert.has_value();
  if (r.cert) {
    add_cert(out, cert::to_json(s.g(), *r.cert), s.x(), &s.g());
  } else {
    out.result["stage"] = r.stage;
    out.answer["stage"] = r.stage;
    out.status = Status::inconclusive;
  }
  if (o.trace) out.result["log"] = r.log;
  out.window_relative = !s.g().exact();
  return out;
}

Outcome cmd_rank_rigidity(const Options& o, const Space& s) {
  Outcome out;
  auto r = rank_rigidity(s.g(), o.radius, o.depth);
  out.result = {{"outcome", r.outcome},
                {"stage", r.stage},
                {"prune_rounds", r.prune_rounds},
                {"core_vertices", r.core_vertices},
                {"core_is_input", r.core_is_input}};
  out.answer["outcome"] = r.outcome;
  // certificates live on the core, which may be the input itself
  const GroupModel* cg = r.core_group ? r.core_group.get() : &s.g();
  const CubeGraph* core = &cg->space();
  if (r.outcome == "product") {
    json fs = json::array();
    for (const auto& f : r.decomposition.factors) fs.push_back(f.size());
    out.result["factor_walls"] = fs;
    out.answer["factor_count"] = r.decomposition.factors.size();
    add_cert(out, cert::to_json(*core, r.decomposition), *core, nullptr);
  }
  if (r.outcome == "contracting") {
    json ws = json::array();
    for (const auto& w : r.witnesses) {
      ws.push_back({{"orbit_size", w.orbit.size()}, {"element", cg->format(w.cert.element)}});
      add_cert(out, cert::to_json(*cg, w.cert), *core, cg);
    }
    out.result["witnesses"] = ws;
  }
  if (r.outcome == "inconclusive") out.status = Status::inconclusive;
  if (o.trace) out.result["log"] = r.log;
  out.window_relative = r.window_relative;
  return out;
}

Outcome cmd_regular(const Options& o, const Space& s) {
  Outcome out;
  auto r = regular_element(s.g(), o.radius, o.nmax);
  out.result = {{"found", r.element.has_value()},
                {"generators_preserve_factors", r.generators_preserve_factors},
                {"words_tried", r.words_tried}};
  out.answer["found"] = r.element.has_value();
  if (r.element) {
    out.result["element"] = s.g().format(*r.element);
    out.answer["element"] = s.g().format(*r.element);
    for (std::size_t i = 0; i < r.per_factor.size(); ++i)
      add_cert(out, cert::to_json(*r.factor_groups[i], r.per_factor[i]), r.factor_groups[i]->space(),
               r.factor_groups[i].get());
  } else {
    out.result["reason"] = r.reason;
    out.status = Status::inconclusive;
  }
  out.window_relative = !s.g().exact();
  return out;
}

Outcome cmd_check_cert(const Options& o, const Space& s) {
  Outcome out;
  if (o.cert_file.empty()) throw SchemaError("--cert", "a certificate file is required");
  auto c = io::read_json_file(o.cert_file);
  auto r = cert::check_certificate(c, s.x(), &s.g());
  out.result = {{"accepted", r.ok}, {"explanation", r.explanation}, {"type", c.value("type", std::string())}};
  if (!r.ok) out.status = Status::invalid;
  out.window_relative = s.x().has_frontier();
  return out;
}

using Command = Outcome (*)(const Options&, const Space&);

const std::map<std::string, Command>& space_commands() {
  static const std::map<std::string, Command> m = {
      {"walls", cmd_walls},
      {"decompose", cmd_decompose},
      {"ss-pair", cmd_ss_pair},
      {"facing-triple", cmd_facing_triple},
      {"pencil", cmd_pencil},
      {"helly", cmd_helly},
      {"classify", cmd_classify},
      {"core", cmd_core},
      {"prune", cmd_prune},
      {"develop", cmd_develop},
      {"flip", cmd_flip},
      {"dskew", cmd_dskew},
      {"contracting", cmd_contracting},
      {"schottky", cmd_schottky},
      {"rank-rigidity", cmd_rank_rigidity},
      {"regular", cmd_regular},
      {"check-cert", cmd_check_cert},
  };
  return m;
}

// ---------------------------------------------------------------------------
// commands without a space

Outcome cmd_verify(const Options& o, json& inputs) {
  Outcome out;
  if (!o.pocset_file.empty()) {
    auto p = io::pocset_from_json(io::read_json_file(o.pocset_file));
    inputs["pocset"] = o.pocset_file;
    auto r = verify_pocset(p);
    out.result = {{"kind", "pocset"}, {"valid", r.valid}, {"width", r.width}, {"max_interval", r.max_interval}};
    if (!r.valid) {
      out.result["reason"] = r.reason;
      if (r.offending) out.result["offending"] = {p.name(r.offending->first), p.name(r.offending->second)};
      out.status = Status::invalid;
    }
    return out;
  }
  if (!o.base.empty()) {
    auto b = load_base(o.base);
    inputs["base"] = o.base;
    auto r = check_nonpositively_curved(b);
    out.result = {{"kind", "base"}, {"valid", r.valid}};
    if (!r.valid) {
      out.result["reason"] = r.reason;
      out.result["vertex"] = b.vertices[r.vertex];
      json simplex = json::array();
      for (Code c : r.simplex) simplex.push_back(b.code_name(c));
      out.result["simplex"] = simplex;
      out.status = Status::invalid;
    }
    return out;
  }
  SimpleGraph g;
  if (!o.complex_file.empty()) {
    g = io::raw_complex_from_json(io::read_json_file(o.complex_file)).graph;
    inputs["complex_file"] = o.complex_file;
  } else if (!o.gen.empty()) {
    g = generate(o.gen).as_simple_graph();
    inputs["generator"] = o.gen;
  } else {
    throw ValidationError("one of --complex, --gen, --base, --pocset is required");
  }
  auto r = verify_median(g, o.seed);
  out.result = {{"kind", "complex"},
                {"valid", r.valid},
                {"exhaustive", r.exhaustive},
                {"triples_checked", r.triples_checked},
                {"vertices", g.vertex_count()},
                {"edges", g.edges.size()}};
  if (r.valid) {
    auto x = CubeGraph::build(g, {}, {}, false);
    out.result["walls"] = x.wall_count();
    out.result["dimension"] = dimension(x);
    inputs["complex"] = io::digest(x);
  } else {
    out.result["reason"] = r.reason;
    if (r.violating_triple) {
      json t = json::array();
      for (VertexId v : *r.violating_triple) t.push_back(g.names[v]);
      out.result["violating_triple"] = t;
    }
    out.status = Status::invalid;
  }
  return out;
}

Outcome cmd_dual(const Options& o, json& inputs) {
  Outcome out;
  if (o.pocset_file.empty()) throw SchemaError("--pocset", "a pocset file is required");
  auto p = io::pocset_from_json(io::read_json_file(o.pocset_file));
  inputs["pocset"] = o.pocset_file;
  auto r = verify_pocset(p);
  if (!r.valid) throw ValidationError("invalid pocset: " + r.reason);
  auto x = dual_complex(p);
  out.result = {{"vertices", x.vertex_count()},
                {"edges", x.edge_count()},
                {"walls", x.wall_count()},
                {"dimension", dimension(x)},
                {"complex", io::digest(x)}};
  if (!o.out.empty()) io::write_file_atomic(o.out, io::dump(io::complex_to_json(x)));
  return out;
}

json parameters(const Options& o) {
  json p = json::object();
  const std::string& c = o.command;
  auto uses = [&](std::initializer_list<const char*> cs) {
    for (const char* n : cs)
      if (c == n) return true;
    return false;
  };
  if (!o.base.empty() && c != "verify") p["window"] = c == "develop" ? o.radius : o.window;
  if (uses({"flip", "dskew", "contracting", "schottky", "rank-rigidity", "regular"})) p["radius"] = o.radius;
  if (uses({"classify", "core", "prune", "rank-rigidity"})) p["depth"] = o.depth;
  if (uses({"contracting", "regular"}) && (c != "contracting" || !o.element.empty())) p["nmax"] = o.nmax;
  if (uses({"verify"})) p["seed"] = o.seed;
  if (uses({"pencil"})) p["k"] = o.pencil_k;
  if (!o.h.empty()) p["h"] = o.h;
  if (!o.k.empty()) p["k_halfspace"] = o.k;
  if (!o.element.empty()) p["element"] = o.element;
  if (!o.path.empty()) p["path"] = o.path;
  if (!o.family.empty()) p["halfspaces"] = o.family;
  if (!o.base.empty()) p["budget"] = o.budget;
  if (o.stability) p["stability"] = o.stability;
  return p;
}

int code(Status s) {
  switch (s) {
    case Status::ok: return 0;
    case Status::inconclusive: return 3;
    case Status::invalid: return 4;
  }
  return 4;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::inconclusive: return "inconclusive";
    case Status::invalid: return "invalid";
  }
  return "invalid";
}

int run(Options& o) {
  json inputs = json::object();
  Outcome out;
  if (o.command == "verify") {
    out = cmd_verify(o, inputs);
  } else if (o.command == "dual") {
    out = cmd_dual(o, inputs);
  } else {
    Command f = space_commands().at(o.command);
    if (o.command == "develop" && o.base.empty()) throw SchemaError("--base", "develop needs a base complex");
    int r = o.command == "develop" ? o.radius : o.window;
    Space s = load_space(o, r);
    inputs = s.inputs;
    if (!o.cert_file.empty()) inputs["cert"] = o.cert_file;
    out = f(o, s);
    if (o.stability > 0) {
      if (!s.windowed()) throw SchemaError("--stability", "the stability protocol needs --base");
      Options grown = o;
      grown.out.clear();
      Space t = load_space(grown, r + o.stability);
      Outcome again = f(grown, t);
      out.result["stability"] = {{"grown_window", r + o.stability}, {"stable", again.answer == out.answer}};
      if (again.answer != out.answer) out.result["stability"]["grown_answer"] = again.answer;
    }
  }
  json report = {{"command", o.command},
                 {"inputs", inputs},
                 {"parameters", parameters(o)},
                 {"result", out.result},
                 {"certificates", out.certificates},
                 {"window_relative", out.window_relative},
                 {"status", status_name(out.status)}};
  std::string text = io::dump(report);
  std::cout << text;
  bool out_is_artifact = o.command == "develop" || o.command == "dual" || o.command == "core";
  if (!o.out.empty() && !out_is_artifact) io::write_file_atomic(o.out, text);
  return code(out.status);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"cubecore: cube complexes, hyperplanes and group actions"};
  app.set_help_flag("--help", "print help");
  std::vector<std::string> commands = {"verify", "dual"};
  for (const auto& [name, f] : space_commands()) commands.push_back(name);
  app.add_option("command", o.command, "command to run")->required()->check(CLI::IsMember(commands));
  app.add_option("--complex", o.complex_file, "complex JSON file");
  app.add_option("--gen", o.gen, "builtin generator, e.g. grid(3,3), product(tree(3,2),path(2))");
  app.add_option("--base", o.base, "base complex JSON file or builtin (line, wedge2, torus, t3, f2xz, txt)");
  app.add_option("--group", o.group_file, "group JSON file");
  app.add_option("--pocset", o.pocset_file, "pocset JSON file");
  app.add_option("--cert", o.cert_file, "certificate JSON file (check-cert)");
  app.add_option("--radius", o.radius, "word radius; window radius for develop")->check(CLI::NonNegativeNumber);
  app.add_option("--window", o.window, "window radius for --base")->check(CLI::NonNegativeNumber);
  app.add_option("--depth", o.depth, "depth D for wall classification")->check(CLI::PositiveNumber);
  app.add_option("--nmax", o.nmax, "largest power tried")->check(CLI::PositiveNumber);
  app.add_option("--k", o.k, "inner half-space IN->OUT (dskew)");
  app.add_option("--h", o.h, "half-space IN->OUT: the side of the edge containing IN");
  app.add_option("--element", o.element, "group element as a word, e.g. a.b^-1");
  app.add_option("--path", o.path, "geodesic as vertex names separated by ';' (pencil)");
  app.add_option("--pencil-k", o.pencil_k, "pencil length (pencil)")->check(CLI::PositiveNumber);
  app.add_option("--halfspaces", o.family, "half-spaces IN->OUT separated by ';' (helly)");
  app.add_option("--budget", o.budget, "vertex budget for windows");
  app.add_option("--stability", o.stability, "re-run on the window grown by this much and compare");
  app.add_option("--seed", o.seed, "seed for sampled checks (CUBECORE_SEED overrides)");
  app.add_option("--out", o.out, "write the report (or the produced complex) here");
  app.add_flag("--trace", o.trace, "include search logs");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }
  if (const char* env = std::getenv("CUBECORE_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: CUBECORE_SEED is not a number\n";
      return 4;
    }
  }
  try {
    return run(o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << " (estimate " << e.estimate() << ")\n";
    return 5;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
