#include "cubecore/developer.hpp"

#include "cubecore/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_set>

namespace cubecore {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace

std::string BaseComplex::code_name(Code c) const { return (c & 1 ? "-" : "") + edges[c / 2].name; }

Code BaseComplex::parse_code(const std::string& signed_name) const {
  bool inv = !signed_name.empty() && signed_name[0] == '-';
  std::string n = inv ? signed_name.substr(1) : signed_name;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e].name == n) return static_cast<Code>(2 * e + (inv ? 1 : 0));
  throw ValidationError("unknown edge '" + n + "'");
}

std::optional<VertexId> BaseComplex::find_vertex(const std::string& name) const {
  for (VertexId v = 0; v < vertices.size(); ++v)
    if (vertices[v] == name) return v;
  return std::nullopt;
}

NpcReport check_nonpositively_curved(const BaseComplex& b) {
  NpcReport rep;
  const std::size_t nv = b.vertices.size();
  for (std::size_t e = 0; e < b.edges.size(); ++e)
    if (b.edges[e].from >= nv || b.edges[e].to >= nv) {
      rep.reason = "edge " + b.edges[e].name + " has an unknown endpoint";
      return rep;
    }
  // link edges: unordered corner pairs, recorded with their square
  std::map<std::pair<Code, Code>, std::size_t> link_edges;
  for (std::size_t q = 0; q < b.squares.size(); ++q) {
    const auto& s = b.squares[q];
    for (int i = 0; i < 4; ++i) {
      if (s[i] / 2 >= b.edges.size()) {
        rep.reason = "square " + std::to_string(q) + " uses an unknown edge";
        return rep;
      }
    }
    for (int i = 0; i < 4; ++i)
      if (b.target(s[i]) != b.start(s[(i + 1) % 4])) {
        rep.reason = "square " + std::to_string(q) + " boundary is not closed";
        return rep;
      }
    for (int i = 0; i < 4; ++i) {
      Code f = BaseComplex::rev(s[(i + 3) % 4]), g = s[i];
      rep.vertex = b.start(g);
      if (f == g) {
        rep.reason = "link of " + b.vertices[rep.vertex] + " has a loop at " + b.code_name(f) +
                     " (square " + std::to_string(q) + ")";
        rep.simplex = {f};
        return rep;
      }
      auto key = std::minmax(f, g);
      if (!link_edges.emplace(key, q).second) {
        rep.reason = "link of " + b.vertices[rep.vertex] + " has a double edge " + b.code_name(key.first) + "," +
                     b.code_name(key.second);
        rep.simplex = {key.first, key.second};
        return rep;
      }
    }
  }
  // corner lookup with orientation, for the cube face check
  std::map<std::pair<Code, Code>, std::pair<Code, Code>> corner;
  for (const auto& s : b.squares)
    for (int i = 0; i < 4; ++i) {
      Code f = BaseComplex::rev(s[(i + 3) % 4]), g = s[i], ss = s[(i + 1) % 4], t = BaseComplex::rev(s[(i + 2) % 4]);
      corner[{f, g}] = {ss, t};
      corner[{g, f}] = {t, ss};
    }
  std::set<std::vector<Code>> filled;
  for (std::size_t ci = 0; ci < b.cubes.size(); ++ci) {
    const auto& cube = b.cubes[ci];
    const int k = cube.dim;
    const std::size_t corners = std::size_t{1} << k;
    if (cube.corners.size() != corners || cube.edges.size() != std::size_t(k) * (corners / 2)) {
      rep.reason = "cube " + std::to_string(ci) + " has the wrong number of corners or edges";
      return rep;
    }
    std::map<std::pair<std::size_t, int>, Code> along;  // (corner, bit) -> outgoing code
    std::size_t idx = 0;
    for (std::size_t c = 0; c < corners; ++c)
      for (int bit = 0; bit < k; ++bit) {
        if (c & (std::size_t{1} << bit)) continue;
        Code code = cube.edges[idx++];
        if (code / 2 >= b.edges.size() || b.start(code) != cube.corners[c] ||
            b.target(code) != cube.corners[c | (std::size_t{1} << bit)]) {
          rep.reason = "cube " + std::to_string(ci) + " edge does not match its corners";
          return rep;
        }
        along[{c, bit}] = code;
        along[{c | (std::size_t{1} << bit), bit}] = BaseComplex::rev(code);
      }
    for (std::size_t c = 0; c < corners; ++c) {
      for (int b1 = 0; b1 < k; ++b1)
        for (int b2 = b1 + 1; b2 < k; ++b2) {
          Code u1 = along[{c, b1}], u2 = along[{c, b2}];
          auto it = corner.find({u1, u2});
          std::size_t c1 = c ^ (std::size_t{1} << b1), c2 = c ^ (std::size_t{1} << b2);
          if (it == corner.end() || it->second.first != along[{c2, b1}] || it->second.second != along[{c1, b2}]) {
            rep.reason = "cube " + std::to_string(ci) + " has a face that is not a declared square";
            rep.vertex = cube.corners[c];
            rep.simplex = {u1, u2};
            return rep;
          }
        }
      std::vector<Code> simplex;
      for (int bit = 0; bit < k; ++bit) simplex.push_back(along[{c, bit}]);
      std::sort(simplex.begin(), simplex.end());
      if (k >= 3 && filled.count(simplex)) {
        rep.reason = "two cubes share a corner simplex";
        rep.vertex = cube.corners[c];
        rep.simplex = simplex;
        return rep;
      }
      // all faces of dimension >= 2 of the simplex are filled
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (__builtin_popcount(mask) < 3) continue;
        std::vector<Code> face;
        for (int bit = 0; bit < k; ++bit)
          if (mask & (1u << bit)) face.push_back(simplex[bit]);
        filled.insert(face);
      }
    }
  }
  // flag condition: every clique of size >= 3 is filled
  for (VertexId v = 0; v < nv; ++v) {
    std::vector<Code> nodes;
    for (Code c = 0; c < 2 * b.edges.size(); ++c)
      if (b.start(c) == v) nodes.push_back(c);
    auto adj = [&](Code x, Code y) { return link_edges.count(std::minmax(x, y)) > 0; };
    std::vector<Code> cur;
    std::optional<std::vector<Code>> missing;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (missing) return;
      if (cur.size() >= 3 && !filled.count(cur)) {
        missing = cur;
        return;
      }
      for (std::size_t i = from; i < nodes.size() && !missing; ++i) {
        bool ok = true;
        for (Code c : cur) ok = ok && adj(c, nodes[i]);
        if (!ok) continue;
        cur.push_back(nodes[i]);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    if (missing) {
      rep.vertex = v;
      rep.simplex = *missing;
      std::string s;
      for (Code c : *missing) s += (s.empty() ? "" : ",") + b.code_name(c);
      rep.reason = "link of " + b.vertices[v] + " is not flag: empty simplex {" + s + "}";
      return rep;
    }
  }
  rep.valid = true;
  return rep;
}

Developer::Developer(BaseComplex base, VertexId basepoint) : base_(std::move(base)), basepoint_(basepoint) {
  if (basepoint_ >= base_.vertices.size()) throw ValidationError("basepoint is not a base vertex");
  auto rep = check_nonpositively_curved(base_);
  if (!rep.valid) throw ValidationError("base complex is not nonpositively curved: " + rep.reason);
  out_.assign(base_.vertices.size(), {});
  pos_.assign(2 * base_.edges.size(), 0);
  for (Code c = 0; c < 2 * base_.edges.size(); ++c) {
    pos_[c] = static_cast<std::uint32_t>(out_[base_.start(c)].size());
    out_[base_.start(c)].push_back(c);
  }
  for (const auto& s : base_.squares)
    for (int i = 0; i < 4; ++i) {
      Code f = BaseComplex::rev(s[(i + 3) % 4]), g = s[i], ss = s[(i + 1) % 4], t = BaseComplex::rev(s[(i + 2) % 4]);
      corners_[pair_key(f, g)] = {ss, t};
      corners_[pair_key(g, f)] = {t, ss};
    }
  Vertex r{basepoint_, 0, {}, kNone, 0, std::vector<CoverId>(out_[basepoint_].size(), kNone)};
  verts_.push_back(std::move(r));
}

const std::pair<Code, Code>* Developer::corner(Code f, Code g) const {
  auto it = corners_.find(pair_key(f, g));
  return it == corners_.end() ? nullptr : &it->second;
}

bool Developer::is_down(CoverId v, Code c) const {
  const auto& d = verts_[v].down;
  return std::binary_search(d.begin(), d.end(), c);
}

CoverId Developer::step(CoverId v, Code c) {
  if (base_.start(c) != verts_[v].base)
    throw ValidationError("edge end " + base_.code_name(c) + " does not start at " + base_.vertices[verts_[v].base]);
  CoverId cached = cache(v, c);
  if (cached != kNone) return cached;
  return is_down(v, c) ? down_step(v, c) : up_step(v, c);
}

CoverId Developer::walk(CoverId v, const std::vector<Code>& path) {
  for (Code c : path) v = step(v, c);
  return v;
}

CoverId Developer::up_step(CoverId y, Code g) {
  if (cache(y, g) != kNone) return cache(y, g);
  const std::vector<Code> dy = verts_[y].down;
  std::vector<Code> dz{BaseComplex::rev(g)};
  for (Code f : dy)
    if (auto cr = corner(f, g)) dz.push_back(cr->first);
  std::sort(dz.begin(), dz.end());
  dz.erase(std::unique(dz.begin(), dz.end()), dz.end());
  const Code m = dz.front();
  CoverId z = kNone;
  if (m == BaseComplex::rev(g)) {
    auto key = pair_key(y, g);
    auto it = children_.find(key);
    if (it != children_.end()) {
      z = it->second;
    } else {
      z = static_cast<CoverId>(verts_.size());
      VertexId b = base_.target(g);
      verts_.push_back(Vertex{b, verts_[y].level + 1, std::move(dz), y, g,
                              std::vector<CoverId>(out_[b].size(), kNone)});
      children_[key] = z;
    }
  } else {
    for (Code f : dy) {
      auto cr = corner(f, g);
      if (cr && cr->first == m) {
        Code t = cr->second;
        CoverId q = step(down_step(y, f), t);
        z = up_step(q, BaseComplex::rev(m));
        break;
      }
    }
    if (z == kNone) throw ValidationError("development failed: missing square corner");
  }
  cache(y, g) = z;
  cache(z, BaseComplex::rev(g)) = y;
  return z;
}

CoverId Developer::down_step(CoverId x, Code e) {
  if (cache(x, e) != kNone) return cache(x, e);
  const Code c = verts_[x].down.front();
  CoverId w;
  if (e == c) {
    w = verts_[x].parent;
  } else {
    auto cr = corner(c, e);
    if (!cr) throw ValidationError("development failed: descending edges without a square");
    Code s = cr->first, t = cr->second;
    CoverId r = step(verts_[x].parent, t);
    w = up_step(r, BaseComplex::rev(s));
  }
  cache(x, e) = w;
  cache(w, BaseComplex::rev(e)) = x;
  return w;
}

std::vector<Code> Developer::canonical_word(CoverId v) const {
  std::vector<Code> w;
  while (v != 0) {
    w.push_back(verts_[v].parent_code);
    v = verts_[v].parent;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::string Developer::vertex_name(CoverId v) const {
  std::string s = base_.vertices[basepoint_];
  auto w = canonical_word(v);
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : ":") + base_.code_name(w[i]);
  return s;
}

void Developer::check_loop(const std::vector<Code>& loop) const {
  VertexId at = basepoint_;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    if (loop[i] / 2 >= base_.edges.size()) throw ValidationError("loop uses an unknown edge");
    if (base_.start(loop[i]) != at)
      throw ValidationError("loop is not an edge path at step " + std::to_string(i) + " (" +
                            base_.code_name(loop[i]) + ")");
    at = base_.target(loop[i]);
  }
  if (at != basepoint_) throw ValidationError("loop is not closed at the basepoint");
}

Window Developer::window(int radius, std::size_t budget) {
  if (radius < 0) throw ValidationError("radius must be non-negative");
  Window w;
  w.requested_radius = radius;
  std::unordered_set<CoverId> in{root()};
  std::vector<CoverId> members{root()};
  std::vector<CoverId> layer{root()};
  int reached = 0;
  for (int k = 0; k < radius; ++k) {
    std::vector<CoverId> next;
    for (CoverId v : layer)
      for (Code c : out_[verts_[v].base]) {
        CoverId u = step(v, c);
        if (!in.count(u)) {
          in.insert(u);
          next.push_back(u);
        }
      }
    if (members.size() + next.size() > budget) {
      for (CoverId u : next) in.erase(u);
      w.truncated = true;
      w.log.push_back("ball radius " + std::to_string(k + 1) + " exceeds budget " + std::to_string(budget) +
                      "; stopping at radius " + std::to_string(k));
      break;
    }
    members.insert(members.end(), next.begin(), next.end());
    layer = std::move(next);
    reached = k + 1;
  }
  w.radius = reached;
  w.log.push_back("ball radius " + std::to_string(reached) + ": " + std::to_string(members.size()) + " vertices");
  // convex hull: add any vertex with two neighbours inside
  std::unordered_map<CoverId, int> touching;
  std::deque<CoverId> queue(members.begin(), members.end());
  std::size_t added = 0;
  while (!queue.empty()) {
    CoverId v = queue.front();
    queue.pop_front();
    for (Code c : out_[verts_[v].base]) {
      CoverId u = step(v, c);
      if (in.count(u)) continue;
      if (++touching[u] >= 2) {
        in.insert(u);
        members.push_back(u);
        queue.push_back(u);
        ++added;
        if (members.size() > 4 * budget) throw BudgetExceeded("window hull exceeds budget", members.size());
      }
    }
  }
  w.log.push_back("hull added " + std::to_string(added) + " vertices");
  std::vector<std::pair<std::pair<int, std::vector<Code>>, CoverId>> keyed;
  for (CoverId v : members) keyed.push_back({{verts_[v].level, canonical_word(v)}, v});
  std::sort(keyed.begin(), keyed.end());
  SimpleGraph g;
  for (auto& [k, v] : keyed) {
    w.index[v] = static_cast<VertexId>(w.cover_of.size());
    w.cover_of.push_back(v);
    g.names.push_back(vertex_name(v));
  }
  const std::size_t n = w.cover_of.size();
  w.steps.assign(n, {});
  VertexSet frontier(n);
  for (VertexId i = 0; i < n; ++i) {
    CoverId v = w.cover_of[i];
    for (Code c : out_[verts_[v].base]) {
      CoverId u = step(v, c);
      auto it = w.index.find(u);
      if (it == w.index.end()) {
        frontier.set(i);
        continue;
      }
      w.steps[i].push_back({it->second, c});
      if (i < it->second) g.edges.push_back({i, it->second});
    }
  }
  w.log.push_back("window: " + std::to_string(n) + " vertices, " + std::to_string(frontier.count()) + " on frontier");
  Provenance prov;
  prov.kind = "window";
  prov.detail = "cover of " + std::to_string(base_.vertices.size()) + "-vertex base at " + base_.vertices[basepoint_];
  prov.basepoint = 0;
  prov.radius = w.radius;
  w.basepoint = 0;
  w.graph = CubeGraph::build(g, prov, frontier);
  return w;
}

PartialMap Developer::deck_transformation(const Window& w, const std::vector<Code>& loop) {
  check_loop(loop);
  const std::size_t n = w.cover_of.size();
  std::vector<CoverId> img(n, kNone);
  img[w.basepoint] = walk(root(), loop);
  std::deque<VertexId> q{w.basepoint};
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (auto [u, c] : w.steps[v]) {
      if (img[u] != kNone) continue;
      img[u] = step(img[v], c);
      q.push_back(u);
    }
  }
  PartialMap m;
  m.image.assign(n, kUndefined);
  for (VertexId v = 0; v < n; ++v)
    if (auto t = w.find(img[v])) m.image[v] = *t;
  return m;
}

DeckGroup::DeckGroup(Developer& dev, const Window& w, std::vector<std::string> names,
                     std::vector<std::vector<Code>> loops)
    : dev_(&dev), w_(&w), names_(std::move(names)), loops_(std::move(loops)) {
  if (names_.size() != loops_.size()) throw ValidationError("generator names and loops differ in number");
  for (const auto& l : loops_) dev_->check_loop(l);
}

std::vector<Code> DeckGroup::loop_of(const Word& w) const {
  std::vector<Code> loop;
  for (auto l : w.letters) {
    const auto& base = loops_[l / 2];
    if (l & 1)
      for (auto it = base.rbegin(); it != base.rend(); ++it) loop.push_back(BaseComplex::rev(*it));
    else
      loop.insert(loop.end(), base.begin(), base.end());
  }
  return loop;
}

PartialMap DeckGroup::compute(const Word& w) const { return dev_->deck_transformation(*w_, loop_of(w)); }

VertexId DeckGroup::apply(const Word& w, VertexId v) const {
  CoverId at = dev_->walk(dev_->walk(dev_->root(), loop_of(w)), dev_->canonical_word(w_->cover_of[v]));
  auto t = w_->find(at);
  return t ? *t : kUndefined;
}

}  // namespace cubecore

namespace cubecore {

std::unique_ptr<DeckGroup> edge_loop_group(Developer& dev, const Window& w) {
  const auto& b = dev.base();
  if (b.vertices.size() != 1) throw ValidationError("edge loops generate the deck group only on one-vertex bases");
  std::vector<std::string> names;
  std::vector<std::vector<Code>> loops;
  for (std::size_t e = 0; e < b.edges.size(); ++e) {
    names.push_back(b.edges[e].name);
    loops.push_back({static_cast<Code>(2 * e)});
  }
  return std::make_unique<DeckGroup>(dev, w, std::move(names), std::move(loops));
}

}  // namespace cubecore
