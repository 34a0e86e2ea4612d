#include "cubecore/group.hpp"

#include "cubecore/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cubecore {

Word Word::inverse() const {
  Word w;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(*it ^ 1u);
  return w;
}

Word Word::operator*(const Word& other) const {
  Word w = *this;
  for (auto l : other.letters) {
    if (!w.letters.empty() && w.letters.back() == (l ^ 1u))
      w.letters.pop_back();
    else
      w.letters.push_back(l);
  }
  return w;
}

bool PartialMap::total() const {
  return std::none_of(image.begin(), image.end(), [](VertexId v) { return v == kUndefined; });
}

std::size_t PartialMap::domain_size() const {
  return static_cast<std::size_t>(std::count_if(image.begin(), image.end(), [](VertexId v) { return v != kUndefined; }));
}

PartialMap compose(const PartialMap& outer, const PartialMap& inner) {
  PartialMap r;
  r.image.assign(inner.image.size(), kUndefined);
  for (std::size_t v = 0; v < inner.image.size(); ++v)
    if (inner.image[v] != kUndefined) r.image[v] = outer.image[inner.image[v]];
  return r;
}

const PartialMap& GroupModel::realize(const Word& w) const {
  auto it = cache_.find(w);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(w, compute(w)).first->second;
}

std::string GroupModel::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += generator_name(w.letters[i] / 2);
    if (w.letters[i] & 1) s += "^-1";
  }
  return s;
}

Word GroupModel::parse(const std::string& text) const {
  Word w;
  std::string tok;
  std::vector<std::string> toks;
  for (char c : text) {
    if (c == '.' || c == ' ' || c == '*') {
      if (!tok.empty()) toks.push_back(tok);
      tok.clear();
    } else {
      tok += c;
    }
  }
  if (!tok.empty()) toks.push_back(tok);
  for (const auto& t : toks) {
    if (t == "e") continue;
    std::string name = t;
    bool inv = false;
    for (const char* suffix : {"^-1", "-1", "'"}) {
      std::string sfx(suffix);
      if (name.size() > sfx.size() && name.compare(name.size() - sfx.size(), sfx.size(), sfx) == 0) {
        name = name.substr(0, name.size() - sfx.size());
        inv = true;
        break;
      }
    }
    bool found = false;
    for (std::size_t i = 0; i < generator_count() && !found; ++i)
      if (generator_name(i) == name) {
        w = w * Word::letter(static_cast<std::uint32_t>(2 * i + (inv ? 1 : 0)));
        found = true;
      }
    if (!found) throw ValidationError("unknown generator '" + name + "' in word '" + text + "'");
  }
  return w;
}

PermutationGroup::PermutationGroup(const CubeGraph& x, std::vector<std::string> names, std::vector<PartialMap> maps)
    : x_(&x), names_(std::move(names)) {
  if (names_.size() != maps.size()) throw ValidationError("generator names and maps differ in number");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& m = maps[i];
    if (m.image.size() != x.vertex_count())
      throw ValidationError("generator " + names_[i] + " has a map of the wrong size");
    auto rep = verify_automorphism(x, m);
    if (!rep.valid) throw ValidationError("generator " + names_[i] + " is not an automorphism: " + rep.reason);
    PartialMap inv;
    inv.image.assign(x.vertex_count(), kUndefined);
    for (VertexId v = 0; v < x.vertex_count(); ++v)
      if (m.defined(v)) inv.image[m(v)] = v;
    if (!m.total()) exact_ = false;
    maps_.push_back(m);
    maps_.push_back(std::move(inv));
  }
}

PartialMap PermutationGroup::compute(const Word& w) const {
  PartialMap r;
  r.image.resize(x_->vertex_count());
  for (VertexId v = 0; v < x_->vertex_count(); ++v) r.image[v] = v;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r = compose(maps_[*it], r);
  return r;
}

VertexId PermutationGroup::apply(const Word& w, VertexId v) const {
  for (auto it = w.letters.rbegin(); it != w.letters.rend() && v != kUndefined; ++it) v = maps_[*it](v);
  return v;
}

std::unique_ptr<GroupModel> trivial_group(const CubeGraph& x) {
  return std::make_unique<PermutationGroup>(x, std::vector<std::string>{}, std::vector<PartialMap>{});
}

InducedGroup::InducedGroup(const GroupModel& parent, const CubeGraph& quotient, std::vector<VertexId> projection)
    : parent_(&parent), q_(&quotient), projection_(std::move(projection)), fibers_(quotient.vertex_count()) {
  for (VertexId v = 0; v < projection_.size(); ++v) fibers_[projection_[v]].push_back(v);
}

VertexId InducedGroup::apply(const Word& w, VertexId v) const {
  for (VertexId u : fibers_[v]) {
    VertexId t = parent_->apply(w, u);
    if (t != kUndefined) return projection_[t];
  }
  return kUndefined;
}

PartialMap InducedGroup::compute(const Word& w) const {
  const auto& m = parent_->realize(w);
  PartialMap r;
  r.image.assign(q_->vertex_count(), kUndefined);
  std::vector<char> bad(q_->vertex_count(), 0);
  for (VertexId v = 0; v < m.image.size(); ++v) {
    if (!m.defined(v)) continue;
    VertexId q = projection_[v], img = projection_[m(v)];
    if (bad[q]) continue;
    if (r.image[q] == kUndefined)
      r.image[q] = img;
    else if (r.image[q] != img)
      bad[q] = 1;
  }
  std::size_t c = 0;
  for (VertexId q = 0; q < r.image.size(); ++q)
    if (bad[q]) {
      r.image[q] = kUndefined;
      ++c;
    }
  conflicts_[w] = c;
  return r;
}

std::size_t InducedGroup::conflicts(const Word& w) const {
  realize(w);
  return conflicts_.at(w);
}

std::vector<Word> word_ball(std::size_t generators, int radius) {
  std::vector<Word> out{Word{}};
  std::size_t layer_start = 0;
  for (int len = 1; len <= radius; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_start; i < layer_end; ++i)
      for (std::uint32_t l = 0; l < 2 * generators; ++l) {
        const Word& base = out[i];
        if (!base.empty() && base.letters.back() == (l ^ 1u)) continue;
        Word w = base;
        w.letters.push_back(l);
        out.push_back(std::move(w));
      }
    layer_start = layer_end;
  }
  // each layer is already lexicographic because parents were
  return out;
}

AutomorphismReport verify_automorphism(const CubeGraph& x, const PartialMap& f) {
  AutomorphismReport rep;
  const std::size_t n = x.vertex_count();
  if (f.image.size() != n) {
    rep.reason = "map has the wrong size";
    return rep;
  }
  std::vector<VertexId> pre(n, kUndefined);
  for (VertexId v = 0; v < n; ++v) {
    if (!f.defined(v)) continue;
    if (f(v) >= n) {
      rep.reason = "image of " + x.name(v) + " out of range";
      return rep;
    }
    if (pre[f(v)] != kUndefined) {
      rep.reason = "not injective: " + x.name(pre[f(v)]) + " and " + x.name(v) + " have the same image";
      rep.offending_edge = std::make_pair(pre[f(v)], v);
      return rep;
    }
    pre[f(v)] = v;
  }
  for (auto [u, v] : x.edges()) {
    if (f.defined(u) && f.defined(v) && !x.adjacent(f(u), f(v))) {
      rep.reason = "edge " + x.name(u) + "-" + x.name(v) + " maps to a non-edge";
      rep.offending_edge = std::make_pair(u, v);
      return rep;
    }
  }
  // reflect adjacency: count edges inside the domain and inside the image
  std::size_t dom_edges = 0, img_edges = 0;
  for (auto [u, v] : x.edges()) {
    dom_edges += f.defined(u) && f.defined(v);
    img_edges += pre[u] != kUndefined && pre[v] != kUndefined;
  }
  if (dom_edges != img_edges) {
    for (auto [u, v] : x.edges())
      if (pre[u] != kUndefined && pre[v] != kUndefined && !x.adjacent(pre[u], pre[v])) {
        rep.reason = "non-edge " + x.name(pre[u]) + "-" + x.name(pre[v]) + " maps to an edge";
        rep.offending_edge = std::make_pair(pre[u], pre[v]);
        return rep;
      }
  }
  rep.wall_image.assign(x.wall_count(), ~WallId{0});
  std::vector<WallId> pre_wall(x.wall_count(), ~WallId{0});
  for (EdgeId e = 0; e < x.edge_count(); ++e) {
    auto [u, v] = x.edge(e);
    if (!f.defined(u) || !f.defined(v)) continue;
    WallId w = x.wall_of_edge(e);
    WallId img = x.wall_of_edge(*x.edge_between(f(u), f(v)));
    if (rep.wall_image[w] == ~WallId{0}) {
      if (pre_wall[img] != ~WallId{0}) {
        rep.reason = "two walls map to wall " + std::to_string(img);
        rep.offending_edge = std::make_pair(u, v);
        return rep;
      }
      rep.wall_image[w] = img;
      pre_wall[img] = w;
    } else if (rep.wall_image[w] != img) {
      rep.reason = "edge " + x.name(u) + "-" + x.name(v) + " leaves its wall's image class";
      rep.offending_edge = std::make_pair(u, v);
      return rep;
    }
  }
  rep.valid = true;
  return rep;
}

}  // namespace cubecore

namespace cubecore {

std::optional<WallId> image_wall(const CubeGraph& x, const PartialMap& f, WallId w) {
  for (EdgeId e : x.wall(w).dual_edges) {
    auto [a, b] = x.edge(e);
    if (f.defined(a) && f.defined(b)) {
      auto img = x.edge_between(f(a), f(b));
      if (!img) return std::nullopt;
      return x.wall_of_edge(*img);
    }
  }
  return std::nullopt;
}

std::optional<Halfspace> image_halfspace(const CubeGraph& x, const PartialMap& f, Halfspace h) {
  for (EdgeId e : x.wall(h.wall).dual_edges) {
    auto [a, b] = x.edge(e);
    if (f.defined(a) && f.defined(b)) {
      auto img = x.edge_between(f(a), f(b));
      if (!img) return std::nullopt;
      VertexId inside = x.halfspace(h).test(a) ? a : b;
      WallId w = x.wall_of_edge(*img);
      return x.halfspace_containing(f(inside), w);
    }
  }
  return std::nullopt;
}

std::optional<Halfspace> image_halfspace(const GroupModel& g, const Word& w, Halfspace h) {
  const CubeGraph& x = g.space();
  for (EdgeId e : x.wall(h.wall).dual_edges) {
    auto [a, b] = x.edge(e);
    VertexId fa = g.apply(w, a);
    if (fa == kUndefined) continue;
    VertexId fb = g.apply(w, b);
    if (fb == kUndefined) continue;
    auto img = x.edge_between(fa, fb);
    if (!img) return std::nullopt;
    VertexId inside = x.halfspace(h).test(a) ? fa : fb;
    return x.halfspace_containing(inside, x.wall_of_edge(*img));
  }
  return std::nullopt;
}

Word power(const Word& w, int n) {
  Word r;
  for (int i = 0; i < n; ++i) r = r * w;
  return r;
}

VertexId basepoint_of(const CubeGraph& x) { return x.provenance().basepoint.value_or(0); }

}  // namespace cubecore
