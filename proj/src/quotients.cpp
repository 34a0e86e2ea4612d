#include "cubecore/quotients.hpp"

#include "cubecore/errors.hpp"

#include <algorithm>
#include <map>

namespace cubecore {

RestrictionQuotient restriction_quotient(const CubeGraph& x, std::vector<WallId> kept) {
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (WallId w : kept)
    if (w >= x.wall_count()) throw ValidationError("restriction to unknown wall " + std::to_string(w));
  RestrictionQuotient rq;
  rq.kept = kept;
  const std::size_t k = kept.size();
  std::map<boost::dynamic_bitset<std::uint64_t>, VertexId> index;
  std::vector<boost::dynamic_bitset<std::uint64_t>> patterns;
  SimpleGraph g;
  rq.projection.resize(x.vertex_count());
  for (VertexId v = 0; v < x.vertex_count(); ++v) {
    boost::dynamic_bitset<std::uint64_t> pat(k);
    for (std::size_t i = 0; i < k; ++i)
      if (x.side_of(v, kept[i])) pat.set(i);
    auto [it, fresh] = index.emplace(pat, static_cast<VertexId>(patterns.size()));
    if (fresh) {
      patterns.push_back(pat);
      g.names.push_back(x.name(v));
    }
    rq.projection[v] = it->second;
  }
  for (VertexId q = 0; q < patterns.size(); ++q)
    for (std::size_t i = 0; i < k; ++i) {
      if (patterns[q].test(i)) continue;
      auto flipped = patterns[q];
      flipped.set(i);
      if (auto it = index.find(flipped); it != index.end()) g.edges.push_back({q, it->second});
    }
  Provenance prov;
  prov.kind = "quotient";
  prov.detail = std::to_string(k) + " of " + std::to_string(x.wall_count()) + " walls";
  VertexSet fr(patterns.size());
  for (VertexId v = 0; v < x.vertex_count(); ++v)
    if (x.frontier().test(v)) fr.set(rq.projection[v]);
  rq.quotient = CubeGraph::build(g, prov, fr);

  rq.source_wall.assign(rq.quotient.wall_count(), kNoWall);
  rq.quotient_wall_of.assign(x.wall_count(), kNoWall);
  for (WallId w : kept) {
    auto [a, b] = x.edge(x.wall(w).dual_edges.front());
    auto e = rq.quotient.edge_between(rq.projection[a], rq.projection[b]);
    if (!e) throw ValidationError("restriction quotient lost a kept wall");
    WallId qw = rq.quotient.wall_of_edge(*e);
    rq.source_wall[qw] = w;
    rq.quotient_wall_of[w] = qw;
  }
  return rq;
}

RestrictionQuotient hyperplane_complex(const CubeGraph& x, WallId w) {
  std::vector<WallId> kept;
  for (WallId u = 0; u < x.wall_count(); ++u)
    if (x.crosses(w, u)) kept.push_back(u);
  return restriction_quotient(x, kept);
}

}  // namespace cubecore

namespace cubecore {

std::string to_string(WallType t) {
  switch (t) {
    case WallType::essential: return "essential";
    case WallType::half_essential: return "half-essential";
    case WallType::trivial: return "trivial";
  }
  return "?";
}

std::vector<WallId> Classification::of_type(WallType t) const {
  std::vector<WallId> out;
  for (const auto& c : walls)
    if (c.type == t) out.push_back(c.wall);
  return out;
}

VertexSet orbit_witnesses(const GroupModel& g) {
  const CubeGraph& x = g.space();
  if (g.generator_count() == 0 || x.vertex_count() == 0) return x.full_set();
  VertexSet seen = x.empty_set();
  std::vector<VertexId> queue{basepoint_of(x)};
  seen.set(queue.front());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::uint32_t l = 0; l < 2 * g.generator_count(); ++l) {
      const auto& m = g.realize(Word::letter(l));
      VertexId v = queue[i];
      if (m.defined(v) && !seen.test(m(v))) {
        seen.set(m(v));
        queue.push_back(m(v));
      }
    }
  }
  return seen;
}

namespace {

WallClass classify_with(const CubeGraph& x, const VertexSet& witnesses, WallId w, int depth) {
  WallClass c;
  c.wall = w;
  auto dist = wall_distances(x, w);
  for (VertexId v = 0; v < x.vertex_count(); ++v) {
    if (!witnesses.test(v)) continue;
    int s = x.side_of(v, w);
    int& slot = x.frontier().test(v) ? c.reach_frontier[s] : c.reach_interior[s];
    slot = std::max(slot, dist[v]);
  }
  for (int s = 0; s < 2; ++s) {
    if (x.has_frontier())
      c.deep[s] = c.reach_frontier[s] >= 0 && c.reach_frontier[s] > c.reach_interior[s];
    else
      c.deep[s] = std::max(c.reach_interior[s], c.reach_frontier[s]) >= depth;
  }
  c.type = c.deep[0] && c.deep[1]   ? WallType::essential
           : c.deep[0] || c.deep[1] ? WallType::half_essential
                                    : WallType::trivial;
  return c;
}

}  // namespace

Classification classify_walls(const GroupModel& g, int depth) {
  if (depth < 1) throw ValidationError("depth must be at least 1");
  const CubeGraph& x = g.space();
  Classification c;
  c.depth = depth;
  c.window_relative = x.has_frontier();
  c.witnesses = orbit_witnesses(g);
  for (WallId w = 0; w < x.wall_count(); ++w) c.walls.push_back(classify_with(x, c.witnesses, w, depth));
  return c;
}

WallClass classify_wall(const GroupModel& g, WallId w, int depth) {
  if (depth < 1) throw ValidationError("depth must be at least 1");
  if (w >= g.space().wall_count()) throw ValidationError("unknown wall " + std::to_string(w));
  return classify_with(g.space(), orbit_witnesses(g), w, depth);
}

RestrictionQuotient essential_core(const GroupModel& g, const Classification& c) {
  return restriction_quotient(g.space(), c.of_type(WallType::essential));
}

RestrictionQuotient essential_core(const GroupModel& g, int depth) {
  return essential_core(g, classify_walls(g, depth));
}

namespace {

struct WallUnion {
  std::vector<WallId> parent;
  explicit WallUnion(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<WallId>(i);
  }
  WallId find(WallId a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void join(WallId a, WallId b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<std::vector<WallId>> wall_orbits(const GroupModel& g) {
  const CubeGraph& x = g.space();
  WallUnion uf(x.wall_count());
  for (std::uint32_t l = 0; l < 2 * g.generator_count(); l += 2) {
    const auto& m = g.realize(Word::letter(l));
    for (WallId w = 0; w < x.wall_count(); ++w)
      if (auto img = image_wall(x, m, w)) uf.join(w, *img);
  }
  std::map<WallId, std::vector<WallId>> groups;
  for (WallId w = 0; w < x.wall_count(); ++w) groups[uf.find(w)].push_back(w);
  std::vector<std::vector<WallId>> out;
  for (auto& [root, ws] : groups) out.push_back(std::move(ws));
  return out;
}

OrbitQuotient orbit_quotient(const GroupModel& g, WallId w) {
  const CubeGraph& x = g.space();
  if (w >= x.wall_count()) throw ValidationError("unknown wall " + std::to_string(w));
  OrbitQuotient out;
  std::vector<char> seen(x.wall_count(), 0);
  std::vector<WallId> queue{w};
  seen[w] = 1;
  out.closed = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::uint32_t l = 0; l < 2 * g.generator_count(); ++l) {
      auto img = image_wall(x, g.realize(Word::letter(l)), queue[i]);
      if (!img) {
        out.closed = false;
        continue;
      }
      if (!seen[*img]) {
        seen[*img] = 1;
        queue.push_back(*img);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  out.orbit = queue;
  out.status = out.closed ? "finite" : "window-truncated";
  out.quotient = restriction_quotient(x, queue);
  return out;
}

Subcomplex induced_subcomplex(const CubeGraph& x, const VertexSet& s) {
  Subcomplex y;
  std::vector<VertexId> local(x.vertex_count(), kUndefined);
  SimpleGraph g;
  for (VertexId v = 0; v < x.vertex_count(); ++v)
    if (s.test(v)) {
      local[v] = static_cast<VertexId>(y.to_parent.size());
      y.to_parent.push_back(v);
      g.names.push_back(x.name(v));
    }
  for (auto [a, b] : x.edges())
    if (s.test(a) && s.test(b)) g.edges.push_back({local[a], local[b]});
  VertexSet fr(y.to_parent.size());
  for (VertexId i = 0; i < y.to_parent.size(); ++i)
    if (x.frontier().test(y.to_parent[i])) fr.set(i);
  Provenance prov = x.provenance();
  prov.kind = "subcomplex";
  prov.detail = std::to_string(y.to_parent.size()) + " of " + std::to_string(x.vertex_count()) + " vertices";
  if (prov.basepoint) {
    VertexId b = *prov.basepoint;
    prov.basepoint = local[b] == kUndefined ? std::nullopt : std::optional<VertexId>(local[b]);
  }
  y.graph = CubeGraph::build(g, prov, fr);
  return y;
}

std::unique_ptr<GroupModel> restrict_group(const GroupModel& g, const Subcomplex& y) {
  std::vector<VertexId> local(g.space().vertex_count(), kUndefined);
  for (VertexId i = 0; i < y.to_parent.size(); ++i) local[y.to_parent[i]] = i;
  std::vector<std::string> names;
  std::vector<PartialMap> maps;
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    const auto& m = g.realize(Word::letter(static_cast<std::uint32_t>(2 * i)));
    PartialMap r;
    r.image.assign(y.to_parent.size(), kUndefined);
    for (VertexId v = 0; v < y.to_parent.size(); ++v) {
      VertexId u = y.to_parent[v];
      if (m.defined(u) && local[m(u)] != kUndefined) r.image[v] = local[m(u)];
    }
    names.push_back(g.generator_name(i));
    maps.push_back(std::move(r));
  }
  return std::make_unique<PermutationGroup>(y.graph, std::move(names), std::move(maps));
}

PruneResult prune(const GroupModel& g, int depth, int max_rounds) {
  PruneResult out;
  const CubeGraph& x = g.space();
  out.window_relative = x.has_frontier();
  out.chain.push_back(x.full_set());
  const GroupModel* cur = &g;
  std::vector<VertexId> to_root(x.vertex_count());
  for (VertexId v = 0; v < x.vertex_count(); ++v) to_root[v] = v;

  for (int round = 0;; ++round) {
    const CubeGraph& y = cur->space();
    Classification c = classify_walls(*cur, depth);
    auto half = c.of_type(WallType::half_essential);
    if (half.empty()) {
      out.final_classification = std::move(c);
      out.log.push_back("round " + std::to_string(round) + ": no half-essential walls, stop");
      break;
    }
    if (round >= max_rounds) {
      out.inconclusive = true;
      out.reason = "round limit " + std::to_string(max_rounds) + " reached";
      out.final_classification = std::move(c);
      break;
    }
    VertexSet keep = y.full_set();
    for (WallId w : half) {
      const auto& wc = c.walls[w];
      keep &= y.halfspace({w, static_cast<std::uint8_t>(wc.deep[1] ? 1 : 0)});
    }
    out.log.push_back("round " + std::to_string(round) + ": " + std::to_string(half.size()) +
                      " half-essential walls, " + std::to_string(keep.count()) + " of " +
                      std::to_string(y.vertex_count()) + " vertices kept");
    if (keep.none()) {
      out.inconclusive = true;
      out.reason = "deep sides of the half-essential walls do not meet";
      out.final_classification = std::move(c);
      break;
    }
    VertexSet in_root = x.empty_set();
    for (VertexId v = 0; v < y.vertex_count(); ++v)
      if (keep.test(v)) in_root.set(to_root[v]);
    out.chain.push_back(in_root);

    auto sub = std::make_shared<Subcomplex>(induced_subcomplex(y, keep));
    std::vector<VertexId> next_root(sub->to_parent.size());
    for (VertexId i = 0; i < sub->to_parent.size(); ++i) next_root[i] = to_root[sub->to_parent[i]];
    std::shared_ptr<GroupModel> grp = restrict_group(*cur, *sub);
    out.final_stage = sub;
    out.final_group = grp;
    cur = grp.get();
    to_root = std::move(next_root);
  }
  return out;
}

}  // namespace cubecore
