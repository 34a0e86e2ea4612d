#include "cubecore/cube_graph.hpp"

#include "cubecore/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_map>

namespace cubecore {

namespace {

std::uint64_t edge_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  }
};

std::vector<int> bfs(const std::vector<std::vector<VertexId>>& adj, VertexId src) {
  std::vector<int> d(adj.size(), kUnreachable);
  std::deque<VertexId> q{src};
  d[src] = 0;
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop_front();
    for (VertexId w : adj[u]) {
      if (d[w] == kUnreachable) {
        d[w] = d[u] + 1;
        q.push_back(w);
      }
    }
  }
  return d;
}

VertexSet interval_from_distances(const std::vector<int>& da, const std::vector<int>& db, int dab) {
  VertexSet s(da.size());
  for (std::size_t v = 0; v < da.size(); ++v)
    if (da[v] + db[v] == dab) s.set(v);
  return s;
}

// Calls f(u, v, x, w) for every 4-cycle u-v-x-w-u with v < w, x != u, once
// per corner u.
template <class F>
void for_each_square(const std::vector<std::vector<VertexId>>& adj, F&& f) {
  std::vector<VertexId> common;
  for (VertexId u = 0; u < adj.size(); ++u) {
    const auto& nu = adj[u];
    for (std::size_t i = 0; i < nu.size(); ++i) {
      for (std::size_t j = i + 1; j < nu.size(); ++j) {
        VertexId v = nu[i], w = nu[j];
        common.clear();
        std::set_intersection(adj[v].begin(), adj[v].end(), adj[w].begin(), adj[w].end(),
                              std::back_inserter(common));
        for (VertexId x : common)
          if (x != u) f(u, v, x, w);
      }
    }
  }
}

std::string triple_text(const SimpleGraph& g, VertexId a, VertexId b, VertexId c) {
  return "(" + g.names[a] + ", " + g.names[b] + ", " + g.names[c] + ")";
}

}  // namespace

std::vector<std::vector<VertexId>> SimpleGraph::adjacency() const {
  std::vector<std::vector<VertexId>> adj(names.size());
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

MedianReport verify_median(const SimpleGraph& g, std::uint64_t seed, std::size_t exhaustive_limit) {
  MedianReport rep;
  const std::size_t n = g.vertex_count();
  if (n == 0) {
    rep.reason = "empty graph";
    return rep;
  }
  for (auto [u, v] : g.edges) {
    if (u >= n || v >= n) {
      rep.reason = "edge endpoint out of range";
      return rep;
    }
    if (u == v) {
      rep.reason = "self-loop at " + g.names[u];
      return rep;
    }
  }
  auto adj = g.adjacency();
  for (VertexId u = 0; u < n; ++u) {
    if (std::adjacent_find(adj[u].begin(), adj[u].end()) != adj[u].end()) {
      rep.reason = "multiple edges at " + g.names[u];
      return rep;
    }
  }
  auto d0 = bfs(adj, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (d0[v] == kUnreachable) {
      rep.reason = "disconnected: " + g.names[v] + " unreachable from " + g.names[0];
      return rep;
    }
  }
  for (auto [u, v] : g.edges) {
    if (d0[u] == d0[v]) {
      rep.reason = "not bipartite: edge " + g.names[u] + "-" + g.names[v];
      return rep;
    }
  }

  auto check = [&](VertexId a, VertexId b, VertexId c, const VertexSet& ab, const VertexSet& bc,
                   const VertexSet& ac) {
    ++rep.triples_checked;
    auto cnt = (ab & bc & ac).count();
    if (cnt == 1) return true;
    rep.violating_triple = std::array<VertexId, 3>{a, b, c};
    rep.reason = (cnt == 0 ? "no median for " : "several medians for ") + triple_text(g, a, b, c);
    return false;
  };

  if (n <= exhaustive_limit) {
    rep.exhaustive = true;
    std::vector<std::vector<int>> dist(n);
    for (VertexId v = 0; v < n; ++v) dist[v] = bfs(adj, v);
    std::vector<VertexSet> iv(n * n);
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = a; b < n; ++b) {
        iv[a * n + b] = interval_from_distances(dist[a], dist[b], dist[a][b]);
        iv[b * n + a] = iv[a * n + b];
      }
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = a + 1; b < n; ++b)
        for (VertexId c = b + 1; c < n; ++c)
          if (!check(a, b, c, iv[a * n + b], iv[b * n + c], iv[a * n + c])) return rep;
    rep.valid = true;
    return rep;
  }

  // Sampled: a pool of BFS roots, triples drawn from the pool.
  std::mt19937_64 rng(seed);
  const std::size_t pool_size = std::min<std::size_t>(n, 64);
  std::vector<VertexId> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(pool_size);
  std::vector<std::vector<int>> dist(pool_size);
  for (std::size_t i = 0; i < pool_size; ++i) dist[i] = bfs(adj, pool[i]);
  std::vector<VertexSet> iv(pool_size * pool_size);
  for (std::size_t i = 0; i < pool_size; ++i)
    for (std::size_t j = i; j < pool_size; ++j) {
      iv[i * pool_size + j] = interval_from_distances(dist[i], dist[j], dist[i][pool[j]]);
      iv[j * pool_size + i] = iv[i * pool_size + j];
    }
  std::uniform_int_distribution<std::size_t> pick(0, pool_size - 1);
  const std::size_t samples = 10 * n;
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
    if (!check(pool[i], pool[j], pool[k], iv[i * pool_size + j], iv[j * pool_size + k],
               iv[i * pool_size + k]))
      return rep;
  }
  rep.valid = true;
  return rep;
}

WallDecomposition theta_classes(const SimpleGraph& g) {
  WallDecomposition out;
  out.edges = g.edges;
  for (auto& e : out.edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  std::unordered_map<std::uint64_t, EdgeId> index;
  index.reserve(out.edges.size() * 2);
  for (EdgeId e = 0; e < out.edges.size(); ++e) index[edge_key(out.edges[e].first, out.edges[e].second)] = e;

  auto adj = g.adjacency();
  UnionFind uf(out.edges.size());
  for_each_square(adj, [&](VertexId u, VertexId v, VertexId x, VertexId w) {
    uf.unite(index.at(edge_key(u, v)), index.at(edge_key(w, x)));
    uf.unite(index.at(edge_key(u, w)), index.at(edge_key(v, x)));
  });
  // Union-find roots are the minimal edge of each class, so numbering roots
  // in edge order numbers walls by their first dual edge.
  std::vector<WallId> id_of_root(out.edges.size(), ~WallId{0});
  out.wall_of_edge.resize(out.edges.size());
  for (EdgeId e = 0; e < out.edges.size(); ++e) {
    auto r = uf.find(e);
    if (id_of_root[r] == ~WallId{0}) id_of_root[r] = static_cast<WallId>(out.wall_count++);
    out.wall_of_edge[e] = id_of_root[r];
  }
  return out;
}

CubeGraph CubeGraph::build(const SimpleGraph& g, Provenance prov, VertexSet frontier,
                           BuildOptions opts) {
  if (opts.verify) {
    auto rep = verify_median(g, opts.seed);
    if (!rep.valid) throw ValidationError("not a median graph: " + rep.reason);
  } else if (g.vertex_count() == 0) {
    throw ValidationError("not a median graph: empty graph");
  }
  CubeGraph x;
  x.names_ = g.names;
  x.prov_ = std::move(prov);
  const std::size_t n = g.vertex_count();
  x.frontier_ = frontier.size() == n ? std::move(frontier) : VertexSet(n);

  auto dec = theta_classes(g);
  x.edges_ = dec.edges;
  x.wall_of_edge_ = dec.wall_of_edge;
  x.adj_ = g.adjacency();
  x.incident_.assign(n, {});
  for (EdgeId e = 0; e < x.edges_.size(); ++e) {
    auto [u, v] = x.edges_[e];
    x.incident_[u].push_back({v, e});
    x.incident_[v].push_back({u, e});
  }
  for (auto& inc : x.incident_) std::sort(inc.begin(), inc.end());

  x.walls_.resize(dec.wall_count);
  for (WallId w = 0; w < dec.wall_count; ++w) x.walls_[w].id = w;
  for (EdgeId e = 0; e < x.edges_.size(); ++e) x.walls_[x.wall_of_edge_[e]].dual_edges.push_back(e);

  // Each vertex meets at most one dual edge of any wall.
  for (VertexId u = 0; u < n; ++u) {
    std::vector<WallId> seen;
    for (auto [v, e] : x.incident_[u]) seen.push_back(x.wall_of_edge_[e]);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw ValidationError("non-cubical: vertex " + x.names_[u] +
                            " meets two edges of one theta-class");
  }

  std::vector<char> dual(x.edges_.size(), 0);
  for (auto& wall : x.walls_) {
    for (EdgeId e : wall.dual_edges) dual[e] = 1;
    VertexSet s0(n);
    VertexId start = x.edges_[wall.dual_edges.front()].first;
    std::deque<VertexId> q{start};
    s0.set(start);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop_front();
      for (auto [v, e] : x.incident_[u]) {
        if (dual[e] || s0.test(v)) continue;
        s0.set(v);
        q.push_back(v);
      }
    }
    for (EdgeId e : wall.dual_edges) dual[e] = 0;
    VertexSet s1 = ~s0;
    for (EdgeId e : wall.dual_edges) {
      auto [u, v] = x.edges_[e];
      if (s0.test(u) == s0.test(v))
        throw ValidationError("non-cubical: theta-class " + std::to_string(wall.id) +
                              " does not separate " + x.names_[u] + " from " + x.names_[v]);
    }
    // side 1 must be connected too
    if (s1.any()) {
      VertexSet seen(n);
      VertexId st = static_cast<VertexId>(s1.find_first());
      std::deque<VertexId> q2{st};
      seen.set(st);
      while (!q2.empty()) {
        VertexId u = q2.front();
        q2.pop_front();
        for (VertexId v : x.adj_[u])
          if (s1.test(v) && !seen.test(v)) {
            seen.set(v);
            q2.push_back(v);
          }
      }
      if (seen != s1)
        throw ValidationError("non-cubical: theta-class " + std::to_string(wall.id) +
                              " leaves more than two components");
    }
    wall.side[0] = std::move(s0);
    wall.side[1] = std::move(s1);
  }

  x.crossing_.assign(dec.wall_count, boost::dynamic_bitset<std::uint64_t>(dec.wall_count));
  std::unordered_map<std::uint64_t, EdgeId> index;
  for (EdgeId e = 0; e < x.edges_.size(); ++e) index[edge_key(x.edges_[e].first, x.edges_[e].second)] = e;
  for_each_square(x.adj_, [&](VertexId u, VertexId v, VertexId, VertexId w) {
    WallId a = x.wall_of_edge_[index.at(edge_key(u, v))];
    WallId b = x.wall_of_edge_[index.at(edge_key(u, w))];
    if (a == b) throw ValidationError("non-cubical: square with two edges of one theta-class");
    x.crossing_[a].set(b);
    x.crossing_[b].set(a);
  });
  return x;
}

std::optional<VertexId> CubeGraph::find(const std::string& name) const {
  for (VertexId v = 0; v < names_.size(); ++v)
    if (names_[v] == name) return v;
  return std::nullopt;
}

std::optional<EdgeId> CubeGraph::edge_between(VertexId u, VertexId v) const {
  const auto& inc = incident_[u];
  auto it = std::lower_bound(inc.begin(), inc.end(), std::pair<VertexId, EdgeId>{v, 0});
  if (it != inc.end() && it->first == v) return it->second;
  return std::nullopt;
}

std::vector<int> CubeGraph::distances_from(VertexId v) const { return bfs(adj_, v); }

std::vector<int> CubeGraph::distances_from(const VertexSet& sources) const {
  std::vector<int> d(vertex_count(), kUnreachable);
  std::deque<VertexId> q;
  for (auto v = sources.find_first(); v != VertexSet::npos; v = sources.find_next(v)) {
    d[v] = 0;
    q.push_back(static_cast<VertexId>(v));
  }
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop_front();
    for (VertexId w : adj_[u])
      if (d[w] == kUnreachable) {
        d[w] = d[u] + 1;
        q.push_back(w);
      }
  }
  return d;
}

SimpleGraph CubeGraph::as_simple_graph() const { return SimpleGraph{names_, edges_}; }

int l1_distance(const CubeGraph& x, VertexId a, VertexId b) { return x.distances_from(a)[b]; }

std::vector<WallId> separating_walls(const CubeGraph& x, VertexId a, VertexId b) {
  std::vector<WallId> out;
  for (const auto& w : x.walls())
    if (w.side[1].test(a) != w.side[1].test(b)) out.push_back(w.id);
  return out;
}

VertexSet interval(const CubeGraph& x, VertexId a, VertexId b) {
  auto da = x.distances_from(a);
  auto db = x.distances_from(b);
  return interval_from_distances(da, db, da[b]);
}

VertexId median(const CubeGraph& x, VertexId a, VertexId b, VertexId c) {
  auto da = x.distances_from(a), db = x.distances_from(b), dc = x.distances_from(c);
  VertexSet m = interval_from_distances(da, db, da[b]) & interval_from_distances(db, dc, db[c]) &
                interval_from_distances(da, dc, da[c]);
  if (m.count() != 1) throw ValidationError("median not unique");
  return static_cast<VertexId>(m.find_first());
}

VertexSet convex_hull(const CubeGraph& x, const VertexSet& s) {
  VertexSet hull = x.full_set();
  if (s.none()) return x.empty_set();
  for (const auto& w : x.walls()) {
    if (s.is_subset_of(w.side[0]))
      hull &= w.side[0];
    else if (s.is_subset_of(w.side[1]))
      hull &= w.side[1];
  }
  return hull;
}

bool is_convex(const CubeGraph& x, const VertexSet& s) { return s.none() || convex_hull(x, s) == s; }

std::vector<std::uint32_t> max_clique(const std::vector<boost::dynamic_bitset<std::uint64_t>>& adj) {
  using Bits = boost::dynamic_bitset<std::uint64_t>;
  const std::size_t n = adj.size();
  std::vector<std::uint32_t> best, cur;
  // Simple branch and bound; candidates kept in ascending index order.
  auto expand = [&](auto&& self, Bits cand) -> void {
    if (cand.none()) {
      if (cur.size() > best.size()) best = cur;
      return;
    }
    while (cand.any()) {
      if (cur.size() + cand.count() <= best.size()) return;
      auto v = cand.find_first();
      cand.reset(v);
      cur.push_back(static_cast<std::uint32_t>(v));
      self(self, cand & adj[v]);
      cur.pop_back();
    }
    if (cur.size() > best.size()) best = cur;
  };
  Bits all(n);
  all.set();
  if (n > 0) expand(expand, all);
  return best;
}

int dimension(const CubeGraph& x) {
  std::vector<boost::dynamic_bitset<std::uint64_t>> adj;
  adj.reserve(x.wall_count());
  for (WallId w = 0; w < x.wall_count(); ++w) adj.push_back(x.crossing_row(w));
  return static_cast<int>(max_clique(adj).size());
}

std::vector<int> wall_distances(const CubeGraph& x, WallId w) {
  VertexSet carrier = x.empty_set();
  for (EdgeId e : x.wall(w).dual_edges) {
    carrier.set(x.edge(e).first);
    carrier.set(x.edge(e).second);
  }
  return x.distances_from(carrier);
}

int wall_distance(const CubeGraph& x, VertexId v, WallId w) { return wall_distances(x, w)[v]; }

}  // namespace cubecore
