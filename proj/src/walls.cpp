#include "cubecore/walls.hpp"

#include "cubecore/errors.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace cubecore {

Decomposition decompose(const CubeGraph& x) {
  Decomposition d;
  const std::size_t m = x.wall_count();
  std::vector<std::uint32_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (WallId a = 0; a < m; ++a)
    for (WallId b = a + 1; b < m; ++b)
      if (!x.crosses(a, b)) {
        auto ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
  std::vector<int> slot(m, -1);
  for (WallId w = 0; w < m; ++w) {
    auto r = find(w);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(d.factors.size());
      d.factors.emplace_back();
    }
    d.factors[slot[r]].push_back(w);
  }
  for (const auto& f : d.factors) d.factor_quotients.push_back(restriction_quotient(x, f));
  d.coords.assign(x.vertex_count(), std::vector<VertexId>(d.factors.size()));
  for (VertexId v = 0; v < x.vertex_count(); ++v)
    for (std::size_t i = 0; i < d.factors.size(); ++i) d.coords[v][i] = d.factor_quotients[i].projection[v];
  d.product_verified = verify_product_witness(x, d, &d.verification_note);
  return d;
}

bool verify_product_witness(const CubeGraph& x, const Decomposition& d, std::string* why) {
  auto fail = [&](std::string s) {
    if (why) *why = std::move(s);
    return false;
  };
  const std::size_t k = d.factors.size();
  if (k == 0) {
    if (x.vertex_count() != 1) return fail("no factors but more than one vertex");
    if (why) *why = "single vertex";
    return true;
  }
  std::size_t prod = 1, edges = 0;
  for (std::size_t i = 0; i < k; ++i) prod *= d.factor_quotients[i].quotient.vertex_count();
  if (prod != x.vertex_count()) return fail("vertex count differs from product");
  for (std::size_t i = 0; i < k; ++i) {
    const auto& f = d.factor_quotients[i].quotient;
    edges += f.edge_count() * (prod / f.vertex_count());
  }
  if (edges != x.edge_count()) return fail("edge count differs from product");
  std::vector<std::vector<VertexId>> seen(d.coords);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return fail("coordinate map not injective");
  for (auto [u, v] : x.edges()) {
    int diff = -1;
    for (std::size_t i = 0; i < k; ++i)
      if (d.coords[u][i] != d.coords[v][i]) {
        if (diff >= 0) return fail("edge moves two coordinates");
        diff = static_cast<int>(i);
      }
    if (diff < 0) return fail("edge collapses");
    if (!d.factor_quotients[diff].quotient.adjacent(d.coords[u][diff], d.coords[v][diff]))
      return fail("edge maps to a non-edge");
  }
  if (why) *why = "coordinate map is a bijective edge map with matching edge count";
  return true;
}

bool is_irreducible(const CubeGraph& x) { return decompose(x).factors.size() <= 1; }

bool strongly_separated(const CubeGraph& x, WallId w1, WallId w2) {
  if (w1 == w2) throw ValidationError("strong separation needs two distinct walls");
  if (x.crosses(w1, w2)) return false;
  return (x.crossing_row(w1) & x.crossing_row(w2)).none();
}

VertexSet carrier(const CubeGraph& x, WallId w) {
  VertexSet c = x.empty_set();
  for (EdgeId e : x.wall(w).dual_edges) {
    c.set(x.edge(e).first);
    c.set(x.edge(e).second);
  }
  return c;
}

int wall_gap(const CubeGraph& x, WallId a, WallId b) {
  auto d = wall_distances(x, a);
  int best = kUnreachable;
  for (EdgeId e : x.wall(b).dual_edges)
    for (VertexId v : {x.edge(e).first, x.edge(e).second})
      if (best == kUnreachable || d[v] < best) best = d[v];
  return best;
}

bool halfspaces_disjoint(const CubeGraph& x, Halfspace a, Halfspace b) {
  return !x.halfspace(a).intersects(x.halfspace(b));
}

bool halfspace_properly_contains(const CubeGraph& x, Halfspace outer, Halfspace inner) {
  const auto& o = x.halfspace(outer);
  const auto& i = x.halfspace(inner);
  return i.is_subset_of(o) && i != o;
}

std::optional<SSPair> find_ss_pair_through(const CubeGraph& x, Halfspace h) {
  const WallId w = h.wall;
  auto dist = wall_distances(x, w);
  auto gap = [&](WallId u) {
    int best = -1;
    for (EdgeId e : x.wall(u).dual_edges)
      for (VertexId v : {x.edge(e).first, x.edge(e).second})
        if (best < 0 || dist[v] < best) best = dist[v];
    return best;
  };
  std::vector<std::pair<int, Halfspace>> inner, outer;
  for (WallId u = 0; u < x.wall_count(); ++u) {
    if (u == w || x.crosses(u, w)) continue;
    for (std::uint8_t s = 0; s < 2; ++s) {
      Halfspace k{u, s};
      if (halfspace_properly_contains(x, h, k)) inner.push_back({gap(u), k});
      if (halfspace_properly_contains(x, k, h)) outer.push_back({gap(u), k});
    }
  }
  std::vector<std::tuple<int, std::uint32_t, std::uint32_t>> cand;
  for (auto& [gi, ki] : inner)
    for (auto& [go, ko] : outer) cand.push_back({gi + go, ki.index(), ko.index()});
  std::sort(cand.begin(), cand.end());
  for (auto [g, a, b] : cand) {
    Halfspace ki = Halfspace::from_index(a), ko = Halfspace::from_index(b);
    if (strongly_separated(x, ki.wall, ko.wall)) return SSPair{ki, ko};
  }
  return std::nullopt;
}

std::optional<FacingTriple> facing_triple(const CubeGraph& x) {
  const std::size_t n = 2 * x.wall_count();
  // disjoint[a] over half-space indices > a, computed lazily
  std::vector<boost::dynamic_bitset<std::uint64_t>> disj(n);
  std::vector<char> ready(n, 0);
  auto row = [&](std::uint32_t a) -> const boost::dynamic_bitset<std::uint64_t>& {
    if (!ready[a]) {
      disj[a].resize(n);
      const auto& sa = x.halfspace(Halfspace::from_index(a));
      for (std::uint32_t b = a + 1; b < n; ++b)
        if ((b >> 1) != (a >> 1) && !sa.intersects(x.halfspace(Halfspace::from_index(b)))) disj[a].set(b);
      ready[a] = 1;
    }
    return disj[a];
  };
  for (std::uint32_t a = 0; a < n; ++a) {
    const auto& ra = row(a);
    for (auto b = ra.find_first(); b != ra.npos; b = ra.find_next(b)) {
      auto both = ra & row(static_cast<std::uint32_t>(b));
      auto c = both.find_first();
      if (c != both.npos)
        return FacingTriple{{Halfspace::from_index(a), Halfspace::from_index(static_cast<std::uint32_t>(b)),
                             Halfspace::from_index(static_cast<std::uint32_t>(c))}};
    }
  }
  return std::nullopt;
}

int ramsey_number(int k, int m) {
  if (k > m) std::swap(k, m);
  if (k < 1 || m > 5) return 0;
  if (k == 1) return 1;
  if (k == 2) return m;
  static const int table[3][3] = {{6, 9, 14}, {0, 18, 25}, {0, 0, 48}};
  return table[k - 3][m - 3];
}

PencilResult extract_pencil(const CubeGraph& x, const std::vector<VertexId>& geodesic, int k) {
  PencilResult res;
  std::vector<WallId> crossed;
  std::vector<char> seen(x.wall_count(), 0);
  for (std::size_t i = 0; i + 1 < geodesic.size(); ++i) {
    auto e = x.edge_between(geodesic[i], geodesic[i + 1]);
    if (!e)
      throw ValidationError("path step " + x.name(geodesic[i]) + " -> " + x.name(geodesic[i + 1]) +
                            " is not an edge");
    WallId w = x.wall_of_edge(*e);
    if (seen[w]) throw ValidationError("path is not geodesic: wall " + std::to_string(w) + " crossed twice");
    seen[w] = 1;
    crossed.push_back(w);
  }
  res.walls_crossed = crossed.size();
  res.ramsey_threshold = ramsey_number(k, dimension(x) + 1);
  res.guaranteed = res.ramsey_threshold > 0 && crossed.size() >= std::size_t(res.ramsey_threshold);
  if (k <= 0) {
    res.pencil = Pencil{};
    return res;
  }
  // Maximum independent set of the crossing graph on the crossed walls.
  const std::size_t m = crossed.size();
  std::vector<boost::dynamic_bitset<std::uint64_t>> comp(m, boost::dynamic_bitset<std::uint64_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && !x.crosses(crossed[i], crossed[j])) comp[i].set(j);
  auto indep = max_clique(comp);
  if (indep.size() < std::size_t(k)) return res;
  std::sort(indep.begin(), indep.end());
  Pencil p;
  const VertexId end = geodesic.back();
  for (int i = 0; i < k; ++i) p.chain.push_back(x.halfspace_containing(end, crossed[indep[i]]));
  res.pencil = std::move(p);
  return res;
}

HellyResult helly_point(const CubeGraph& x, const std::vector<Halfspace>& family) {
  HellyResult r;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (halfspaces_disjoint(x, family[i], family[j])) {
        r.disjoint_pair = std::make_pair(family[i], family[j]);
        return r;
      }
  VertexSet s = x.full_set();
  for (const auto& h : family) s &= x.halfspace(h);
  if (s.none()) throw ValidationError("pairwise intersecting half-spaces with empty intersection");
  r.point = static_cast<VertexId>(s.find_first());
  return r;
}

std::array<VertexSet, 4> sectors(const CubeGraph& x, WallId w1, WallId w2) {
  if (w1 == w2 || !x.crosses(w1, w2)) throw ValidationError("sectors need two crossing walls");
  std::array<VertexSet, 4> out;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) out[2 * s + t] = x.wall(w1).side[s] & x.wall(w2).side[t];
  return out;
}

std::vector<WallId> walls_in_sector(const CubeGraph& x, WallId w1, WallId w2, int sector) {
  auto q = sectors(x, w1, w2);
  if (sector < 0 || sector > 3) throw ValidationError("sector index must be 0..3");
  std::vector<WallId> out;
  for (WallId w = 0; w < x.wall_count(); ++w) {
    if (w == w1 || w == w2) continue;
    if (carrier(x, w).is_subset_of(q[sector])) out.push_back(w);
  }
  return out;
}

}  // namespace cubecore
