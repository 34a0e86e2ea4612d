#include "cubecore/pocset.hpp"

#include "cubecore/errors.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace cubecore {

namespace {

// Warshall closure on bitset rows.
void transitive_close(std::vector<ElementSet>& above) {
  const std::size_t n = above.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (above[i].test(k)) above[i] |= above[k];
}

ElementSet swap_pairs(const ElementSet& s) {
  ElementSet even(s.size());
  for (std::size_t i = 0; i < s.size(); i += 2) even.set(i);
  return ((s >> 1) & even) | ((s << 1) & ~even);
}

std::string choice_string(const ElementSet& u) {
  if (u.size() == 0) return "()";
  std::string s;
  for (std::size_t i = 0; i < u.size(); i += 2) s += u.test(i) ? '0' : '1';
  return s;
}

}  // namespace

Pocset Pocset::from_relations(const std::vector<std::pair<std::string, std::string>>& pairs,
                              const std::vector<std::pair<ElementId, ElementId>>& less) {
  Pocset p;
  for (const auto& [a, b] : pairs) {
    p.names_.push_back(a);
    p.names_.push_back(b);
  }
  const std::size_t n = p.names_.size();
  p.above_.assign(n, ElementSet(n));
  for (auto [a, b] : less) {
    if (a >= n || b >= n) throw ValidationError("relation refers to an unknown element");
    p.above_[a].set(b);
    p.above_[star(b)].set(star(a));
  }
  transitive_close(p.above_);
  return p;
}

Pocset Pocset::from_raw(std::vector<std::string> names, std::vector<ElementSet> above) {
  if (names.size() % 2 != 0) throw ValidationError("elements must come in pairs");
  Pocset p;
  p.names_ = std::move(names);
  p.above_ = std::move(above);
  return p;
}

std::optional<ElementId> Pocset::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<ElementId>(it - names_.begin());
}

bool Pocset::transverse(std::size_t i, std::size_t j) const {
  for (ElementId a : {ElementId(2 * i), ElementId(2 * i + 1)})
    for (ElementId b : {ElementId(2 * j), ElementId(2 * j + 1)})
      if (comparable(a, b)) return false;
  return true;
}

std::vector<std::pair<ElementId, ElementId>> Pocset::cover_relations() const {
  std::vector<std::pair<ElementId, ElementId>> out;
  for (ElementId a = 0; a < size(); ++a)
    for (auto b = above_[a].find_first(); b != ElementSet::npos; b = above_[a].find_next(b)) {
      bool covers = true;
      for (auto c = above_[a].find_first(); c != ElementSet::npos && covers; c = above_[a].find_next(c))
        if (c != b && above_[c].test(b)) covers = false;
      if (covers) out.push_back({a, static_cast<ElementId>(b)});
    }
  return out;
}

std::vector<std::uint32_t> max_transverse_family(const Pocset& p) {
  const std::size_t m = p.pair_count();
  std::vector<boost::dynamic_bitset<std::uint64_t>> adj(m, boost::dynamic_bitset<std::uint64_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (p.transverse(i, j)) {
        adj[i].set(j);
        adj[j].set(i);
      }
  return max_clique(adj);
}

int pocset_width(const Pocset& p) { return static_cast<int>(max_transverse_family(p).size()); }

PocsetReport verify_pocset(const Pocset& p) {
  PocsetReport rep;
  const std::size_t n = p.size();
  auto fail = [&](std::string why, ElementId a, ElementId b) {
    rep.reason = std::move(why) + ": " + p.name(a) + ", " + p.name(b);
    rep.offending = std::make_pair(a, b);
    return rep;
  };
  for (ElementId a = 0; a < n; ++a) {
    if (p.above(a).size() != n) {
      rep.reason = "order row has wrong size";
      return rep;
    }
  }
  for (ElementId a = 0; a < n; ++a)
    if (p.less(a, a)) return fail("order not irreflexive", a, a);
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      if (p.less(a, b))
        for (ElementId c = 0; c < n; ++c)
          if (p.less(b, c) && !p.less(a, c)) return fail("order not transitive", a, c);
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      if (p.less(a, b) && !p.less(Pocset::star(b), Pocset::star(a)))
        return fail("involution not order-reversing", a, b);
  for (ElementId a = 0; a < n; ++a)
    if (p.comparable(a, Pocset::star(a))) return fail("element comparable to involute", a, Pocset::star(a));
  std::vector<std::string> names = p.names();
  std::sort(names.begin(), names.end());
  if (auto it = std::adjacent_find(names.begin(), names.end()); it != names.end()) {
    auto a = *p.find(*it);
    ElementId b = a;
    for (ElementId c = a + 1; c < n; ++c)
      if (p.name(c) == *it) b = c;
    return fail("duplicate element name", a, b);
  }
  rep.valid = true;
  rep.width = pocset_width(p);
  rep.max_interval = n ? 1 : 0;
  for (ElementId a = 0; a < n; ++a)
    for (auto b = p.above(a).find_first(); b != ElementSet::npos; b = p.above(a).find_next(b)) {
      int len = 2;
      for (auto c = p.above(a).find_first(); c != ElementSet::npos; c = p.above(a).find_next(c))
        if (p.less(static_cast<ElementId>(c), static_cast<ElementId>(b))) ++len;
      rep.max_interval = std::max(rep.max_interval, len);
    }
  return rep;
}

std::vector<ElementSet> ultrafilters(const Pocset& p, const DualOptions& opts) {
  const std::size_t n = p.size(), m = p.pair_count();
  if (m > 0) {
    int w = pocset_width(p);
    if (w > opts.max_width)
      throw BudgetExceeded("pocset width " + std::to_string(w) + " exceeds bound " +
                               std::to_string(opts.max_width),
                           w >= 63 ? ~std::size_t{0} : std::size_t{1} << w);
  }
  std::vector<ElementSet> up(n);
  for (ElementId x = 0; x < n; ++x) {
    up[x] = p.above(x);
    up[x].set(x);
  }
  std::vector<ElementSet> out;
  ElementSet chosen(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    while (i < m && (chosen.test(2 * i) || chosen.test(2 * i + 1))) ++i;
    if (i == m) {
      if (out.size() >= opts.max_vertices)
        throw BudgetExceeded("dual complex exceeds " + std::to_string(opts.max_vertices) + " vertices",
                             out.size() + 1);
      out.push_back(chosen);
      return;
    }
    for (ElementId x : {ElementId(2 * i), ElementId(2 * i + 1)}) {
      ElementSet next = chosen | up[x];
      if ((next & swap_pairs(next)).any()) continue;
      ElementSet saved = chosen;
      chosen = std::move(next);
      rec(i + 1);
      chosen = std::move(saved);
    }
  };
  rec(0);
  return out;
}

CubeGraph dual_complex(const Pocset& p, const DualOptions& opts) {
  auto vr = verify_pocset(p);
  if (!vr.valid) throw ValidationError("invalid pocset: " + vr.reason);
  auto us = ultrafilters(p, opts);
  SimpleGraph g;
  std::unordered_map<std::string, VertexId> index;
  for (VertexId v = 0; v < us.size(); ++v) {
    g.names.push_back(choice_string(us[v]));
    index[g.names.back()] = v;
  }
  for (VertexId v = 0; v < us.size(); ++v) {
    const std::string& s = g.names[v];
    for (std::size_t i = 0; i < p.pair_count(); ++i) {
      if (s[i] != '0') continue;
      std::string t = s;
      t[i] = '1';
      if (auto it = index.find(t); it != index.end()) g.edges.push_back({v, it->second});
    }
  }
  Provenance prov;
  prov.kind = "dual";
  prov.detail = std::to_string(p.pair_count()) + " pairs";
  return CubeGraph::build(g, prov);
}

Pocset halfspace_pocset(const CubeGraph& x) {
  std::vector<std::string> names;
  const std::size_t n = 2 * x.wall_count();
  for (WallId w = 0; w < x.wall_count(); ++w) {
    names.push_back("h" + std::to_string(w));
    names.push_back("h" + std::to_string(w) + "*");
  }
  std::vector<ElementSet> above(n, ElementSet(n));
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto& sa = x.halfspace(Halfspace::from_index(a));
      const auto& sb = x.halfspace(Halfspace::from_index(b));
      if (sa != sb && sa.is_subset_of(sb)) above[a].set(b);
    }
  return Pocset::from_raw(std::move(names), std::move(above));
}

bool is_pocset_isomorphism(const Pocset& p, const Pocset& q, const std::vector<ElementId>& f) {
  const std::size_t n = p.size();
  if (q.size() != n || f.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (ElementId a = 0; a < n; ++a) {
    if (f[a] >= n || hit[f[a]]) return false;
    hit[f[a]] = 1;
    if (f[Pocset::star(a)] != Pocset::star(f[a])) return false;
  }
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      if (p.less(a, b) != q.less(f[a], f[b])) return false;
  return true;
}

std::optional<std::vector<ElementId>> pocset_isomorphism(const Pocset& p, const Pocset& q) {
  const std::size_t n = p.size(), m = p.pair_count();
  if (q.size() != n) return std::nullopt;
  // element signature: (#above, #below)
  auto sig = [](const Pocset& r, ElementId a) {
    std::size_t below = 0;
    for (ElementId b = 0; b < r.size(); ++b) below += r.less(b, a);
    return std::make_pair(r.above(a).count(), below);
  };
  std::vector<std::pair<std::size_t, std::size_t>> sp(n), sq(n);
  for (ElementId a = 0; a < n; ++a) {
    sp[a] = sig(p, a);
    sq[a] = sig(q, a);
  }
  {
    auto a = sp, b = sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  // Order pairs of p so that constrained pairs come first.
  std::vector<std::uint32_t> order(m);
  for (std::uint32_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
    return sp[2 * i].first + sp[2 * i].second > sp[2 * j].first + sp[2 * j].second;
  });
  std::vector<ElementId> f(n, ~ElementId{0});
  std::vector<char> used(m, 0);
  std::vector<ElementId> assigned;
  std::function<bool(std::size_t)> rec = [&](std::size_t k) {
    if (k == m) return true;
    std::uint32_t i = order[k];
    for (std::uint32_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      for (std::uint32_t o = 0; o < 2; ++o) {
        ElementId a = 2 * i, b = 2 * i + 1;
        ElementId fa = 2 * j + o, fb = 2 * j + (1 - o);
        if (sp[a] != sq[fa] || sp[b] != sq[fb]) continue;
        if (p.less(a, b) != q.less(fa, fb) || p.less(b, a) != q.less(fb, fa)) continue;
        bool ok = true;
        for (ElementId c : assigned) {
          for (auto [x, fx] : {std::pair{a, fa}, std::pair{b, fb}}) {
            if (p.less(x, c) != q.less(fx, f[c]) || p.less(c, x) != q.less(f[c], fx)) ok = false;
          }
          if (!ok) break;
        }
        if (!ok) continue;
        f[a] = fa;
        f[b] = fb;
        used[j] = 1;
        assigned.push_back(a);
        assigned.push_back(b);
        if (rec(k + 1)) return true;
        assigned.pop_back();
        assigned.pop_back();
        used[j] = 0;
      }
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return f;
}

Pocset random_pocset(std::mt19937_64& rng, std::size_t pairs, int max_width) {
  std::vector<std::pair<std::string, std::string>> names;
  for (std::size_t i = 0; i < pairs; ++i) names.push_back({"p" + std::to_string(i), "p" + std::to_string(i) + "*"});
  const std::size_t n = 2 * pairs;
  std::vector<std::pair<ElementId, ElementId>> rel;
  Pocset cur = Pocset::from_relations(names, rel);
  if (pairs < 2) return cur;
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(n - 1));
  std::uniform_int_distribution<std::size_t> extra(0, 2 * pairs);
  auto try_add = [&](ElementId a, ElementId b) {
    if ((a >> 1) == (b >> 1)) return false;
    rel.push_back({a, b});
    Pocset next = Pocset::from_relations(names, rel);
    bool ok = true;
    for (ElementId x = 0; x < n && ok; ++x)
      if (next.less(x, x) || next.comparable(x, Pocset::star(x))) ok = false;
    if (!ok) {
      rel.pop_back();
      return false;
    }
    cur = std::move(next);
    return true;
  };
  std::size_t attempts = extra(rng);
  for (std::size_t t = 0; t < attempts; ++t) try_add(pick(rng), pick(rng));
  std::size_t guard = 0;
  while (pocset_width(cur) > max_width && guard++ < 100000) try_add(pick(rng), pick(rng));
  return cur;
}

}  // namespace cubecore
