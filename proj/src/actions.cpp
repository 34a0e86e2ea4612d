#include "cubecore/actions.hpp"

#include "cubecore/errors.hpp"

#include <algorithm>
#include <map>

namespace cubecore {

namespace {

const VertexSet& hs(const CubeGraph& x, Halfspace h) { return x.halfspace(h); }

std::string describe(const CubeGraph& x, Halfspace h) {
  return "h" + std::to_string(h.wall) + (h.side ? "*" : "") + "@" +
         x.name(x.edge(x.wall(h.wall).dual_edges.front()).first);
}

}  // namespace

std::string to_string(WallBehaviour b) {
  switch (b) {
    case WallBehaviour::elliptic: return "elliptic";
    case WallBehaviour::skewers: return "skewers";
    case WallBehaviour::parallel: return "parallel";
    case WallBehaviour::peripheral: return "peripheral";
  }
  return "?";
}

Axis combinatorial_axis(const GroupModel& g, const Word& gamma) {
  const CubeGraph& x = g.space();
  const auto& m = g.realize(gamma);
  Axis a;
  a.vertices = x.empty_set();
  for (VertexId v = 0; v < x.vertex_count(); ++v) {
    if (!m.defined(v)) continue;
    int d = l1_distance(x, v, m(v));
    if (a.displacement < 0 || d < a.displacement) {
      a.displacement = d;
      a.vertices.reset();
    }
    if (d == a.displacement) a.vertices.set(v);
  }
  return a;
}

SkewerResult skewer_test(const GroupModel& g, const Word& gamma, WallId w, int n_max) {
  const CubeGraph& x = g.space();
  if (w >= x.wall_count()) throw ValidationError("unknown wall " + std::to_string(w));
  SkewerResult r;
  Halfspace h{w, 0};
  bool alive[2] = {true, true};
  for (int n = 1; n <= n_max; ++n) {
    for (int dir = 0; dir < 2; ++dir) {
      if (!alive[dir]) continue;
      Word e = power(dir ? gamma.inverse() : gamma, n);
      auto img = image_halfspace(g, e, h);
      if (!img) {
        alive[dir] = false;
        continue;
      }
      r.n_reached = n;
      if (img->wall == w) continue;
      const auto& a = hs(x, h);
      const auto& b = hs(x, *img);
      int signed_n = dir ? -n : n;
      if (b.is_proper_subset_of(a)) {
        r.cert = SkewerCert{gamma, signed_n, h, *img, static_cast<VertexId>((a - b).find_first())};
        return r;
      }
      if (a.is_proper_subset_of(b)) {
        Halfspace hc = h.complement(), ic = img->complement();
        r.cert = SkewerCert{gamma, signed_n, hc, ic, static_cast<VertexId>((hs(x, hc) - hs(x, ic)).find_first())};
        return r;
      }
    }
    if (!alive[0] && !alive[1]) {
      r.inconclusive = true;
      return r;
    }
  }
  return r;
}

WallBehaviourReport classify_vs_wall(const GroupModel& g, const Word& gamma, WallId w, int n_max) {
  const CubeGraph& x = g.space();
  WallBehaviourReport r;
  r.window_relative = x.has_frontier() || !g.exact();
  auto axis = combinatorial_axis(g, gamma);
  r.displacement = axis.displacement;
  if (axis.displacement == 0) {
    r.kind = WallBehaviour::elliptic;
    return r;
  }
  auto sk = skewer_test(g, gamma, w, n_max);
  if (sk.cert) {
    r.kind = WallBehaviour::skewers;
    r.skewer = sk.cert;
    return r;
  }
  for (int n = 1; n <= n_max; ++n) {
    auto img = image_wall(x, g.realize(power(gamma, n)), w);
    if (!img) break;
    if (*img == w) {
      r.kind = WallBehaviour::parallel;
      r.stabilizing_power = n;
      return r;
    }
    if (!r.disjoint_power && !x.crosses(*img, w)) r.disjoint_power = n;
  }
  r.kind = WallBehaviour::peripheral;
  return r;
}

std::optional<FlipCert> find_flip(const GroupModel& g, Halfspace h, int word_radius) {
  const CubeGraph& x = g.space();
  const auto& hstar = hs(x, h.complement());
  for (const Word& w : word_ball(g.generator_count(), word_radius)) {
    if (w.empty()) continue;
    auto img = image_halfspace(g, w, h);
    if (!img) continue;
    const auto& b = hs(x, *img);
    if (hstar.is_proper_subset_of(b))
      return FlipCert{w, h, *img, static_cast<VertexId>((b & hs(x, h)).find_first())};
  }
  return std::nullopt;
}

DoubleSkewerResult double_skewer(const GroupModel& g, Halfspace k, Halfspace h, int word_radius) {
  const CubeGraph& x = g.space();
  const auto& kk = hs(x, k);
  if (!kk.is_proper_subset_of(hs(x, h))) throw ValidationError("double skewering needs k strictly inside h");
  DoubleSkewerResult r;
  auto accept = [&](const Word& w, const std::string& method) -> bool {
    auto img = image_halfspace(g, w, h);
    if (!img || !hs(x, *img).is_proper_subset_of(kk)) return false;
    DoubleSkewerCert c;
    c.element = w;
    c.k = k;
    c.h = h;
    c.image = *img;
    c.witness = static_cast<VertexId>((kk - hs(x, *img)).find_first());
    c.method = method;
    r.cert = c;
    return true;
  };

  auto fg = find_flip(g, k, word_radius);
  if (!fg) {
    r.log.push_back("no flip of " + describe(x, k) + " within radius " + std::to_string(word_radius));
  } else {
    auto ghs = image_halfspace(g, fg->element, h.complement());
    if (!ghs) {
      r.log.push_back("g.h* leaves the window for g = " + g.format(fg->element));
    } else {
      auto fa = find_flip(g, *ghs, word_radius);
      if (!fa) {
        r.log.push_back("no flip of g.h* = " + describe(x, *ghs) + " within radius " + std::to_string(word_radius));
      } else if (accept(fa->element * fg->element, "two-flip")) {
        r.cert->flip_g = fg;
        r.cert->flip_a = fa;
        r.log.push_back("two-flip: g = " + g.format(fg->element) + ", a = " + g.format(fa->element));
        return r;
      } else {
        r.log.push_back("composition a.g failed the inclusion re-check");
      }
    }
  }
  for (const Word& w : word_ball(g.generator_count(), word_radius)) {
    if (w.empty()) continue;
    if (accept(w, "direct")) {
      r.log.push_back("direct search: " + g.format(w));
      return r;
    }
  }
  r.log.push_back("no double-skewering element within radius " + std::to_string(word_radius));
  return r;
}

namespace {

bool any_ss_pair(const CubeGraph& x) {
  for (WallId a = 0; a < x.wall_count(); ++a)
    for (WallId b = a + 1; b < x.wall_count(); ++b)
      if (strongly_separated(x, a, b)) return true;
  return false;
}

const char* kNoSS = "no strongly separated pair within scope";

}  // namespace

ContractingResult contracting_certificate(const GroupModel& g, const Word& gamma, int n_max) {
  const CubeGraph& x = g.space();
  ContractingResult r;
  if (gamma.empty()) {
    r.reason = "identity element";
    return r;
  }
  for (int n = 1; n <= n_max; ++n) {
    const auto& m = g.realize(power(gamma, n));
    for (std::uint32_t i = 0; i < 2 * x.wall_count(); ++i) {
      Halfspace inner = Halfspace::from_index(i);
      auto img = image_halfspace(x, m, inner);
      if (!img) continue;
      const auto& a = hs(x, inner);
      const auto& big = hs(x, *img);
      if (!a.is_proper_subset_of(big)) continue;
      VertexId probe = static_cast<VertexId>(a.find_first());
      for (WallId u = 0; u < x.wall_count(); ++u) {
        if (u == inner.wall || u == img->wall) continue;
        Halfspace outer = x.halfspace_containing(probe, u);
        const auto& b = hs(x, outer);
        if (!a.is_proper_subset_of(b) || !b.is_proper_subset_of(big)) continue;
        if (!strongly_separated(x, inner.wall, u)) continue;
        r.cert = ContractingCert{gamma, n, inner, outer, *img, static_cast<VertexId>((big - b).find_first())};
        r.log.push_back("n = " + std::to_string(n) + ", pair " + describe(x, inner) + " < " + describe(x, outer));
        return r;
      }
    }
  }
  r.reason = any_ss_pair(x) ? "no nested strongly separated pair skewered within n <= " + std::to_string(n_max)
                            : std::string(kNoSS);
  return r;
}

ContractingResult contracting_certificate(const GroupModel& g, Halfspace h, int word_radius) {
  const CubeGraph& x = g.space();
  ContractingResult r;
  auto ss = find_ss_pair_through(x, h);
  if (!ss) {
    r.reason = kNoSS;
    return r;
  }
  r.log.push_back("pair " + describe(x, ss->inner) + " < " + describe(x, h) + " < " + describe(x, ss->outer));
  auto ds = double_skewer(g, ss->outer.complement(), ss->inner.complement(), word_radius);
  r.log.insert(r.log.end(), ds.log.begin(), ds.log.end());
  if (!ds.cert) {
    r.reason = "no double-skewering element within radius " + std::to_string(word_radius);
    return r;
  }
  Halfspace image = ds.cert->image.complement();
  r.cert = ContractingCert{ds.cert->element, 1, ss->inner, ss->outer, image,
                           static_cast<VertexId>((hs(x, image) - hs(x, ss->outer)).find_first())};
  return r;
}

ContractingResult contracting_certificate(const GroupModel& g, int word_radius) {
  const CubeGraph& x = g.space();
  ContractingResult last;
  last.reason = kNoSS;
  if (!any_ss_pair(x)) return last;
  for (std::uint32_t i = 0; i < 2 * x.wall_count(); ++i) {
    auto r = contracting_certificate(g, Halfspace::from_index(i), word_radius);
    if (r.cert) return r;
    if (r.reason != kNoSS) last = std::move(r);
  }
  return last;
}

ContractionProfile contraction_profile(const GroupModel& g, const ContractingCert& c) {
  const CubeGraph& x = g.space();
  ContractionProfile p;
  Word e = power(c.element, c.n);
  std::map<int, Halfspace> orbit{{0, c.inner}};
  const int kMaxSteps = 256;
  for (int i = 1; i <= kMaxSteps; ++i) {
    auto img = image_halfspace(x, g.realize(power(e, i)), c.inner);
    if (!img) break;
    orbit[i] = *img;
  }
  for (int i = 1; i <= kMaxSteps; ++i) {
    auto img = image_halfspace(x, g.realize(power(e.inverse(), i)), c.inner);
    if (!img) break;
    orbit[-i] = *img;
  }
  p.orbit_walls = static_cast<int>(orbit.size());
  if (orbit.size() < 4) {
    p.inconclusive = true;
    p.reason = "window holds fewer than 4 orbit walls";
    return p;
  }
  auto axis = combinatorial_axis(g, e);
  if (axis.displacement <= 0) {
    p.inconclusive = true;
    p.reason = "element has no displacement on the window";
    return p;
  }
  VertexSet on_carrier = carrier(x, c.inner.wall) & axis.vertices;
  if (on_carrier.any()) {
    p.p0 = static_cast<VertexId>(on_carrier.find_first());
  } else {
    auto d = wall_distances(x, c.inner.wall);
    int best = -1;
    for (auto v = axis.vertices.find_first(); v != VertexSet::npos; v = axis.vertices.find_next(v))
      if (best < 0 || d[v] < best) best = d[v], p.p0 = static_cast<VertexId>(v);
  }
  p.period = l1_distance(x, p.p0, g.realize(e)(p.p0));
  auto to_axis = x.distances_from(axis.vertices);
  const int lo = orbit.begin()->first, hi = orbit.rbegin()->first;
  for (int i = lo + 1; i < hi; ++i) {
    const auto& a = hs(x, orbit.at(i - 1));
    const auto& mid = hs(x, orbit.at(i));
    const auto& next = hs(x, orbit.at(i + 1));
    if (!a.is_proper_subset_of(mid) || !mid.is_proper_subset_of(next)) {
      p.inconclusive = true;
      p.reason = "orbit half-spaces are not nested";
      return p;
    }
    ++p.triples;
    VertexSet ends = a | ~next;
    VertexSet cz = carrier(x, orbit.at(i).wall);
    for (auto z = cz.find_first(); z != VertexSet::npos; z = cz.find_next(z)) {
      // z is on a geodesic from A to B iff no wall cuts z off from both
      bool between = true;
      for (WallId u = 0; u < x.wall_count() && between; ++u)
        if (!hs(x, x.halfspace_containing(static_cast<VertexId>(z), u)).intersects(ends)) between = false;
      if (!between) continue;
      ++p.crossing_points;
      p.max_axis_distance = std::max(p.max_axis_distance, to_axis[z]);
    }
  }
  p.bound_holds = p.max_axis_distance <= 2 * p.period;
  return p;
}

SchottkyResult schottky_pair(const GroupModel& g, int word_radius) {
  const CubeGraph& x = g.space();
  SchottkyResult r;
  auto ft = facing_triple(x);
  if (!ft) {
    r.stage = "facing triple";
    r.log.push_back("no facing triple");
    return r;
  }
  const auto& t = ft->halfspaces;
  for (int j = 0; j < 3; ++j) {
    auto f = find_flip(g, t[j], word_radius);
    if (!f) {
      r.log.push_back("no flip of " + describe(x, t[j]) + " within radius " + std::to_string(word_radius));
      continue;
    }
    Halfspace o1 = t[(j + 1) % 3], o2 = t[(j + 2) % 3];
    if (o2 < o1) std::swap(o1, o2);
    const auto& m = g.realize(f->element);
    auto i1 = image_halfspace(x, m, o1), i2 = image_halfspace(x, m, o2);
    if (!i1 || !i2) {
      r.log.push_back("flipped members leave the window");
      continue;
    }
    std::array<Halfspace, 4> q{o1, o2, *i1, *i2};
    bool disjoint = true;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (hs(x, q[a]).intersects(hs(x, q[b]))) disjoint = false;
    if (!disjoint) {
      r.log.push_back("flipped quadruple is not pairwise disjoint");
      continue;
    }
    auto d1 = double_skewer(g, q[0], q[1].complement(), word_radius);
    auto d2 = double_skewer(g, q[2], q[3].complement(), word_radius);
    r.log.insert(r.log.end(), d1.log.begin(), d1.log.end());
    r.log.insert(r.log.end(), d2.log.begin(), d2.log.end());
    if (!d1.cert || !d2.cert) {
      r.stage = "double skewer";
      continue;
    }
    r.cert = SchottkyCert{t, *f, q, *d1.cert, *d2.cert};
    r.stage.clear();
    return r;
  }
  if (r.stage.empty()) r.stage = "flip";
  return r;
}

RankRigidityReport rank_rigidity(const GroupModel& g, int word_radius, int depth) {
  const CubeGraph& x = g.space();
  RankRigidityReport rep;
  rep.window_relative = x.has_frontier() || !g.exact();
  rep.pruned = std::make_shared<PruneResult>(prune(g, depth));
  const auto& pr = *rep.pruned;
  rep.prune_rounds = static_cast<int>(pr.chain.size()) - 1;
  rep.log = pr.log;
  if (pr.inconclusive) {
    rep.outcome = "inconclusive";
    rep.stage = "prune: " + pr.reason;
    return rep;
  }
  const CubeGraph& y = pr.final_stage ? pr.final_stage->graph : x;
  const GroupModel& gy = pr.final_group ? *pr.final_group : g;
  auto ess = pr.final_classification.of_type(WallType::essential);
  if (ess.empty()) {
    rep.outcome = "bounded core";
    rep.core_vertices = 1;
    rep.core = std::make_shared<RestrictionQuotient>(restriction_quotient(y, {}));
    return rep;
  }
  const CubeGraph* core = &x;
  const GroupModel* cg = &g;
  if (!pr.final_stage && ess.size() == x.wall_count()) {
    rep.core_is_input = true;
  } else {
    rep.core = std::make_shared<RestrictionQuotient>(restriction_quotient(y, ess));
    rep.core_group = std::make_shared<InducedGroup>(gy, rep.core->quotient, rep.core->projection);
    core = &rep.core->quotient;
    cg = rep.core_group.get();
  }
  rep.core_vertices = core->vertex_count();
  rep.decomposition = decompose(*core);
  if (rep.decomposition.factors.size() >= 2) {
    rep.outcome = "product";
    rep.log.push_back(std::to_string(rep.decomposition.factors.size()) + " factors");
    return rep;
  }
  for (auto& orbit : wall_orbits(*cg)) {
    std::optional<ContractingCert> found;
    for (std::uint8_t s = 0; s < 2 && !found; ++s) {
      auto c = contracting_certificate(*cg, Halfspace{orbit.front(), s}, word_radius);
      if (c.cert) found = c.cert;
    }
    if (!found) {
      rep.outcome = "inconclusive";
      rep.stage = "contracting: orbit of wall " + std::to_string(orbit.front()) + " within radius " +
                  std::to_string(word_radius);
      rep.witnesses.clear();
      return rep;
    }
    rep.witnesses.push_back({orbit, *found});
  }
  rep.outcome = "contracting";
  return rep;
}

namespace {

bool preserves_factors(const CubeGraph& x, const PartialMap& m, const std::vector<int>& factor_of) {
  for (WallId w = 0; w < x.wall_count(); ++w)
    if (auto img = image_wall(x, m, w); img && factor_of[*img] != factor_of[w]) return false;
  return true;
}

}  // namespace

RegularResult regular_element(const GroupModel& g, int word_radius, int n_max) {
  const CubeGraph& x = g.space();
  RegularResult r;
  r.decomposition = std::make_shared<Decomposition>(decompose(x));
  const auto& d = *r.decomposition;
  if (d.factors.empty()) {
    r.reason = "complex has no walls";
    return r;
  }
  std::vector<int> factor_of(x.wall_count(), -1);
  for (std::size_t i = 0; i < d.factors.size(); ++i)
    for (WallId w : d.factors[i]) factor_of[w] = static_cast<int>(i);
  for (std::uint32_t l = 0; l < 2 * g.generator_count(); l += 2)
    if (!preserves_factors(x, g.realize(Word::letter(l)), factor_of)) r.generators_preserve_factors = false;
  for (const auto& fq : d.factor_quotients)
    r.factor_groups.push_back(std::make_shared<InducedGroup>(g, fq.quotient, fq.projection));

  for (const Word& w : word_ball(g.generator_count(), word_radius)) {
    if (w.empty()) continue;
    if (!r.generators_preserve_factors && !preserves_factors(x, g.realize(w), factor_of)) continue;
    ++r.words_tried;
    std::vector<ContractingCert> certs;
    for (const auto& fg : r.factor_groups) {
      auto c = contracting_certificate(*fg, w, n_max);
      if (!c.cert) break;
      certs.push_back(*c.cert);
    }
    if (certs.size() == r.factor_groups.size()) {
      r.element = w;
      r.per_factor = std::move(certs);
      return r;
    }
  }
  r.reason = "no word within radius " + std::to_string(word_radius) +
             " is contracting on every factor";
  return r;
}

std::vector<EuclideanFactor> euclidean_like_decomposition(const GroupModel& g) {
  auto d = decompose(g.space());
  std::vector<EuclideanFactor> out;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const CubeGraph& q = d.factor_quotients[i].quotient;
    EuclideanFactor f;
    f.walls = d.factors[i];
    bool path = q.edge_count() + 1 == q.vertex_count();
    for (VertexId v = 0; v < q.vertex_count() && path; ++v)
      if (q.neighbors(v).size() > 2) path = false;
    if (path) {
      f.r_like = true;
      f.reason = "factor is a combinatorial line";
    } else if ((f.triple = facing_triple(q))) {
      f.reason = "facing triple";
    } else {
      f.reason = "no invariant line found";
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace cubecore
