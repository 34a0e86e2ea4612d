#include "cubecore/generators.hpp"

#include "cubecore/errors.hpp"

#include <regex>

namespace cubecore::gen {

namespace {

constexpr std::size_t kMaxVertices = std::size_t{1} << 20;

void cap(std::size_t n, const char* what) {
  if (n > kMaxVertices) throw BudgetExceeded(std::string(what) + ": too many vertices", n);
}

std::string xy(int x, int y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }

Provenance gen_prov(const std::string& detail) {
  Provenance p;
  p.kind = "generator";
  p.detail = detail;
  return p;
}

}  // namespace

SimpleGraph cube_graph(int n) {
  if (n < 0 || n > 16) throw BudgetExceeded("cube dimension out of range", std::size_t{1} << std::max(n, 0));
  SimpleGraph g;
  const VertexId m = VertexId{1} << n;
  for (VertexId v = 0; v < m; ++v) {
    std::string s;
    for (int b = n - 1; b >= 0; --b) s += ((v >> b) & 1) ? '1' : '0';
    g.names.push_back(n == 0 ? "()" : s);
  }
  for (VertexId v = 0; v < m; ++v)
    for (int b = 0; b < n; ++b)
      if (!((v >> b) & 1)) g.edges.push_back({v, v | (VertexId{1} << b)});
  return g;
}

SimpleGraph grid_graph(int w, int h) {
  if (w < 0 || h < 0) throw ValidationError("grid dimensions must be non-negative");
  cap(std::size_t(w + 1) * (h + 1), "grid");
  SimpleGraph g;
  auto id = [&](int x, int y) { return static_cast<VertexId>(y * (w + 1) + x); };
  for (int y = 0; y <= h; ++y)
    for (int x = 0; x <= w; ++x) g.names.push_back(xy(x, y));
  for (int y = 0; y <= h; ++y)
    for (int x = 0; x <= w; ++x) {
      if (x < w) g.edges.push_back({id(x, y), id(x + 1, y)});
      if (y < h) g.edges.push_back({id(x, y), id(x, y + 1)});
    }
  return g;
}

SimpleGraph path_graph(int length) {
  if (length < 0) throw ValidationError("path length must be non-negative");
  cap(std::size_t(length) + 1, "path");
  SimpleGraph g;
  for (int i = 0; i <= length; ++i) g.names.push_back(std::to_string(i));
  for (int i = 0; i < length; ++i) g.edges.push_back({VertexId(i), VertexId(i + 1)});
  return g;
}

SimpleGraph star_graph(int leaves) {
  if (leaves < 0) throw ValidationError("star needs a non-negative leaf count");
  cap(std::size_t(leaves) + 1, "star");
  SimpleGraph g;
  g.names.push_back("c");
  for (int i = 0; i < leaves; ++i) {
    g.names.push_back("l" + std::to_string(i));
    g.edges.push_back({0, VertexId(i + 1)});
  }
  return g;
}

SimpleGraph tree_graph(int valence, int depth) {
  if (valence < 1 || depth < 0) throw ValidationError("tree needs valence >= 1 and depth >= 0");
  std::size_t total = 1, layer = 1;
  for (int d = 1; d <= depth; ++d) {
    layer *= (d == 1 ? valence : valence - 1);
    total += layer;
    cap(total, "tree");
  }
  SimpleGraph g;
  g.names.push_back("o");
  std::vector<VertexId> frontier{0};
  for (int d = 1; d <= depth; ++d) {
    std::vector<VertexId> next;
    for (VertexId p : frontier) {
      int kids = (d == 1) ? valence : valence - 1;
      for (int k = 0; k < kids; ++k) {
        VertexId c = static_cast<VertexId>(g.names.size());
        g.names.push_back(g.names[p] + "." + std::to_string(k));
        g.edges.push_back({p, c});
        next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  return g;
}

SimpleGraph cycle_graph(int n) {
  SimpleGraph g;
  for (int i = 0; i < n; ++i) g.names.push_back("c" + std::to_string(i));
  for (int i = 0; i < n; ++i) g.edges.push_back({VertexId(i), VertexId((i + 1) % n)});
  return g;
}

SimpleGraph complete_graph(int n) {
  SimpleGraph g;
  for (int i = 0; i < n; ++i) g.names.push_back("k" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.edges.push_back({VertexId(i), VertexId(j)});
  return g;
}

SimpleGraph product_graph(const SimpleGraph& a, const SimpleGraph& b) {
  const std::size_t na = a.vertex_count(), nb = b.vertex_count();
  cap(na * nb, "product");
  SimpleGraph g;
  auto id = [&](std::size_t i, std::size_t j) { return static_cast<VertexId>(i * nb + j); };
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) g.names.push_back(a.names[i] + "|" + b.names[j]);
  for (auto [u, v] : a.edges)
    for (std::size_t j = 0; j < nb; ++j) g.edges.push_back({id(u, j), id(v, j)});
  for (std::size_t i = 0; i < na; ++i)
    for (auto [u, v] : b.edges) g.edges.push_back({id(i, u), id(i, v)});
  return g;
}

CubeGraph cube(int n) { return CubeGraph::build(cube_graph(n), gen_prov("cube(" + std::to_string(n) + ")")); }

CubeGraph grid(int w, int h) {
  return CubeGraph::build(grid_graph(w, h),
                          gen_prov("grid(" + std::to_string(w) + "," + std::to_string(h) + ")"));
}

CubeGraph quarter_grid(int n) {
  auto g = grid_graph(n, n);
  VertexSet fr(g.vertex_count());
  for (int y = 0; y <= n; ++y)
    for (int x = 0; x <= n; ++x)
      if (x == n || y == n) fr.set(y * (n + 1) + x);
  return CubeGraph::build(g, gen_prov("quarter_grid(" + std::to_string(n) + ")"), fr);
}

CubeGraph path(int length) {
  return CubeGraph::build(path_graph(length), gen_prov("path(" + std::to_string(length) + ")"));
}

CubeGraph star(int leaves) {
  return CubeGraph::build(star_graph(leaves), gen_prov("star(" + std::to_string(leaves) + ")"));
}

CubeGraph tree(int valence, int depth) {
  return CubeGraph::build(tree_graph(valence, depth),
                          gen_prov("tree(" + std::to_string(valence) + "," + std::to_string(depth) + ")"));
}

CubeGraph product(const CubeGraph& a, const CubeGraph& b) {
  auto g = product_graph(a.as_simple_graph(), b.as_simple_graph());
  VertexSet fr(g.vertex_count());
  const std::size_t nb = b.vertex_count();
  for (std::size_t i = 0; i < a.vertex_count(); ++i)
    for (std::size_t j = 0; j < nb; ++j)
      if (a.frontier().test(i) || b.frontier().test(j)) fr.set(i * nb + j);
  Provenance p;
  p.kind = "product";
  p.detail = a.provenance().detail + "x" + b.provenance().detail;
  // Products of median graphs are median; skip the cubic-time recheck.
  return CubeGraph::build(g, p, fr, false);
}

CubeGraph generate(const std::string& spec) {
  static const std::regex re(R"(\s*([a-z_]+)\s*\(\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\)\s*)");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw ValidationError("unrecognized generator: " + spec);
  const std::string name = m[1];
  const int a = std::stoi(m[2]);
  const bool two = m[3].matched;
  const int b = two ? std::stoi(m[3]) : 0;
  if (name == "cube" && !two) return cube(a);
  if (name == "grid" && two) return grid(a, b);
  if (name == "quarter_grid" && !two) return quarter_grid(a);
  if (name == "path" && !two) return path(a);
  if (name == "star" && !two) return star(a);
  if (name == "tree" && two) return tree(a, b);
  throw ValidationError("unrecognized generator: " + spec);
}

}  // namespace cubecore::gen
