#include <doctest.h>

#include "cubecore/bases.hpp"
#include "cubecore/errors.hpp"
#include "cubecore/generators.hpp"
#include "cubecore/io.hpp"
#include "oracles.hpp"

#include <filesystem>
#include <functional>
#include <fstream>

using namespace cubecore;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(CUBECORE_FIXTURES) + "/" + name; }

std::string location_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.location();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("fixture files round-trip") {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(CUBECORE_FIXTURES)) {
    if (entry.path().extension() != ".json") continue;
    auto j = io::read_json_file(entry.path().string());
    io::json back;
    if (j.contains("generators")) back = io::group_to_json(io::group_from_json(j));
    else if (j.contains("pairs")) back = io::pocset_to_json(io::pocset_from_json(j));
    else if (j.contains("squares")) back = io::base_to_json(io::base_from_json(j));
    else if (j.contains("vertices")) back = io::complex_to_json(io::complex_from_json(j));
    else if (j.contains("type")) back = j;  // certificates are plain data
    else FAIL("unrecognised fixture " << entry.path());
    CHECK_MESSAGE(back == j, entry.path().filename().string());
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("complex round-trip keeps frontier and window fields") {
  auto q = gen::quarter_grid(4);
  auto j = io::complex_to_json(q);
  auto back = io::complex_from_json(io::parse_json_text(io::dump(j)));
  CHECK(back.names() == q.names());
  CHECK(back.edges() == q.edges());
  CHECK(back.frontier() == q.frontier());
  CHECK(io::digest(back) == io::digest(q));

  Developer dev(bases::torus(), 0);
  auto w = dev.window(2);
  auto wj = io::complex_to_json(w.graph);
  CHECK(wj["radius"] == 2);
  CHECK(wj["basepoint"] == w.graph.name(w.basepoint));
  auto wb = io::complex_from_json(wj);
  CHECK(wb.provenance().radius == 2);
  CHECK(io::digest(wb) == io::digest(w.graph));
}

TEST_CASE("digest separates complexes") {
  CHECK(io::digest(gen::grid(2, 2)) == io::digest(gen::grid(2, 2)));
  CHECK(io::digest(gen::grid(2, 2)) != io::digest(gen::grid(3, 1)));
  CHECK(io::digest(gen::grid(2, 2)) != io::digest(gen::quarter_grid(2)));  // same graph, frontier differs
  CHECK(io::digest(gen::cube(2)).rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("schema errors carry locations") {
  auto bad_pair = io::parse_json_text(R"({"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b"]]})");
  CHECK(location_of([&] { io::complex_from_json(bad_pair); }) == "/edges/1");
  auto unknown = io::parse_json_text(R"({"vertices": ["a", "b"], "edges": [["a", "z"]]})");
  CHECK(location_of([&] { io::complex_from_json(unknown); }) == "/edges/0/1");
  CHECK(location_of([&] { io::complex_from_json(io::json::object()); }) == "/vertices");
  CHECK(location_of([&] { io::complex_from_json(io::parse_json_text(R"({"vertices": ["a", "a"], "edges": []})")); }) ==
        "/vertices/1");

  CHECK(location_of([] { io::parse_json_text("{\n\"vertices\": [\n,]}", "f.json"); }) == "f.json:line 3");

  auto pocset = io::parse_json_text(R"({"pairs": [["h", "h*"]], "less": [["h", "k"]]})");
  CHECK(location_of([&] { io::pocset_from_json(pocset); }) == "/less/0/1");

  auto base = io::parse_json_text(
      R"({"vertices": ["v"], "edges": [{"name": "a", "from": "v", "to": "v"}], "squares": [["a", "a", "-a", "c"]]})");
  CHECK(location_of([&] { io::base_from_json(base); }) == "/squares/0/3");

  auto group = io::parse_json_text(R"({"generators": [{"name": "s", "type": "rotation"}]})");
  CHECK(location_of([&] { io::group_from_json(group); }) == "/generators/0/type");
}

TEST_CASE("syntactically valid but not a cube complex") {
  // a 4-cycle with a chord is not median
  auto j = io::parse_json_text(
      R"({"vertices": ["a", "b", "c", "d"], "edges": [["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"], ["a", "c"]]})");
  CHECK_THROWS_AS(io::complex_from_json(j), ValidationError);
}

TEST_CASE("groups from files") {
  auto c3 = io::complex_from_json(io::read_json_file(fixture("cube3.json")));
  auto spec = io::group_from_json(io::read_json_file(fixture("cube3_rotation.json")));
  auto g = io::make_group(c3, spec);
  CHECK(g->exact());
  Word s3 = io::parse_word(*g, "s.s.s", "--gen");
  const auto& m = g->realize(s3);
  for (VertexId v = 0; v < 8; ++v) CHECK(m(v) == v);
  CHECK(location_of([&] { io::parse_word(*g, "s.t", "--gen"); }) == "--gen");

  // not an automorphism
  io::GroupSpec bad = spec;
  bad.generators[0].map["000"] = "001";
  CHECK(location_of([&] { io::make_group(c3, bad); }) == "/generators/0");
  bad = spec;
  bad.generators[0].map["000"] = "nowhere";
  CHECK(location_of([&] { io::make_group(c3, bad); }) == "/generators/0/map/000");

  auto base = io::base_from_json(io::read_json_file(fixture("wedge2.json")));
  Developer dev(base, 0);
  auto w = dev.window(2);
  auto loops = io::group_from_json(io::read_json_file(fixture("ab_loops.json")));
  auto deck = io::make_deck_group(dev, w, loops);
  CHECK(deck->generator_count() == 2);
  CHECK(deck->apply(deck->parse("a"), w.index.at(dev.root())) == *w.graph.find("v0:a"));
  loops.generators[1].edges = {"c"};
  CHECK(location_of([&] { io::make_deck_group(dev, w, loops); }) == "/generators/1/edges/0");
}

TEST_CASE("base files develop like the builtins") {
  for (const std::string name : {"torus", "wedge2", "three_torus", "tree_x_tree"}) {
    auto b = io::base_from_json(io::read_json_file(fixture(name + ".json")));
    CHECK(check_nonpositively_curved(b).valid);
    Developer dev(b, 0);
    auto w = dev.window(2);
    CHECK(w.graph.vertex_count() > 1);
  }
  auto t = io::base_from_json(io::read_json_file(fixture("torus.json")));
  Developer dev(t, 0);
  Developer ref(bases::torus(), 0);
  CHECK(oracle::isomorphic(dev.window(3).graph.as_simple_graph(), ref.window(3).graph.as_simple_graph()));
}

TEST_CASE("pocset file") {
  auto p = io::pocset_from_json(io::read_json_file(fixture("grid2x1_pocset.json")));
  CHECK(p.pair_count() == 3);
  CHECK(verify_pocset(p).valid);
  // a transitively redundant relation is accepted and dropped on output
  auto j = io::parse_json_text(R"({"pairs": [["a","a*"],["b","b*"],["c","c*"]], "less": [["a","b"],["b","c"],["a","c"]]})");
  auto q = io::pocset_from_json(j);
  CHECK(q.less(0, 4));
  // covers a<b, b<c and their mirrors c*<b*, b*<a*
  auto less = io::pocset_to_json(q)["less"];
  CHECK(less.size() == 4);
  CHECK(std::find(less.begin(), less.end(), io::json{"a", "c"}) == less.end());
}

TEST_CASE("atomic writes replace the file") {
  auto dir = fs::temp_directory_path() / "cubecore_io_test";
  fs::create_directories(dir);
  auto p = (dir / "out.json").string();
  io::write_file_atomic(p, "first\n");
  io::write_file_atomic(p, "second\n");
  std::ifstream in(p);
  std::string s;
  std::getline(in, s);
  CHECK(s == "second");
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  fs::remove_all(dir);
}

TEST_CASE("builtin generators") {
  CHECK(gen::generate("cube(3)").vertex_count() == 8);
  auto g = gen::generate("grid(3,3)");
  CHECK(g.vertex_count() == 16);
  CHECK(g.wall_count() == 6);
  auto t = gen::tree(3, 2), p = gen::path(2);
  CHECK(gen::product(t, p).vertex_count() == t.vertex_count() * p.vertex_count());
  CHECK(oracle::is_median_graph(gen::product(t, p).as_simple_graph()));
}
