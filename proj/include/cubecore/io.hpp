#pragma once

#include "cubecore/cube_graph.hpp"
#include "cubecore/developer.hpp"
#include "cubecore/group.hpp"
#include "cubecore/pocset.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace cubecore::io {

using json = nlohmann::json;

/// Parses a file; syntax errors become SchemaError at "<path>:line N".
json read_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& origin = "<input>");
/// Writes to a temporary file next to `path`, then renames.
void write_file_atomic(const std::string& path, const std::string& contents);
/// Stable rendering: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

/// {"vertices": [...], "edges": [[u, v], ...]} plus optional "frontier",
/// "basepoint" and "radius" (window files).
json complex_to_json(const CubeGraph& x);
CubeGraph complex_from_json(const json& j);
/// Schema checks only, no median verification (for `verify`).
struct RawComplex {
  SimpleGraph graph;
  VertexSet frontier;
  Provenance provenance;
};
RawComplex raw_complex_from_json(const json& j);
/// FNV-1a of the canonical vertices/edges/frontier rendering.
std::string digest(const CubeGraph& x);

/// {"pairs": [[a, a*], ...], "less": [[a, b], ...]} with covering relations.
json pocset_to_json(const Pocset& p);
Pocset pocset_from_json(const json& j);

/// {"vertices", "edges": [{"name","from","to"}], "squares": [[signed edge names]],
///  "cubes": [{"corners": [...], "edges": [...]}]}
json base_to_json(const BaseComplex& b);
BaseComplex base_from_json(const json& j);

struct GeneratorSpec {
  std::string name;
  std::string type;                          // permutation | loop
  std::map<std::string, std::string> map;    // permutation
  std::vector<std::string> edges;            // loop: signed edge names
};
struct GroupSpec {
  std::vector<GeneratorSpec> generators;
};
json group_to_json(const GroupSpec& g);
GroupSpec group_from_json(const json& j);
/// Permutation generators on an explicit complex; unknown vertex names are
/// SchemaErrors located in the group file.
std::unique_ptr<GroupModel> make_group(const CubeGraph& x, const GroupSpec& spec);
/// Loop generators on a developed window.
std::unique_ptr<DeckGroup> make_deck_group(Developer& dev, const Window& w, const GroupSpec& spec);

/// Word with located errors for unknown generators.
Word parse_word(const GroupModel& g, const std::string& text, const std::string& location);

}  // namespace cubecore::io
