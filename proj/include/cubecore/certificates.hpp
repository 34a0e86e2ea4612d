#pragma once

#include "cubecore/actions.hpp"
#include "cubecore/cube_graph.hpp"
#include "cubecore/group.hpp"
#include "cubecore/walls.hpp"

#include <json.hpp>

#include <string>

namespace cubecore::cert {

using json = nlohmann::json;

/// {"wall": id, "edge": [inside, outside]} on the gate edge, the dual edge
/// nearest the basepoint.
json halfspace_to_json(const CubeGraph& x, Halfspace h);
/// Resolves the edge; throws SchemaError if it is not an edge.
Halfspace halfspace_from_json(const CubeGraph& x, const json& j, const std::string& at = "");

// Every certificate carries "type" and "complex" (the digest of the space it
// refers to). Images are given with a "transport" edge of the source
// half-space whose image spans the image half-space.
json to_json(const GroupModel& g, const SkewerCert& c);
json to_json(const GroupModel& g, const FlipCert& c);
json to_json(const GroupModel& g, const DoubleSkewerCert& c);
json to_json(const GroupModel& g, const ContractingCert& c);
json to_json(const GroupModel& g, const SchottkyCert& c);
json to_json(const CubeGraph& x, const FacingTriple& t);
json to_json(const CubeGraph& x, const SSPair& p, Halfspace h);
json to_json(const CubeGraph& x, const Pencil& p);
json to_json(const CubeGraph& x, const Decomposition& d);

struct CheckResult {
  bool ok = false;
  std::string explanation;
};

/// Re-verifies a certificate from scratch: half-spaces are recomputed by
/// BFS from their edges, elements are re-applied from their words, and the
/// claimed relations are tested as vertex sets. `g` may be null for
/// certificates without an element.
CheckResult check_certificate(const json& c, const CubeGraph& x, const GroupModel* g);

/// Window-independent form for comparing certificates across radii: every
/// half-space becomes its gate edge by vertex names; wall ids, transport
/// edges, witnesses, digests and check flags are dropped.
json canonical(const json& c, const CubeGraph& x);

/// Runs the checker and records "checked" (true only on success) and, on
/// failure, "check_error".
json checked(json c, const CubeGraph& x, const GroupModel* g);

}  // namespace cubecore::cert
