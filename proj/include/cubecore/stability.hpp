#pragma once

#include "cubecore/developer.hpp"
#include "cubecore/group.hpp"

#include <json.hpp>

#include <functional>
#include <memory>
#include <string>

namespace cubecore {

/// Answer of an analysis on one window, in window-independent terms (vertex
/// names, outcomes); compared verbatim between radii.
using WindowAnalysis = std::function<nlohmann::json(const Window&, const GroupModel&)>;
using GroupFactory = std::function<std::unique_ptr<GroupModel>(Developer&, const Window&)>;

struct StabilityReport {
  std::string analysis;
  int radius = 0;
  int grown_radius = 0;
  bool stable = false;
  nlohmann::json before, after;
};

/// Runs `f` on the windows of radius R and R + dR and compares the answers.
/// Without a factory the edge loops of a one-vertex base generate.
StabilityReport stability_check(const std::string& analysis, const BaseComplex& b, VertexId basepoint, int radius,
                                int dR, const WindowAnalysis& f, const GroupFactory& group = {});

}  // namespace cubecore
