#include "cubecore/stability.hpp"

namespace cubecore {

StabilityReport stability_check(const std::string& analysis, const BaseComplex& b, VertexId basepoint, int radius,
                                int dR, const WindowAnalysis& f, const GroupFactory& group) {
  StabilityReport r;
  r.analysis = analysis;
  r.radius = radius;
  r.grown_radius = radius + dR;
  Developer dev(b, basepoint);
  auto run = [&](int R) {
    Window w = dev.window(R);
    std::unique_ptr<GroupModel> g = group ? group(dev, w) : std::unique_ptr<GroupModel>(edge_loop_group(dev, w));
    return f(w, *g);
  };
  r.before = run(radius);
  r.after = run(radius + dR);
  r.stable = r.before == r.after;
  return r;
}

}  // namespace cubecore
