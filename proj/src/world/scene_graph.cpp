#include "lam/world/scene_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lam::world {

std::string Relation::to_string() const {
  return "(" + predicate + " " + subject + " " + object + ")";
}

bool SceneGraph::holds(const std::string& predicate, const std::string& a,
                       const std::string& b) const {
  return std::binary_search(edges.begin(), edges.end(), Relation{predicate, a, b});
}

SceneGraph derive_scene_graph(const WorldState& world, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  SceneGraph g;
  g.tolerance = tolerance;
  for (const auto& [name, _] : world.objects) g.nodes.push_back(name);

  for (const auto& [a, oa] : world.objects) {
    for (const auto& [b, ob] : world.objects) {
      if (a == b) continue;
      const double dx = oa.position.x() - ob.position.x();
      const double dy = oa.position.y() - ob.position.y();
      const bool left = dx < -tolerance;
      const bool right = dx > tolerance;
      const bool front = dy < -tolerance;
      const bool back = dy > tolerance;
      if (left) g.edges.push_back({"left-of", a, b});
      if (right) g.edges.push_back({"right-of", a, b});
      if (front) g.edges.push_back({"in-front-of", a, b});
      if (back) g.edges.push_back({"behind", a, b});
      if (oa.support.kind == Support::Kind::kOn && oa.support.ref == b) {
        g.edges.push_back({"on-top-of", a, b});
      }
      if (oa.support.kind == Support::Kind::kIn && oa.support.ref == b) {
        g.edges.push_back({"inside", a, b});
      }
      const double gap_x =
          std::max(0.0, std::abs(dx) - (oa.half_extents.x() + ob.half_extents.x()));
      const double gap_y =
          std::max(0.0, std::abs(dy) - (oa.half_extents.y() + ob.half_extents.y()));
      if (std::hypot(gap_x, gap_y) < tolerance && !left && !right && !front && !back) {
        g.edges.push_back({"adjacent", a, b});
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace lam::world
