#pragma once

#include <compare>
#include <string>
#include <vector>

#include "lam/world/world_state.hpp"

namespace lam::world {

struct Relation {
  std::string predicate;  // left-of, right-of, in-front-of, behind, on-top-of, inside, adjacent
  std::string subject;
  std::string object;

  auto operator<=>(const Relation&) const = default;
  std::string to_string() const;
};

struct SceneGraph {
  std::vector<std::string> nodes;
  std::vector<Relation> edges;  // sorted
  double tolerance = 0.02;

  bool holds(const std::string& predicate, const std::string& a, const std::string& b) const;
};

inline const std::vector<std::string>& relation_predicates() {
  static const std::vector<std::string> kPredicates = {
      "left-of", "right-of", "in-front-of", "behind", "on-top-of", "inside", "adjacent"};
  return kPredicates;
}

/// Relational view of object poses with a per-axis metric tolerance:
/// left-of(A,B) iff A.x < B.x - tol, right-of(A,B) iff A.x > B.x + tol,
/// in-front-of / behind likewise along y (toward / away from the camera).
/// on-top-of and inside follow the support graph. adjacent holds when the
/// horizontal footprint gap is below tol and no directional predicate holds.
/// Throws std::invalid_argument unless tol > 0.
SceneGraph derive_scene_graph(const WorldState& world, double tolerance);

}  // namespace lam::world
