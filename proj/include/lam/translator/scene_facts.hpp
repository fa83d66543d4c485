#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lam/pddl/ast.hpp"
#include "lam/world/scene_graph.hpp"
#include "lam/world/world_state.hpp"

namespace lam::translator {

struct ObjectFact {
  std::string name;
  std::string cls;
  std::string color;
  world::Vec3 position = world::Vec3::Zero();
  bool container = false;
};

/// Planner-facing snapshot of the perceived scene.
struct SceneFacts {
  std::vector<ObjectFact> objects;
  std::vector<world::Relation> relations;
  bool gripper_open = true;
  std::optional<std::string> held;

  /// Throws std::invalid_argument on duplicate names, non-finite positions
  /// or a held object that is not listed.
  void validate() const;
  const ObjectFact* find(const std::string& name) const;
  /// Objects as typed PDDL names, plus the table surface.
  std::vector<pddl::TypedName> typed_objects() const;
};

/// Ground-truth facts of a world, relations derived with tolerance `tau`.
SceneFacts observe(const world::WorldState& world, double tau = 0.02);

nlohmann::json to_json(const SceneFacts& facts);

}  // namespace lam::translator
