#include "lam/translator/scene_facts.hpp"

#include <set>
#include <stdexcept>

#include "lam/world/abstraction.hpp"

namespace lam::translator {

void SceneFacts::validate() const {
  std::set<std::string> names;
  for (const auto& o : objects) {
    if (!names.insert(o.name).second) throw std::invalid_argument("duplicate object " + o.name);
    if (!o.position.allFinite()) throw std::invalid_argument("non-finite position for " + o.name);
  }
  if (held && !names.count(*held)) throw std::invalid_argument("held object " + *held + " is not in the scene");
}

const ObjectFact* SceneFacts::find(const std::string& name) const {
  for (const auto& o : objects) {
    if (o.name == name) return &o;
  }
  return nullptr;
}

std::vector<pddl::TypedName> SceneFacts::typed_objects() const {
  std::vector<pddl::TypedName> out;
  for (const auto& o : objects) out.push_back({o.name, o.container ? "container" : "item"});
  out.push_back({world::kTableObject, "surface"});
  return out;
}

SceneFacts observe(const world::WorldState& world, double tau) {
  SceneFacts f;
  for (const auto& [name, o] : world.objects) f.objects.push_back({name, o.cls, o.color, o.position, o.container});
  f.relations = world::derive_scene_graph(world, tau).edges;
  f.gripper_open = world.robot.gripper_open;
  f.held = world.robot.held;
  return f;
}

nlohmann::json to_json(const SceneFacts& facts) {
  using nlohmann::json;
  json objects = json::array();
  for (const auto& o : facts.objects) {
    objects.push_back({{"name", o.name},
                       {"class", o.cls},
                       {"color", o.color},
                       {"position", {o.position.x(), o.position.y(), o.position.z()}},
                       {"container", o.container}});
  }
  json relations = json::array();
  for (const auto& r : facts.relations) relations.push_back(r.to_string());
  return {{"objects", objects},
          {"relations", relations},
          {"robot", {{"gripper_open", facts.gripper_open}, {"held", facts.held ? json(*facts.held) : json(nullptr)}}}};
}

}  // namespace lam::translator
