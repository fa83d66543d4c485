#include "lam/tools/registry.hpp"

#include <stdexcept>

namespace lam::tools {

using nlohmann::json;

namespace {

ArgSpec object_ref(std::string name, bool allow_table = false) {
  return {std::move(name), ArgKind::kObjectRef, {}, {}, allow_table};
}

}  // namespace

const std::vector<ToolSpec>& registry() {
  static const std::vector<ToolSpec> kRegistry = {
      {ToolId::kDetect, "detect", {object_ref("object")},
       "(exists ?object)", "Locate an object with the camera", 10},
      {ToolId::kPick, "pick", {object_ref("object")},
       "(and (gripper-empty) (exists ?object) (clear ?object))", "Grasp and lift an object", 30},
      {ToolId::kPlaceOn, "place_on", {object_ref("target", true)},
       "(and (holding ?x) (or (= ?target table) (clear ?target)))",
       "Put the held object on the table or on top of another object", 30},
      {ToolId::kPlaceIn, "place_in", {object_ref("container")},
       "(and (holding ?x) (container ?container))", "Drop the held object into a container", 30},
      {ToolId::kMoveTo, "move_to", {ArgSpec{"target", ArgKind::kPose, {}, {}, false}},
       "(reachable ?target)", "Move the arm to a named location or Cartesian point", 25},
      {ToolId::kOpenGripper, "open_gripper", {}, "(gripper-empty)", "Open the gripper", 5},
      {ToolId::kCloseGripper, "close_gripper", {}, "(and)", "Close the gripper", 5},
      {ToolId::kHome, "home", {}, "(and)", "Return the arm to its home pose", 20},
      {ToolId::kWait, "wait", {ArgSpec{"duration", ArgKind::kScalar, "ms", {}, false}},
       "(>= ?duration 0)", "Hold position for a duration", 0},
  };
  return kRegistry;
}

const ToolSpec* find_tool(const std::string& name) {
  for (const auto& t : registry()) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const ToolSpec& tool_spec(ToolId id) {
  for (const auto& t : registry()) {
    if (t.id == id) return t;
  }
  throw std::logic_error("tool id missing from registry");
}

std::string to_string(ArgKind kind) {
  switch (kind) {
    case ArgKind::kObjectRef: return "object-ref";
    case ArgKind::kPose: return "pose";
    case ArgKind::kScalar: return "scalar";
    case ArgKind::kEnum: return "enum";
  }
  return "?";
}

const std::vector<std::string>& named_locations() {
  static const std::vector<std::string> kLocations = {"home", "scanning-position", "bin", "table"};
  return kLocations;
}

ToolDurations ToolDurations::defaults() {
  ToolDurations d;
  for (const auto& t : registry()) {
    if (t.id != ToolId::kWait) d.ticks[t.name] = t.default_ticks;
  }
  return d;
}

ToolDurations ToolDurations::from_json(const json& j) {
  ToolDurations d = defaults();
  if (j.is_null()) return d;
  if (!j.is_object()) throw std::invalid_argument("tool durations must be an object");
  for (const auto& [name, value] : j.items()) {
    if (!find_tool(name) || name == "wait") throw std::invalid_argument("no configurable tool " + name);
    if (!value.is_number_integer() || value.get<int>() < 0) {
      throw std::invalid_argument("duration of " + name + " must be a non-negative integer");
    }
    d.ticks[name] = value.get<int>();
  }
  return d;
}

int ToolDurations::ticks_for(const std::string& tool) const {
  auto it = ticks.find(tool);
  if (it == ticks.end()) throw std::invalid_argument("no duration for tool " + tool);
  return it->second;
}

json registry_json(const ToolDurations& durations) {
  json out = json::array();
  for (const auto& t : registry()) {
    json args = json::array();
    for (const auto& a : t.args) {
      json ja = {{"name", a.name}, {"kind", to_string(a.kind)}};
      if (!a.units.empty()) ja["units"] = a.units;
      if (!a.values.empty()) ja["values"] = a.values;
      if (a.allow_table) ja["allows"] = json::array({"table"});
      if (a.kind == ArgKind::kPose) ja["locations"] = named_locations();
      args.push_back(ja);
    }
    json jt = {{"name", t.name}, {"args", args}, {"precondition", t.precondition}, {"summary", t.summary}};
    if (t.id == ToolId::kWait) {
      jt["ticks"] = "ceil(duration / tick_ms)";
    } else {
      jt["ticks"] = durations.ticks_for(t.name);
    }
    out.push_back(jt);
  }
  return out;
}

}  // namespace lam::tools
