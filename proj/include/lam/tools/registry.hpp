#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace lam::tools {

enum class ToolId { kDetect, kPick, kPlaceOn, kPlaceIn, kMoveTo, kOpenGripper, kCloseGripper, kHome, kWait };

enum class ArgKind {
  kObjectRef,  // name of a scene object (or "table" where allowed)
  kPose,       // named location or Cartesian point
  kScalar,     // number with units
  kEnum,
};

struct ArgSpec {
  std::string name;
  ArgKind kind = ArgKind::kObjectRef;
  std::string units;
  std::vector<std::string> values;  // allowed values for kEnum
  bool allow_table = false;
};

struct ToolSpec {
  ToolId id;
  std::string name;
  std::vector<ArgSpec> args;
  /// Precondition in symbolic form, as published to translators.
  std::string precondition;
  std::string summary;
  int default_ticks = 0;
};

/// The closed set of callable tools, in a fixed order.
const std::vector<ToolSpec>& registry();
const ToolSpec* find_tool(const std::string& name);
const ToolSpec& tool_spec(ToolId id);

std::string to_string(ArgKind kind);

/// Named arm locations standing in for motion-planner pose goals.
const std::vector<std::string>& named_locations();

/// Tick counts per tool. `wait` is not listed: it lasts ceil(duration / tick).
struct ToolDurations {
  std::map<std::string, int> ticks;

  static ToolDurations defaults();
  /// Overrides from a {"pick": 30, ...} object. Throws std::invalid_argument
  /// on unknown tools or negative counts.
  static ToolDurations from_json(const nlohmann::json& j);
  int ticks_for(const std::string& tool) const;
};

/// Registry as structured records: name, argument schema, precondition,
/// duration in ticks.
nlohmann::json registry_json(const ToolDurations& durations);

}  // namespace lam::tools
