#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"
#include "lam/world/world_state.hpp"

namespace lam::tools {

using ArgValue = std::variant<std::string, Eigen::Vector3d, double>;

enum class CallStatus { kPending, kRunning, kSucceeded, kFailed, kPreempted };
std::string to_string(CallStatus status);

class IllegalTransition : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ToolCall {
  std::string tool;
  std::map<std::string, ArgValue> args;
  CallStatus status = CallStatus::kPending;
  std::string failure;
  std::string rationale;

  ToolCall() = default;
  ToolCall(std::string tool_name, std::map<std::string, ArgValue> bound = {})
      : tool(std::move(tool_name)), args(std::move(bound)) {}

  // Status moves only pending -> running -> {succeeded | failed | preempted}.
  void start();
  void succeed();
  void fail(std::string reason);
  void preempt();
  bool finished() const;

  /// A pending copy with the same tool and arguments.
  ToolCall fresh() const;

  std::optional<std::string> object_arg(const std::string& name) const;
  /// "pick(red_cube)", "wait(duration=100)"
  std::string to_string() const;
  bool same_invocation(const ToolCall& other) const { return tool == other.tool && args == other.args; }
};

nlohmann::json to_json(const ToolCall& call);
/// Throws std::invalid_argument on malformed records. Does not consult the
/// registry; validate_call does.
ToolCall call_from_json(const nlohmann::json& j);

enum class RejectionCode {
  kUnknownTool,
  kBadArguments,
  kUnknownObject,
  kUnknownLocation,
  kGripperOccupied,
  kNotHolding,
  kNotClear,
  kInsideContainer,
  kNotContainer,
  kIsContainer,
  kSelfTarget,
  kNoFreeSpot,
  kOpenWhileHolding,
};
std::string to_string(RejectionCode code);

struct Rejection {
  RejectionCode code;
  std::string reason;
};

struct CallVerdict {
  std::optional<Rejection> rejection;
  bool ok() const { return !rejection.has_value(); }
  std::string describe() const { return ok() ? "ok" : tools::to_string(rejection->code) + ": " + rejection->reason; }
};

/// Registry and argument-schema checks only; no world needed.
CallVerdict check_arguments(const ToolCall& call);

/// ok iff the tool exists, its arguments match the schema and its
/// precondition holds in `world`. Never modifies the world.
CallVerdict validate_call(const ToolCall& call, const world::WorldState& world);

/// Applies the tool's symbolic and geometric effect. Requires a call that
/// validates; throws std::logic_error otherwise.
void apply_effect(world::WorldState& world, const ToolCall& call);

/// Cartesian target of a named location in this world.
std::optional<Eigen::Vector3d> location_point(const world::WorldState& world, const std::string& name);

}  // namespace lam::tools
