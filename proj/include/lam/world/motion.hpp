#pragma once

#include "lam/tools/registry.hpp"
#include "lam/tools/tool_call.hpp"
#include "lam/world/world_state.hpp"

namespace lam::world {

/// An in-flight tool motion. Each advance() consumes one tick of the world
/// clock; the tool's effect lands atomically when the last tick completes.
/// Tick boundaries are the only places a motion can be preempted.
class MotionHandle {
 public:
  MotionHandle(tools::ToolCall call, int total_ticks);

  /// Advances one tick. Returns true once the motion has finished.
  bool advance(WorldState& world);
  /// Halts in place: no effect is applied and the call becomes preempted.
  void preempt();

  bool done() const { return call_.finished(); }
  const tools::ToolCall& call() const { return call_; }
  int elapsed_ticks() const { return elapsed_; }
  int total_ticks() const { return total_; }

 private:
  friend MotionHandle apply_tool(WorldState&, tools::ToolCall, const tools::ToolDurations&);
  void finish(WorldState& world);

  tools::ToolCall call_;
  int total_;
  int elapsed_ = 0;
};

/// Ticks a call occupies under `durations` and the world's tick length.
int call_ticks(const tools::ToolCall& call, const tools::ToolDurations& durations, double tick_ms);

/// Starts a motion for a call that passed validate_call. Zero-tick calls
/// complete before this returns.
MotionHandle apply_tool(WorldState& world, tools::ToolCall call, const tools::ToolDurations& durations);

}  // namespace lam::world
