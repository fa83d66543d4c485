#include "lam/world/motion.hpp"

#include <cmath>
#include <stdexcept>

namespace lam::world {

MotionHandle::MotionHandle(tools::ToolCall call, int total_ticks) : call_(std::move(call)), total_(total_ticks) {
  if (total_ < 0) throw std::invalid_argument("negative motion duration");
}

void MotionHandle::finish(WorldState& world) {
  tools::CallVerdict v = tools::validate_call(call_, world);
  if (!v.ok()) {
    call_.fail(v.describe());
    return;
  }
  tools::apply_effect(world, call_);
  call_.succeed();
}

bool MotionHandle::advance(WorldState& world) {
  if (done()) return true;
  ++world.tick;
  ++elapsed_;
  if (elapsed_ >= total_) finish(world);
  return done();
}

void MotionHandle::preempt() {
  if (!done()) call_.preempt();
}

int call_ticks(const tools::ToolCall& call, const tools::ToolDurations& durations, double tick_ms) {
  if (call.tool == "wait") {
    auto it = call.args.find("duration");
    const double ms = it == call.args.end() ? 0.0 : std::get<double>(it->second);
    return static_cast<int>(std::ceil(ms / tick_ms - 1e-9));
  }
  return durations.ticks_for(call.tool);
}

MotionHandle apply_tool(WorldState& world, tools::ToolCall call, const tools::ToolDurations& durations) {
  tools::CallVerdict v = tools::validate_call(call, world);
  if (!v.ok()) throw std::logic_error("dispatch of rejected call " + call.to_string() + ": " + v.describe());
  const int ticks = call_ticks(call, durations, world.tick_ms);
  call.start();
  MotionHandle handle(std::move(call), ticks);
  if (ticks == 0) handle.finish(world);
  return handle;
}

}  // namespace lam::world
