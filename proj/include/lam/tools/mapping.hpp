#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lam/pddl/plan.hpp"
#include "lam/tools/tool_call.hpp"

namespace lam::tools {

/// A generated call failed validation or a schema has no mapping. Either
/// means the domain and the registry have drifted apart.
class MappingError : public std::runtime_error {
 public:
  MappingError(std::size_t step, const std::string& what) : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Fixed per-schema expansion of one ground action.
std::vector<ToolCall> map_action(const pddl::PlanStep& step, std::size_t index = 0);

/// Expands every step and replays the calls on a copy of `world`, checking
/// each one with validate_call at its execution point.
std::vector<ToolCall> map_plan_to_calls(const pddl::Plan& plan, const world::WorldState& world);

}  // namespace lam::tools
