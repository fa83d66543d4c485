#include "lam/tools/mapping.hpp"

#include "lam/world/abstraction.hpp"

namespace lam::tools {

namespace {

const std::string& arg(const pddl::PlanStep& step, std::size_t i, std::size_t index) {
  if (step.args.size() <= i) {
    throw MappingError(index, step.action + " at step " + std::to_string(index) + " has too few arguments");
  }
  return step.args[i];
}

}  // namespace

std::vector<ToolCall> map_action(const pddl::PlanStep& step, std::size_t index) {
  const std::string& a = step.action;
  if (a == "pick-up" || a == "unstack") {
    const std::string& x = arg(step, 0, index);
    return {ToolCall("detect", {{"object", x}}), ToolCall("pick", {{"object", x}})};
  }
  if (a == "stack") return {ToolCall("place_on", {{"target", arg(step, 1, index)}})};
  if (a == "put-down") return {ToolCall("place_on", {{"target", std::string(world::kTableObject)}})};
  if (a == "place-in") return {ToolCall("place_in", {{"container", arg(step, 1, index)}})};
  throw MappingError(index, "no tool mapping for action schema '" + a + "'");
}

std::vector<ToolCall> map_plan_to_calls(const pddl::Plan& plan, const world::WorldState& world) {
  world::WorldState sim = world;
  std::vector<ToolCall> calls;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    for (ToolCall& call : map_action(plan.steps[i], i)) {
      CallVerdict v = validate_call(call, sim);
      if (!v.ok()) {
        throw MappingError(i, call.to_string() + " from step " + std::to_string(i) + " (" +
                                  plan.steps[i].action + ") rejected: " + v.describe());
      }
      apply_effect(sim, call);
      calls.push_back(std::move(call));
    }
  }
  return calls;
}

}  // namespace lam::tools
