#include "lam/pddl/validate.hpp"

#include <stdexcept>

namespace lam::pddl {

std::string PlanVerdict::describe() const {
  switch (failure) {
    case Failure::kNone: return "valid";
    case Failure::kUnknownAction:
      return "step " + std::to_string(step) + ": unknown action " + atom;
    case Failure::kPrecondition:
      return "step " + std::to_string(step) + ": precondition " + atom + " unsatisfied";
    case Failure::kNegativePrecondition:
      return "step " + std::to_string(step) + ": precondition (not " + atom + ") unsatisfied";
    case Failure::kGoal: return "goal " + atom + " unsatisfied after step " + std::to_string(step);
  }
  return "invalid";
}

PlanVerdict validate_plan(const Grounding& grounding, const Plan& plan) {
  SymbolicState state = grounding.initial;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& step = plan.steps[i];
    const auto index = grounding.find_action(step.action, step.args);
    if (!index) {
      return {false, PlanVerdict::Failure::kUnknownAction, i, step.to_string()};
    }
    const GroundAction& action = grounding.actions[*index];
    for (AtomId a : action.pre_pos) {
      if (!state.contains(a)) {
        return {false, PlanVerdict::Failure::kPrecondition, i, grounding.atoms[a].to_string()};
      }
    }
    for (AtomId a : action.pre_neg) {
      if (state.contains(a)) {
        return {false, PlanVerdict::Failure::kNegativePrecondition, i,
                grounding.atoms[a].to_string()};
      }
    }
    state = action.apply(state);
  }
  for (AtomId a : grounding.goal_pos) {
    if (!state.contains(a)) {
      return {false, PlanVerdict::Failure::kGoal, plan.steps.size(), grounding.atoms[a].to_string()};
    }
  }
  for (AtomId a : grounding.goal_neg) {
    if (state.contains(a)) {
      return {false, PlanVerdict::Failure::kGoal, plan.steps.size(),
              "(not " + grounding.atoms[a].to_string() + ")"};
    }
  }
  return PlanVerdict::ok();
}

SymbolicState simulate_plan(const Grounding& grounding, const Plan& plan) {
  SymbolicState state = grounding.initial;
  for (const auto& step : plan.steps) {
    const auto index = grounding.find_action(step.action, step.args);
    if (!index) throw std::invalid_argument("unknown plan step " + step.to_string());
    state = grounding.actions[*index].apply(state);
  }
  return state;
}

}  // namespace lam::pddl
