#pragma once

#include <cstddef>
#include <string>

#include "lam/pddl/grounding.hpp"
#include "lam/pddl/plan.hpp"

namespace lam::pddl {

struct PlanVerdict {
  enum class Failure { kNone, kUnknownAction, kPrecondition, kNegativePrecondition, kGoal };

  bool valid = true;
  Failure failure = Failure::kNone;
  /// Index of the failing step; equals the plan length for unmet goals.
  std::size_t step = 0;
  /// The violated atom, or the unresolvable step for kUnknownAction.
  std::string atom;

  static PlanVerdict ok() { return {}; }
  std::string describe() const;
};

/// Simulates `plan` from the initial state. Valid iff every step resolves to
/// a ground action whose precondition holds when it is applied, and the goal
/// holds in the final state.
PlanVerdict validate_plan(const Grounding& grounding, const Plan& plan);

/// Final state reached by applying the plan, assuming it is applicable.
SymbolicState simulate_plan(const Grounding& grounding, const Plan& plan);

}  // namespace lam::pddl
