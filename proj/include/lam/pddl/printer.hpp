#pragma once

#include <string>
#include <vector>

#include "lam/pddl/ast.hpp"
#include "lam/pddl/plan.hpp"

namespace lam::pddl {

std::string print_domain(const Domain& domain);
std::string print_problem(const Problem& problem);

/// One `(action arg...)` per line, lowercase, newline-terminated. The empty
/// plan prints as the empty string.
std::string print_plan(const Plan& plan);

/// `(and ...)` for conjunctions, the bare literal for singletons, `(and)` when empty.
std::string print_goal(const std::vector<Literal>& goal);

}  // namespace lam::pddl
