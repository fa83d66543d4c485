#pragma once

#include <limits>
#include <string>
#include <vector>

#include "lam/pddl/grounding.hpp"

namespace lam::planner {

enum class HeuristicKind { kAdditive, kMax, kZero };

const char* to_string(HeuristicKind kind);
HeuristicKind heuristic_from_string(const std::string& name);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Delete-relaxation estimates with unit action costs. Precomputes the
/// precondition/achiever structure once so repeated evaluation during search
/// does not rescan every action.
class RelaxedHeuristic {
 public:
  RelaxedHeuristic(const pddl::Grounding& grounding, HeuristicKind kind);

  /// h-add sums goal atom costs, h-max takes the maximum; infinity iff some
  /// positive goal atom is unreachable under the relaxation. Negative goals
  /// and negative preconditions are ignored by the relaxation.
  double operator()(const pddl::SymbolicState& state) const;

  HeuristicKind kind() const { return kind_; }

 private:
  const pddl::Grounding* grounding_;
  HeuristicKind kind_;
  std::vector<std::vector<std::size_t>> consumers_;  // atom -> actions needing it
  std::vector<std::size_t> precondition_count_;
  std::vector<std::size_t> no_precondition_actions_;
};

/// One-shot evaluation.
double heuristic_value(const pddl::Grounding& grounding, const pddl::SymbolicState& state,
                       HeuristicKind kind);

}  // namespace lam::planner
