#include "lam/planner/heuristic.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace lam::planner {

const char* to_string(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::kAdditive: return "hadd";
    case HeuristicKind::kMax: return "hmax";
    case HeuristicKind::kZero: return "zero";
  }
  return "?";
}

HeuristicKind heuristic_from_string(const std::string& name) {
  if (name == "hadd" || name == "h-add" || name == "add") return HeuristicKind::kAdditive;
  if (name == "hmax" || name == "h-max" || name == "max") return HeuristicKind::kMax;
  if (name == "zero" || name == "blind") return HeuristicKind::kZero;
  throw std::invalid_argument("unknown heuristic '" + name + "'");
}

RelaxedHeuristic::RelaxedHeuristic(const pddl::Grounding& grounding, HeuristicKind kind)
    : grounding_(&grounding), kind_(kind) {
  consumers_.resize(grounding.atoms.size());
  precondition_count_.resize(grounding.actions.size());
  for (std::size_t a = 0; a < grounding.actions.size(); ++a) {
    const auto& pre = grounding.actions[a].pre_pos;
    precondition_count_[a] = pre.size();
    if (pre.empty()) no_precondition_actions_.push_back(a);
    for (auto atom : pre) consumers_[atom].push_back(a);
  }
}

double RelaxedHeuristic::operator()(const pddl::SymbolicState& state) const {
  const auto& g = *grounding_;
  if (kind_ == HeuristicKind::kZero) return 0.0;
  bool satisfied = true;
  for (auto a : g.goal_pos) satisfied = satisfied && state.contains(a);
  if (satisfied) return 0.0;

  // Generalized Dijkstra: both combination rules are monotone, so an atom's
  // cost is final once it is popped.
  std::vector<double> cost(g.atoms.size(), kInfinity);
  std::vector<bool> closed(g.atoms.size(), false);
  std::vector<std::size_t> remaining = precondition_count_;
  std::vector<double> action_acc(g.actions.size(), 0.0);
  using Entry = std::pair<double, pddl::AtomId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  auto relax = [&](std::size_t action_index, double action_cost) {
    for (auto eff : g.actions[action_index].add) {
      if (action_cost < cost[eff]) {
        cost[eff] = action_cost;
        open.emplace(action_cost, eff);
      }
    }
  };
  for (auto atom : state.atoms()) {
    cost[atom] = 0.0;
    open.emplace(0.0, atom);
  }
  for (auto a : no_precondition_actions_) relax(a, 1.0);

  while (!open.empty()) {
    const auto [c, atom] = open.top();
    open.pop();
    if (closed[atom] || c > cost[atom]) continue;
    closed[atom] = true;
    for (auto a : consumers_[atom]) {
      action_acc[a] = kind_ == HeuristicKind::kAdditive ? action_acc[a] + c
                                                        : std::max(action_acc[a], c);
      if (--remaining[a] == 0) relax(a, action_acc[a] + 1.0);
    }
  }

  double value = 0.0;
  for (auto a : g.goal_pos) {
    if (cost[a] == kInfinity) return kInfinity;
    value = kind_ == HeuristicKind::kAdditive ? value + cost[a] : std::max(value, cost[a]);
  }
  return value;
}

double heuristic_value(const pddl::Grounding& grounding, const pddl::SymbolicState& state,
                       HeuristicKind kind) {
  return RelaxedHeuristic(grounding, kind)(state);
}

}  // namespace lam::planner
