#pragma once

#include <string>
#include <vector>

namespace lam::pddl {

enum class Provenance { kNeuroSymbolic, kDirectMapped };

const char* to_string(Provenance provenance);

struct PlanStep {
  std::string action;
  std::vector<std::string> args;
  /// Human-readable description shown to the operator. Not part of the
  /// printed plan.
  std::string note;

  /// Equality covers the action and its arguments only.
  bool operator==(const PlanStep& other) const {
    return action == other.action && args == other.args;
  }
  std::string to_string() const;
};

struct Plan {
  std::vector<PlanStep> steps;
  Provenance provenance = Provenance::kNeuroSymbolic;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
};

}  // namespace lam::pddl
