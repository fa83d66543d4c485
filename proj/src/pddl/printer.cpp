#include "lam/pddl/printer.hpp"

#include <sstream>

namespace lam::pddl {

namespace {

void print_typed_list(std::ostream& os, const std::vector<TypedName>& names) {
  // Consecutive names sharing a type are grouped, as PDDL authors write them.
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) os << ' ';
    os << names[i].name;
    const bool last_of_group = i + 1 == names.size() || names[i + 1].type != names[i].type;
    if (last_of_group) os << " - " << names[i].type;
  }
}

void print_conjunction(std::ostream& os, const std::vector<Literal>& lits) {
  os << "(and";
  for (const auto& lit : lits) os << ' ' << lit.to_string();
  os << ')';
}

}  // namespace

std::string print_domain(const Domain& domain) {
  std::ostringstream os;
  os << "(define (domain " << domain.name << ")\n";
  if (!domain.requirements.empty()) {
    os << "  (:requirements";
    for (const auto& r : domain.requirements) os << ' ' << r;
    os << ")\n";
  }
  if (!domain.types.empty()) {
    os << "  (:types";
    for (const auto& t : domain.types) os << ' ' << t.name << " - " << t.parent;
    os << ")\n";
  }
  if (!domain.predicates.empty()) {
    os << "  (:predicates";
    for (const auto& p : domain.predicates) {
      os << "\n    (" << p.name;
      if (!p.params.empty()) {
        os << ' ';
        print_typed_list(os, p.params);
      }
      os << ')';
    }
    os << ")\n";
  }
  for (const auto& a : domain.actions) {
    os << "  (:action " << a.name << "\n    :parameters (";
    print_typed_list(os, a.params);
    os << ")\n    :precondition ";
    print_conjunction(os, a.precondition);
    os << "\n    :effect (and";
    for (const auto& atom : a.add_effects) os << ' ' << atom.to_string();
    for (const auto& atom : a.del_effects) os << " (not " << atom.to_string() << ')';
    os << "))\n";
  }
  os << ")\n";
  return os.str();
}

std::string print_problem(const Problem& problem) {
  std::ostringstream os;
  os << "(define (problem " << problem.name << ")\n";
  if (!problem.domain_name.empty()) os << "  (:domain " << problem.domain_name << ")\n";
  os << "  (:objects";
  if (!problem.objects.empty()) {
    os << ' ';
    print_typed_list(os, problem.objects);
  }
  os << ")\n  (:init";
  for (const auto& atom : problem.init) os << "\n    " << atom.to_string();
  os << ")\n  (:goal ";
  print_conjunction(os, problem.goal);
  os << "))\n";
  return os.str();
}

std::string print_plan(const Plan& plan) {
  std::string out;
  for (const auto& step : plan.steps) out += step.to_string() + "\n";
  return out;
}

std::string print_goal(const std::vector<Literal>& goal) {
  if (goal.size() == 1) return goal.front().to_string();
  std::ostringstream os;
  print_conjunction(os, goal);
  return os.str();
}

}  // namespace lam::pddl
