#include "lam/pddl/ast.hpp"

#include <algorithm>

#include "lam/pddl/plan.hpp"

namespace lam::pddl {

std::string Atom::to_string() const {
  std::string out = "(" + predicate;
  for (const auto& arg : args) out += " " + arg;
  return out + ")";
}

std::string Literal::to_string() const {
  return negated ? "(not " + atom.to_string() + ")" : atom.to_string();
}

std::string PlanStep::to_string() const {
  std::string out = "(" + action;
  for (const auto& arg : args) out += " " + arg;
  return out + ")";
}

const char* to_string(Provenance provenance) {
  return provenance == Provenance::kNeuroSymbolic ? "neuro-symbolic" : "direct-mapped";
}

bool Domain::has_type(const std::string& type) const {
  if (type == kRootType) return true;
  return std::any_of(types.begin(), types.end(),
                     [&](const TypeDecl& t) { return t.name == type; });
}

bool Domain::is_subtype(const std::string& type, const std::string& ancestor) const {
  if (ancestor == kRootType) return true;
  std::string current = type;
  // Bounded walk; declared hierarchies are checked acyclic at parse time.
  for (std::size_t hops = 0; hops <= types.size(); ++hops) {
    if (current == ancestor) return true;
    if (current == kRootType) return false;
    auto it = std::find_if(types.begin(), types.end(),
                           [&](const TypeDecl& t) { return t.name == current; });
    if (it == types.end()) return false;
    current = it->parent;
  }
  return false;
}

const PredicateSchema* Domain::find_predicate(const std::string& name) const {
  auto it = std::find_if(predicates.begin(), predicates.end(),
                         [&](const PredicateSchema& p) { return p.name == name; });
  return it == predicates.end() ? nullptr : &*it;
}

const ActionSchema* Domain::find_action(const std::string& name) const {
  auto it = std::find_if(actions.begin(), actions.end(),
                         [&](const ActionSchema& a) { return a.name == name; });
  return it == actions.end() ? nullptr : &*it;
}

const TypedName* Problem::find_object(const std::string& name) const {
  auto it = std::find_if(objects.begin(), objects.end(),
                         [&](const TypedName& o) { return o.name == name; });
  return it == objects.end() ? nullptr : &*it;
}

}  // namespace lam::pddl
