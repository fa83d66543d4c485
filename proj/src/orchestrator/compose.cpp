#include "lam/orchestrator/compose.hpp"

#include <algorithm>
#include <set>

#include "lam/pddl/parser.hpp"
#include "lam/world/abstraction.hpp"

namespace lam::orchestrator {

pddl::Problem compose_problem(const translator::ProblemFragment& fragment, const world::WorldState& world,
                              const pddl::Domain& domain) {
  pddl::Problem p;
  p.name = "task";
  p.domain_name = domain.name;
  p.objects = world::symbolic_objects(world);
  std::set<std::string> known;
  for (const auto& o : p.objects) known.insert(o.name);

  const std::vector<pddl::Atom> observed = world::abstract_state(world);
  std::vector<pddl::Atom> conflicts;
  for (const auto& o : fragment.objects) {
    auto it = std::find_if(p.objects.begin(), p.objects.end(), [&](const auto& k) { return k.name == o.name; });
    if (it == p.objects.end()) {
      p.objects.push_back(o);
    } else if (it->type != o.type) {
      throw ConflictError("fragment declares " + o.name + " - " + o.type + " but the world has it as " + it->type,
                          observed, {});
    }
  }

  const bool hand_busy = std::any_of(observed.begin(), observed.end(), [](const pddl::Atom& a) {
    return a.predicate == "holding" || a.predicate == "gripper-empty";
  });
  bool fragment_holds = false;
  for (const auto& atom : fragment.init) {
    if (std::binary_search(observed.begin(), observed.end(), atom)) continue;
    const bool over_known = std::all_of(atom.args.begin(), atom.args.end(), [&](const auto& a) { return known.count(a) > 0; });
    const bool second_hold = atom.predicate == "holding" && (hand_busy || fragment_holds);
    if (atom.predicate == "holding") fragment_holds = true;
    if (over_known || second_hold) conflicts.push_back(atom);
  }
  if (!conflicts.empty()) {
    std::string list;
    for (const auto& a : conflicts) list += (list.empty() ? "" : " ") + a.to_string();
    throw ConflictError("fragment init contradicts the observed world: " + list, observed, conflicts);
  }

  p.init = observed;
  for (const auto& atom : fragment.init) {
    if (!std::binary_search(observed.begin(), observed.end(), atom)) p.init.push_back(atom);
  }
  p.goal = fragment.goal;
  pddl::check_problem(domain, p);
  return p;
}

}  // namespace lam::orchestrator
