#pragma once

#include <stdexcept>
#include <vector>

#include "lam/pddl/ast.hpp"
#include "lam/translator/translator.hpp"
#include "lam/world/world_state.hpp"

namespace lam::orchestrator {

/// The fragment contradicts the state observed in the world.
class ConflictError : public std::runtime_error {
 public:
  ConflictError(const std::string& what, std::vector<pddl::Atom> world_atoms, std::vector<pddl::Atom> fragment_atoms)
      : std::runtime_error(what), world_(std::move(world_atoms)), fragment_(std::move(fragment_atoms)) {}
  /// The deterministic initial state derived from the world.
  const std::vector<pddl::Atom>& world_atoms() const { return world_; }
  /// The fragment atoms that disagree with it.
  const std::vector<pddl::Atom>& fragment_atoms() const { return fragment_; }

 private:
  std::vector<pddl::Atom> world_;
  std::vector<pddl::Atom> fragment_;
};

/// Objects: world objects (items, containers, table) plus fragment objects.
/// Init: the world abstraction plus fragment init. Goal: the fragment goal.
///
/// The abstraction is complete for objects the world knows about, so a
/// fragment atom over known objects that the world does not entail is a
/// conflict, as is a second held object. Redeclaring a known object with a
/// different type is a conflict too. Throws pddl::ParseError if the merged
/// problem does not type-check.
pddl::Problem compose_problem(const translator::ProblemFragment& fragment, const world::WorldState& world,
                              const pddl::Domain& domain);

}  // namespace lam::orchestrator
