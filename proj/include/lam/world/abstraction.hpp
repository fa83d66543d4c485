#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lam/pddl/ast.hpp"
#include "lam/world/world_state.hpp"

namespace lam::world {

inline constexpr const char* kTableObject = "table";

/// Typed objects of the symbolic view: items, containers and the table
/// surface, sorted by name.
std::vector<pddl::TypedName> symbolic_objects(const WorldState& world);

/// Ground atoms derived deterministically from the world: on-table, on, in,
/// holding, clear and gripper-empty. Sorted and duplicate free.
std::vector<pddl::Atom> abstract_state(const WorldState& world);

/// Order-insensitive hash of abstract_state().
std::uint64_t abstraction_hash(const WorldState& world);

/// True when every positive goal literal is in `atoms` and no negated one is.
bool satisfies(const std::vector<pddl::Atom>& atoms, const std::vector<pddl::Literal>& goal);

}  // namespace lam::world
