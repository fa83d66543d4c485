#include "lam/world/abstraction.hpp"

#include <algorithm>

namespace lam::world {

std::vector<pddl::TypedName> symbolic_objects(const WorldState& world) {
  std::vector<pddl::TypedName> out;
  for (const auto& [name, o] : world.objects) {
    out.push_back({name, o.container ? "container" : "item"});
  }
  out.push_back({kTableObject, "surface"});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

std::vector<pddl::Atom> abstract_state(const WorldState& world) {
  std::vector<pddl::Atom> atoms;
  for (const auto& [name, o] : world.objects) {
    if (o.container) continue;
    switch (o.support.kind) {
      case Support::Kind::kTable: atoms.push_back({"on-table", {name}}); break;
      case Support::Kind::kOn: atoms.push_back({"on", {name, o.support.ref}}); break;
      case Support::Kind::kIn: atoms.push_back({"in", {name, o.support.ref}}); break;
      case Support::Kind::kHeld: atoms.push_back({"holding", {name}}); break;
    }
    if (world.is_clear(name)) atoms.push_back({"clear", {name}});
  }
  if (!world.robot.held) atoms.push_back({"gripper-empty", {}});
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

std::uint64_t abstraction_hash(const WorldState& world) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& atom : abstract_state(world)) {
    for (unsigned char c : atom.to_string()) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= '\n';
    h *= 1099511628211ULL;
  }
  return h;
}

bool satisfies(const std::vector<pddl::Atom>& atoms, const std::vector<pddl::Literal>& goal) {
  for (const auto& lit : goal) {
    const bool present = std::find(atoms.begin(), atoms.end(), lit.atom) != atoms.end();
    if (present == lit.negated) return false;
  }
  return true;
}

}  // namespace lam::world
