#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lam/pddl/ast.hpp"

namespace lam::pddl {

using AtomId = std::uint32_t;

/// Closed-world set of ground atoms, stored as a bitset over the atom table.
/// The word vector is the canonical encoding used for hashing and equality.
class SymbolicState {
 public:
  SymbolicState() = default;
  explicit SymbolicState(std::size_t num_atoms);

  bool contains(AtomId id) const { return (words_[id >> 6] >> (id & 63)) & 1U; }
  void insert(AtomId id) { words_[id >> 6] |= std::uint64_t{1} << (id & 63); }
  void erase(AtomId id) { words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63)); }

  std::size_t universe_size() const { return num_atoms_; }
  std::size_t count() const;
  /// Member atom ids in increasing order.
  std::vector<AtomId> atoms() const;
  const std::vector<std::uint64_t>& words() const { return words_; }
  std::size_t hash() const;

  bool operator==(const SymbolicState&) const = default;

 private:
  std::size_t num_atoms_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SymbolicStateHash {
  std::size_t operator()(const SymbolicState& s) const { return s.hash(); }
};

struct GroundAction {
  std::string schema;
  std::vector<std::string> args;
  std::vector<AtomId> pre_pos;
  std::vector<AtomId> pre_neg;
  std::vector<AtomId> add;
  std::vector<AtomId> del;

  /// `(schema arg...)`
  std::string name() const;
  bool applicable(const SymbolicState& s) const;
  SymbolicState apply(const SymbolicState& s) const;
};

class GroundingLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroundingOptions {
  std::size_t max_actions = 1'000'000;
};

/// Propositional view of a (domain, problem) pair. Atoms are ordered
/// lexicographically by (predicate, args); actions by schema declaration
/// order, then by argument tuple over name-sorted objects.
struct Grounding {
  std::vector<Atom> atoms;
  std::vector<GroundAction> actions;
  SymbolicState initial;
  std::vector<AtomId> goal_pos;
  std::vector<AtomId> goal_neg;

  std::optional<AtomId> find_atom(const Atom& atom) const;
  std::optional<std::size_t> find_action(const std::string& schema,
                                         const std::vector<std::string>& args) const;
  bool is_goal(const SymbolicState& s) const;
  SymbolicState make_state(const std::vector<Atom>& facts) const;
  std::vector<Atom> decode(const SymbolicState& s) const;

  std::unordered_map<std::string, AtomId> atom_index;
  std::unordered_map<std::string, std::size_t> action_index;
};

/// Eager, exhaustive instantiation of every predicate and action schema over
/// the problem's objects. Expects a problem that type-checks against the domain.
Grounding ground(const Domain& domain, const Problem& problem, const GroundingOptions& options = {});

}  // namespace lam::pddl
