#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace lam::pddl {

inline constexpr const char* kRootType = "object";

struct TypedName {
  std::string name;
  std::string type = kRootType;

  auto operator<=>(const TypedName&) const = default;
};

struct TypeDecl {
  std::string name;
  std::string parent = kRootType;

  auto operator<=>(const TypeDecl&) const = default;
};

/// A predicate applied to arguments. In schemas the arguments are `?variables`,
/// in problems they are object names.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  auto operator<=>(const Atom&) const = default;
  std::string to_string() const;
};

struct Literal {
  Atom atom;
  bool negated = false;

  auto operator<=>(const Literal&) const = default;
  std::string to_string() const;
};

struct PredicateSchema {
  std::string name;
  std::vector<TypedName> params;

  auto operator<=>(const PredicateSchema&) const = default;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> params;
  std::vector<Literal> precondition;
  std::vector<Atom> add_effects;
  std::vector<Atom> del_effects;

  auto operator<=>(const ActionSchema&) const = default;
};

class Domain {
 public:
  std::string name;
  std::vector<std::string> requirements;
  std::vector<TypeDecl> types;
  std::vector<PredicateSchema> predicates;
  std::vector<ActionSchema> actions;

  bool operator==(const Domain&) const = default;

  bool has_type(const std::string& type) const;
  /// True when `type` equals `ancestor` or inherits from it.
  bool is_subtype(const std::string& type, const std::string& ancestor) const;
  const PredicateSchema* find_predicate(const std::string& name) const;
  const ActionSchema* find_action(const std::string& name) const;
};

class Problem {
 public:
  std::string name;
  std::string domain_name;
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  std::vector<Literal> goal;

  bool operator==(const Problem&) const = default;

  const TypedName* find_object(const std::string& name) const;
};

}  // namespace lam::pddl
