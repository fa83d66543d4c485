#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lam/pddl/ast.hpp"
#include "lam/pddl/plan.hpp"

namespace lam::pddl {

enum class ParseErrorKind {
  kLexical,
  kUnbalanced,
  kUnexpectedToken,
  kUnknownRequirement,
  kUndeclaredType,
  kUndeclaredPredicate,
  kArityMismatch,
  kUnknownObject,
  kUnboundVariable,
  kTypeMismatch,
  kDuplicate,
  kInconsistentEffects,
};

const char* to_string(ParseErrorKind kind);

/// Thrown by every parsing and checking entry point. Line and column are
/// 1-based; both are 0 when the offending value was built programmatically.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::string message, int line = 0, int column = 0,
             std::vector<std::string> expected = {});

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
  std::vector<std::string> expected_;
  std::string detail_;
};

Domain parse_domain(std::string_view text);

/// Parses a problem and type-checks every atom against `domain`.
Problem parse_problem(std::string_view text, const Domain& domain);

/// The `(:objects ...) (:init ...) (:goal ...)` sections of a problem without
/// the surrounding `define`. Sections may appear in any order; each at most once.
struct ProblemSections {
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  std::vector<Literal> goal;
};

/// Parses bare problem sections. Atoms may reference the declared objects and
/// any of `known_objects`.
ProblemSections parse_problem_sections(std::string_view text, const Domain& domain,
                                       const std::vector<TypedName>& known_objects);

/// Parses a goal expression: a single literal or an `(and ...)` conjunction.
std::vector<Literal> parse_goal(std::string_view text, const Domain& domain,
                                const std::vector<TypedName>& objects);

/// Parses plan text, one `(action arg...)` per line. `;` comments are ignored.
std::vector<PlanStep> parse_plan(std::string_view text);

/// Type-checks a programmatically built problem. Throws ParseError.
void check_problem(const Domain& domain, const Problem& problem);

}  // namespace lam::pddl
