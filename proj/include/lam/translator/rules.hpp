#pragma once

#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace lam::translator {

enum class IntentKind { kOnto, kInto, kTable, kHome, kGoto, kOpenGripper, kCloseGripper };
std::string to_string(IntentKind kind);

struct Intent {
  IntentKind kind;
  /// Captured object descriptors or location phrases, in rule order.
  std::vector<std::string> slots;
  int rule_line = 0;
};

/// Ordered regular-expression rules read from a text file:
///
///     onto  := (?:pick up|grab) (.+?) and place it on (.+)
///
/// Lines starting with '#' are comments. Patterns must match the whole
/// normalized instruction; the first matching rule wins.
class RuleSet {
 public:
  struct Rule {
    IntentKind kind;
    std::string pattern;
    std::regex regex;
    int line;
  };

  /// Throws std::invalid_argument naming the offending line.
  static RuleSet parse(const std::string& text);
  static RuleSet load(const std::string& path);

  std::optional<Intent> match(const std::string& instruction) const;
  /// Sequenced instructions ("... and then ...", "... then ..."). When every
  /// clause matches on its own the clauses win; otherwise the whole sentence
  /// is matched as one instruction. Empty when nothing matches.
  std::vector<Intent> match_sequence(const std::string& instruction) const;
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

/// Lower-cases, drops commas, a trailing "execute" and trailing punctuation,
/// and collapses whitespace.
std::string normalize_instruction(const std::string& text);

}  // namespace lam::translator
