#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lam::pddl::detail {

struct SExpr {
  bool is_list = false;
  std::string token;  // lowercase; empty for lists
  std::vector<SExpr> items;
  int line = 0;
  int column = 0;
  int end_line = 0;  // position of the closing paren, lists only
  int end_column = 0;

  bool is_token() const { return !is_list; }
  bool is(std::string_view t) const { return !is_list && token == t; }
  bool is_variable() const { return !is_list && !token.empty() && token[0] == '?'; }
  bool is_keyword() const { return !is_list && !token.empty() && token[0] == ':'; }
};

/// Reads every top-level expression. Identifiers are lowercased; `;` starts a
/// comment running to end of line. Throws ParseError on lexical errors and
/// unbalanced parentheses.
std::vector<SExpr> read_sexprs(std::string_view text);

}  // namespace lam::pddl::detail
