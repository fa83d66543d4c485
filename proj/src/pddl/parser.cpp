#include "lam/pddl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <set>

#include "sexpr.hpp"

namespace lam::pddl {

using detail::SExpr;

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kLexical: return "lexical error";
    case ParseErrorKind::kUnbalanced: return "unbalanced parentheses";
    case ParseErrorKind::kUnexpectedToken: return "unexpected token";
    case ParseErrorKind::kUnknownRequirement: return "unknown requirement";
    case ParseErrorKind::kUndeclaredType: return "undeclared type";
    case ParseErrorKind::kUndeclaredPredicate: return "undeclared predicate";
    case ParseErrorKind::kArityMismatch: return "arity mismatch";
    case ParseErrorKind::kUnknownObject: return "unknown object";
    case ParseErrorKind::kUnboundVariable: return "unbound variable";
    case ParseErrorKind::kTypeMismatch: return "type mismatch";
    case ParseErrorKind::kDuplicate: return "duplicate declaration";
    case ParseErrorKind::kInconsistentEffects: return "inconsistent effects";
  }
  return "parse error";
}

namespace {

std::string format_message(ParseErrorKind kind, const std::string& detail, int line, int column,
                           const std::vector<std::string>& expected) {
  std::string msg;
  if (line > 0) msg += std::to_string(line) + ":" + std::to_string(column) + ": ";
  msg += to_string(kind);
  if (!detail.empty()) msg += ": " + detail;
  if (!expected.empty()) {
    msg += " (expected one of:";
    for (const auto& e : expected) msg += " " + e;
    msg += ")";
  }
  return msg;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::string message, int line, int column,
                       std::vector<std::string> expected)
    : std::runtime_error(format_message(kind, message, line, column, expected)),
      kind_(kind),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      detail_(std::move(message)) {}

namespace detail {

namespace {

bool is_identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '?' ||
         c == ':' || c == '.';
}

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) {
  std::vector<SExpr> top;
  std::vector<SExpr> stack;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto push = [&](SExpr e) {
    if (stack.empty()) {
      top.push_back(std::move(e));
    } else {
      stack.back().items.push_back(std::move(e));
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '(') {
      SExpr list;
      list.is_list = true;
      list.line = line;
      list.column = column;
      stack.push_back(std::move(list));
      ++column;
      ++i;
      continue;
    }
    if (c == ')') {
      if (stack.empty()) {
        throw ParseError(ParseErrorKind::kUnbalanced, "unmatched ')'", line, column);
      }
      SExpr done = std::move(stack.back());
      stack.pop_back();
      done.end_line = line;
      done.end_column = column;
      push(std::move(done));
      ++column;
      ++i;
      continue;
    }
    if (!is_identifier_char(c)) {
      throw ParseError(ParseErrorKind::kLexical,
                       std::string("invalid character '") + c + "'", line, column);
    }
    SExpr tok;
    tok.line = line;
    tok.column = column;
    while (i < text.size() && is_identifier_char(text[i])) {
      tok.token += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
      ++i;
      ++column;
    }
    push(std::move(tok));
  }
  if (!stack.empty()) {
    const auto& open = stack.back();
    throw ParseError(ParseErrorKind::kUnbalanced, "missing ')' for list opened here", open.line,
                     open.column, {")"});
  }
  return top;
}

}  // namespace detail

namespace {

const std::set<std::string> kSupportedRequirements = {":strips", ":typing",
                                                      ":negative-preconditions"};

[[noreturn]] void fail(ParseErrorKind kind, const std::string& detail, const SExpr& at,
                       std::vector<std::string> expected = {}) {
  throw ParseError(kind, detail, at.line, at.column, std::move(expected));
}

const SExpr& expect_list(const SExpr& e, const std::string& what) {
  if (!e.is_list) fail(ParseErrorKind::kUnexpectedToken, "'" + e.token + "' where " + what + " was expected", e, {"("});
  return e;
}

const std::string& expect_name(const SExpr& e, const std::string& what) {
  if (e.is_list || e.is_variable() || e.is_keyword() || e.token == "-") {
    fail(ParseErrorKind::kUnexpectedToken,
         (e.is_list ? std::string("list") : "'" + e.token + "'") + " where " + what +
             " was expected",
         e, {"<name>"});
  }
  return e.token;
}

/// Element at `index` of a list, or an error pointing at the closing paren.
const SExpr& child(const SExpr& list, std::size_t index, const std::string& what) {
  if (index >= list.items.size()) {
    throw ParseError(ParseErrorKind::kUnexpectedToken, "')' where " + what + " was expected",
                     list.end_line, list.end_column, {what});
  }
  return list.items[index];
}

void expect_length(const SExpr& list, std::size_t n, const std::string& what) {
  if (list.items.size() > n) {
    const auto& extra = list.items[n];
    fail(ParseErrorKind::kUnexpectedToken, "trailing element in " + what, extra, {")"});
  }
}

std::vector<TypedName> parse_typed_list(const SExpr& list, std::size_t begin, bool variables) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = begin; i < list.items.size(); ++i) {
    const SExpr& e = list.items[i];
    if (e.is("-")) {
      const SExpr& type_expr = child(list, i + 1, "<type>");
      if (type_expr.is_list) {
        fail(ParseErrorKind::kUnexpectedToken, "compound types are not supported", type_expr,
             {"<type>"});
      }
      if (pending == 0) fail(ParseErrorKind::kUnexpectedToken, "type without names", e, {"<name>"});
      const std::string& type = expect_name(type_expr, "a type name");
      for (std::size_t k = out.size() - pending; k < out.size(); ++k) out[k].type = type;
      pending = 0;
      ++i;
      continue;
    }
    if (e.is_list) {
      fail(ParseErrorKind::kUnexpectedToken, "list inside a typed list", e,
           {variables ? "<variable>" : "<name>", "-"});
    }
    if (variables != e.is_variable()) {
      fail(ParseErrorKind::kUnexpectedToken, "'" + e.token + "'", e,
           {variables ? "<variable>" : "<name>"});
    }
    if (!variables) expect_name(e, "a name");
    out.push_back({e.token, kRootType});
    ++pending;
  }
  return out;
}

Atom parse_atom(const SExpr& e) {
  expect_list(e, "an atom");
  const std::string& pred = expect_name(child(e, 0, "<predicate>"), "a predicate name");
  if (pred == "and" || pred == "not" || pred == "or" || pred == "forall" || pred == "exists" ||
      pred == "when" || pred == "imply") {
    fail(ParseErrorKind::kUnexpectedToken, "'" + pred + "' is not allowed here", e.items[0],
         {"<predicate>"});
  }
  Atom atom{pred, {}};
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& arg = e.items[i];
    if (arg.is_list) fail(ParseErrorKind::kUnexpectedToken, "nested list in atom", arg, {"<term>"});
    atom.args.push_back(arg.token);
  }
  return atom;
}

Literal parse_literal(const SExpr& e) {
  expect_list(e, "a literal");
  if (!e.items.empty() && e.items[0].is("not")) {
    expect_length(e, 2, "negation");
    return {parse_atom(child(e, 1, "(")), true};
  }
  return {parse_atom(e), false};
}

/// `()`, a single literal, or `(and lit...)`.
std::vector<Literal> parse_conjunction(const SExpr& e) {
  expect_list(e, "a condition");
  std::vector<Literal> out;
  if (e.items.empty()) return out;
  if (e.items[0].is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) out.push_back(parse_literal(e.items[i]));
    return out;
  }
  if (e.items[0].is_token() &&
      (e.items[0].is("or") || e.items[0].is("forall") || e.items[0].is("exists") ||
       e.items[0].is("imply") || e.items[0].is("when"))) {
    fail(ParseErrorKind::kUnexpectedToken, "'" + e.items[0].token + "' is outside the STRIPS subset",
         e.items[0], {"and", "not", "<predicate>"});
  }
  out.push_back(parse_literal(e));
  return out;
}

using Resolver = std::function<std::optional<std::string>(const std::string&)>;

/// Checks predicate existence, arity and argument types. `unknown_kind`
/// selects the error for unresolvable arguments.
void check_atom(const Domain& domain, const Atom& atom, const Resolver& resolve,
                ParseErrorKind unknown_kind, int line, int column) {
  const PredicateSchema* schema = domain.find_predicate(atom.predicate);
  if (schema == nullptr) {
    throw ParseError(ParseErrorKind::kUndeclaredPredicate, "'" + atom.predicate + "'", line, column);
  }
  if (schema->params.size() != atom.args.size()) {
    throw ParseError(ParseErrorKind::kArityMismatch,
                     "'" + atom.predicate + "' takes " + std::to_string(schema->params.size()) +
                         " argument(s), got " + std::to_string(atom.args.size()),
                     line, column);
  }
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    const auto type = resolve(atom.args[i]);
    if (!type) {
      throw ParseError(unknown_kind, "'" + atom.args[i] + "' in " + atom.to_string(), line, column);
    }
    if (!domain.is_subtype(*type, schema->params[i].type)) {
      throw ParseError(ParseErrorKind::kTypeMismatch,
                       "'" + atom.args[i] + "' of type " + *type + " where " +
                           schema->params[i].type + " is required in " + atom.to_string(),
                       line, column);
    }
  }
}

void check_declared_type(const Domain& domain, const std::string& type, const SExpr& at) {
  if (!domain.has_type(type)) fail(ParseErrorKind::kUndeclaredType, "'" + type + "'", at);
}

void parse_types_section(Domain& domain, const SExpr& section) {
  auto decls = parse_typed_list(section, 1, false);
  for (const auto& d : decls) {
    if (d.name == kRootType) continue;
    if (domain.has_type(d.name)) fail(ParseErrorKind::kDuplicate, "type '" + d.name + "'", section);
    domain.types.push_back({d.name, d.type});
  }
  for (const auto& t : domain.types) {
    if (!domain.has_type(t.parent)) {
      fail(ParseErrorKind::kUndeclaredType, "'" + t.parent + "' (parent of '" + t.name + "')",
           section);
    }
  }
  for (const auto& t : domain.types) {
    std::string current = t.parent;
    for (std::size_t hops = 0; current != kRootType; ++hops) {
      if (current == t.name || hops > domain.types.size()) {
        fail(ParseErrorKind::kTypeMismatch, "cyclic type hierarchy at '" + t.name + "'", section);
      }
      current = std::find_if(domain.types.begin(), domain.types.end(),
                             [&](const TypeDecl& d) { return d.name == current; })
                    ->parent;
    }
  }
}

void parse_predicates_section(Domain& domain, const SExpr& section) {
  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const SExpr& p = expect_list(section.items[i], "a predicate declaration");
    PredicateSchema schema;
    schema.name = expect_name(child(p, 0, "<predicate>"), "a predicate name");
    schema.params = parse_typed_list(p, 1, true);
    if (domain.find_predicate(schema.name)) {
      fail(ParseErrorKind::kDuplicate, "predicate '" + schema.name + "'", p);
    }
    for (const auto& param : schema.params) check_declared_type(domain, param.type, p);
    domain.predicates.push_back(std::move(schema));
  }
}

ActionSchema parse_action(const Domain& domain, const SExpr& section) {
  ActionSchema action;
  action.name = expect_name(child(section, 1, "<action name>"), "an action name");
  if (domain.find_action(action.name)) {
    fail(ParseErrorKind::kDuplicate, "action '" + action.name + "'", section.items[1]);
  }
  const SExpr* precondition = nullptr;
  const SExpr* effect = nullptr;
  bool seen_parameters = false;
  for (std::size_t i = 2; i < section.items.size(); i += 2) {
    const SExpr& key = section.items[i];
    const std::vector<std::string> keys = {":parameters", ":precondition", ":effect"};
    if (!key.is_keyword()) fail(ParseErrorKind::kUnexpectedToken, "action body", key, keys);
    const SExpr& value = child(section, i + 1, "(");
    if (key.is(":parameters")) {
      expect_list(value, "a parameter list");
      action.params = parse_typed_list(value, 0, true);
      seen_parameters = true;
    } else if (key.is(":precondition")) {
      precondition = &value;
    } else if (key.is(":effect")) {
      effect = &value;
    } else {
      fail(ParseErrorKind::kUnexpectedToken, "'" + key.token + "'", key, keys);
    }
  }
  (void)seen_parameters;
  std::set<std::string> seen;
  for (const auto& param : action.params) {
    check_declared_type(domain, param.type, section);
    if (!seen.insert(param.name).second) {
      fail(ParseErrorKind::kDuplicate, "parameter '" + param.name + "'", section);
    }
  }
  Resolver resolve = [&](const std::string& arg) -> std::optional<std::string> {
    for (const auto& p : action.params) {
      if (p.name == arg) return p.type;
    }
    return std::nullopt;
  };
  if (precondition) {
    action.precondition = parse_conjunction(*precondition);
    for (const auto& lit : action.precondition) {
      check_atom(domain, lit.atom, resolve, ParseErrorKind::kUnboundVariable, precondition->line,
                 precondition->column);
    }
  }
  if (effect) {
    for (const auto& lit : parse_conjunction(*effect)) {
      check_atom(domain, lit.atom, resolve, ParseErrorKind::kUnboundVariable, effect->line,
                 effect->column);
      (lit.negated ? action.del_effects : action.add_effects).push_back(lit.atom);
    }
    for (const auto& a : action.add_effects) {
      if (std::find(action.del_effects.begin(), action.del_effects.end(), a) !=
          action.del_effects.end()) {
        fail(ParseErrorKind::kInconsistentEffects, a.to_string() + " is both added and deleted",
             *effect);
      }
    }
  }
  return action;
}

std::vector<TypedName> parse_objects(const Domain& domain, const SExpr& section,
                                     const std::vector<TypedName>& already) {
  auto objects = parse_typed_list(section, 1, false);
  std::set<std::string> names;
  for (const auto& o : already) names.insert(o.name);
  for (const auto& o : objects) {
    check_declared_type(domain, o.type, section);
    if (!names.insert(o.name).second) {
      fail(ParseErrorKind::kDuplicate, "object '" + o.name + "'", section);
    }
  }
  return objects;
}

Resolver object_resolver(const std::vector<const std::vector<TypedName>*>& lists) {
  return [lists](const std::string& name) -> std::optional<std::string> {
    for (const auto* list : lists) {
      for (const auto& o : *list) {
        if (o.name == name) return o.type;
      }
    }
    return std::nullopt;
  };
}

std::vector<Atom> parse_init(const Domain& domain, const SExpr& section, const Resolver& resolve) {
  std::vector<Atom> init;
  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const SExpr& e = section.items[i];
    if (e.is_list && !e.items.empty() && e.items[0].is("not")) {
      fail(ParseErrorKind::kUnexpectedToken, "negative initial fact (closed world)", e,
           {"<atom>"});
    }
    Atom atom = parse_atom(e);
    check_atom(domain, atom, resolve, ParseErrorKind::kUnknownObject, e.line, e.column);
    init.push_back(std::move(atom));
  }
  return init;
}

std::vector<Literal> parse_checked_goal(const Domain& domain, const SExpr& expr,
                                        const Resolver& resolve) {
  auto goal = parse_conjunction(expr);
  for (const auto& lit : goal) {
    check_atom(domain, lit.atom, resolve, ParseErrorKind::kUnknownObject, expr.line, expr.column);
  }
  return goal;
}

const SExpr& single_top_level(const std::vector<SExpr>& top, std::string_view what) {
  if (top.empty()) {
    throw ParseError(ParseErrorKind::kUnexpectedToken, "empty input", 1, 1, {"(define"});
  }
  if (top.size() > 1) {
    fail(ParseErrorKind::kUnexpectedToken, "trailing input after " + std::string(what), top[1]);
  }
  const SExpr& root = expect_list(top[0], "(define");
  if (root.items.empty() || !root.items[0].is("define")) {
    fail(ParseErrorKind::kUnexpectedToken, "missing 'define'",
         root.items.empty() ? root : root.items[0], {"define"});
  }
  return root;
}

}  // namespace

Domain parse_domain(std::string_view text) {
  const auto top = detail::read_sexprs(text);
  const SExpr& root = single_top_level(top, "domain");
  const SExpr& header = expect_list(child(root, 1, "(domain"), "(domain <name>)");
  if (header.items.empty() || !header.items[0].is("domain")) {
    fail(ParseErrorKind::kUnexpectedToken, "domain header", header, {"domain"});
  }
  Domain domain;
  domain.name = expect_name(child(header, 1, "<name>"), "a domain name");
  expect_length(header, 2, "domain header");

  const std::vector<std::string> sections = {":requirements", ":types", ":predicates", ":action"};
  bool seen_types = false;
  bool seen_predicates = false;
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& section = expect_list(root.items[i], "a domain section");
    const SExpr& key = child(section, 0, ":requirements");
    if (key.is(":requirements")) {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const SExpr& req = section.items[k];
        if (req.is_list || !kSupportedRequirements.count(req.token)) {
          fail(ParseErrorKind::kUnknownRequirement, req.is_list ? "list" : "'" + req.token + "'",
               req, {":strips", ":typing", ":negative-preconditions"});
        }
        domain.requirements.push_back(req.token);
      }
    } else if (key.is(":types")) {
      if (seen_types || seen_predicates || !domain.actions.empty()) {
        fail(ParseErrorKind::kUnexpectedToken, "misplaced :types section", key);
      }
      seen_types = true;
      parse_types_section(domain, section);
    } else if (key.is(":predicates")) {
      if (seen_predicates || !domain.actions.empty()) {
        fail(ParseErrorKind::kUnexpectedToken, "misplaced :predicates section", key);
      }
      seen_predicates = true;
      parse_predicates_section(domain, section);
    } else if (key.is(":action")) {
      domain.actions.push_back(parse_action(domain, section));
    } else {
      fail(ParseErrorKind::kUnexpectedToken,
           key.is_list ? std::string("list") : "'" + key.token + "'", key, sections);
    }
  }
  return domain;
}

Problem parse_problem(std::string_view text, const Domain& domain) {
  const auto top = detail::read_sexprs(text);
  const SExpr& root = single_top_level(top, "problem");
  const SExpr& header = expect_list(child(root, 1, "(problem"), "(problem <name>)");
  if (header.items.empty() || !header.items[0].is("problem")) {
    fail(ParseErrorKind::kUnexpectedToken, "problem header", header, {"problem"});
  }
  Problem problem;
  problem.name = expect_name(child(header, 1, "<name>"), "a problem name");
  expect_length(header, 2, "problem header");

  const SExpr* goal_expr = nullptr;
  const SExpr* init_expr = nullptr;
  const std::vector<std::string> sections = {":domain", ":requirements", ":objects", ":init",
                                             ":goal"};
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& section = expect_list(root.items[i], "a problem section");
    const SExpr& key = child(section, 0, ":objects");
    if (key.is(":domain")) {
      problem.domain_name = expect_name(child(section, 1, "<domain name>"), "a domain name");
      if (problem.domain_name != domain.name) {
        fail(ParseErrorKind::kUnexpectedToken, "problem is for domain '" + problem.domain_name + "'",
             section.items[1], {domain.name});
      }
    } else if (key.is(":requirements")) {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const SExpr& req = section.items[k];
        if (req.is_list || !kSupportedRequirements.count(req.token)) {
          fail(ParseErrorKind::kUnknownRequirement, req.is_list ? "list" : "'" + req.token + "'",
               req, {":strips", ":typing", ":negative-preconditions"});
        }
      }
    } else if (key.is(":objects")) {
      auto objects = parse_objects(domain, section, problem.objects);
      problem.objects.insert(problem.objects.end(), objects.begin(), objects.end());
    } else if (key.is(":init")) {
      if (init_expr) fail(ParseErrorKind::kDuplicate, ":init section", key);
      init_expr = &section;
    } else if (key.is(":goal")) {
      if (goal_expr) fail(ParseErrorKind::kDuplicate, ":goal section", key);
      goal_expr = &child(section, 1, "(");
      expect_length(section, 2, ":goal section");
    } else {
      fail(ParseErrorKind::kUnexpectedToken,
           key.is_list ? std::string("list") : "'" + key.token + "'", key, sections);
    }
  }
  const Resolver resolve = object_resolver({&problem.objects});
  if (init_expr) problem.init = parse_init(domain, *init_expr, resolve);
  if (goal_expr) problem.goal = parse_checked_goal(domain, *goal_expr, resolve);
  return problem;
}

ProblemSections parse_problem_sections(std::string_view text, const Domain& domain,
                                       const std::vector<TypedName>& known_objects) {
  const auto top = detail::read_sexprs(text);
  ProblemSections out;
  const SExpr* init_expr = nullptr;
  const SExpr* goal_expr = nullptr;
  bool seen_objects = false;
  const std::vector<std::string> sections = {":objects", ":init", ":goal"};
  for (const SExpr& e : top) {
    const SExpr& section = expect_list(e, "a problem section");
    const SExpr& key = child(section, 0, ":goal");
    if (key.is(":objects")) {
      if (seen_objects) fail(ParseErrorKind::kDuplicate, ":objects section", key);
      seen_objects = true;
      out.objects = parse_objects(domain, section, known_objects);
    } else if (key.is(":init")) {
      if (init_expr) fail(ParseErrorKind::kDuplicate, ":init section", key);
      init_expr = &section;
    } else if (key.is(":goal")) {
      if (goal_expr) fail(ParseErrorKind::kDuplicate, ":goal section", key);
      goal_expr = &child(section, 1, "(");
      expect_length(section, 2, ":goal section");
    } else {
      fail(ParseErrorKind::kUnexpectedToken,
           key.is_list ? std::string("list") : "'" + key.token + "'", key, sections);
    }
  }
  if (!goal_expr) {
    throw ParseError(ParseErrorKind::kUnexpectedToken, "missing :goal section", 0, 0, {":goal"});
  }
  const Resolver resolve = object_resolver({&out.objects, &known_objects});
  if (init_expr) out.init = parse_init(domain, *init_expr, resolve);
  out.goal = parse_checked_goal(domain, *goal_expr, resolve);
  return out;
}

std::vector<Literal> parse_goal(std::string_view text, const Domain& domain,
                                const std::vector<TypedName>& objects) {
  const auto top = detail::read_sexprs(text);
  if (top.size() != 1) {
    throw ParseError(ParseErrorKind::kUnexpectedToken, "expected exactly one goal expression", 1, 1,
                     {"("});
  }
  return parse_checked_goal(domain, top[0], object_resolver({&objects}));
}

std::vector<PlanStep> parse_plan(std::string_view text) {
  std::vector<PlanStep> steps;
  for (const SExpr& e : detail::read_sexprs(text)) {
    expect_list(e, "a plan step");
    PlanStep step;
    step.action = expect_name(child(e, 0, "<action>"), "an action name");
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      step.args.push_back(expect_name(e.items[i], "an object name"));
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

void check_problem(const Domain& domain, const Problem& problem) {
  std::set<std::string> names;
  for (const auto& o : problem.objects) {
    if (!domain.has_type(o.type)) throw ParseError(ParseErrorKind::kUndeclaredType, "'" + o.type + "'");
    if (!names.insert(o.name).second) {
      throw ParseError(ParseErrorKind::kDuplicate, "object '" + o.name + "'");
    }
  }
  const Resolver resolve = object_resolver({&problem.objects});
  for (const auto& atom : problem.init) {
    check_atom(domain, atom, resolve, ParseErrorKind::kUnknownObject, 0, 0);
  }
  for (const auto& lit : problem.goal) {
    check_atom(domain, lit.atom, resolve, ParseErrorKind::kUnknownObject, 0, 0);
  }
}

}  // namespace lam::pddl
