#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "instance_gen.hpp"
#include "lam/pddl/grounding.hpp"
#include "lam/pddl/parser.hpp"
#include "lam/pddl/printer.hpp"
#include "lam/pddl/validate.hpp"
#include "pddl_fuzz.hpp"
#include "strips_oracle.hpp"

using namespace lam;
using namespace lam::pddl;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Domain tabletop() { return parse_domain(slurp(std::string(LAM_DATA_DIR) + "/tabletop.pddl")); }

/// Hand expansion of data/tabletop.pddl.
Domain tabletop_fixture() {
  Domain d;
  d.name = "tabletop";
  d.requirements = {":strips", ":typing", ":negative-preconditions"};
  d.types = {{"item", "object"}, {"container", "object"}, {"surface", "object"}};
  d.predicates = {
      {"on", {{"?x", "object"}, {"?y", "object"}}},
      {"on-table", {{"?x", "item"}}},
      {"clear", {{"?x", "item"}}},
      {"holding", {{"?x", "item"}}},
      {"gripper-empty", {}},
      {"in", {{"?x", "item"}, {"?c", "container"}}},
  };
  auto A = [](std::string p, std::vector<std::string> a) { return Atom{std::move(p), std::move(a)}; };
  auto L = [&](std::string p, std::vector<std::string> a) { return Literal{A(std::move(p), std::move(a)), false}; };
  d.actions = {
      {"pick-up",
       {{"?x", "item"}},
       {L("clear", {"?x"}), L("on-table", {"?x"}), L("gripper-empty", {})},
       {A("holding", {"?x"})},
       {A("on-table", {"?x"}), A("clear", {"?x"}), A("gripper-empty", {})}},
      {"put-down",
       {{"?x", "item"}},
       {L("holding", {"?x"})},
       {A("on-table", {"?x"}), A("clear", {"?x"}), A("gripper-empty", {})},
       {A("holding", {"?x"})}},
      {"stack",
       {{"?x", "item"}, {"?y", "item"}},
       {L("holding", {"?x"}), L("clear", {"?y"})},
       {A("on", {"?x", "?y"}), A("clear", {"?x"}), A("gripper-empty", {})},
       {A("holding", {"?x"}), A("clear", {"?y"})}},
      {"unstack",
       {{"?x", "item"}, {"?y", "item"}},
       {L("on", {"?x", "?y"}), L("clear", {"?x"}), L("gripper-empty", {})},
       {A("holding", {"?x"}), A("clear", {"?y"})},
       {A("on", {"?x", "?y"}), A("clear", {"?x"}), A("gripper-empty", {})}},
      {"place-in",
       {{"?x", "item"}, {"?c", "container"}},
       {L("holding", {"?x"})},
       {A("in", {"?x", "?c"}), A("gripper-empty", {})},
       {A("holding", {"?x"})}},
  };
  return d;
}

const char* kTwoBlocks = R"(
(define (problem two)
  (:domain tabletop)
  (:objects b1 b2 - item)
  (:init (on-table b1) (on-table b2) (clear b1) (clear b2) (gripper-empty))
  (:goal (on b1 b2)))
)";

ParseError parse_error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a ParseError");
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("bundled domain parses to the hand-expanded AST") {
  const Domain d = tabletop();
  CHECK(d == tabletop_fixture());
  std::vector<std::string> names;
  for (const auto& a : d.actions) names.push_back(a.name);
  CHECK(names == std::vector<std::string>{"pick-up", "put-down", "stack", "unstack", "place-in"});
}

TEST_CASE("minimal domain") {
  const Domain d = parse_domain("(define (domain d))");
  CHECK(d.name == "d");
  CHECK(d.types.empty());
  CHECK(d.predicates.empty());
  CHECK(d.actions.empty());
}

TEST_CASE("identifiers are case-insensitive and comments are skipped") {
  const Domain d = parse_domain("; header\n(DEFINE (Domain MyDom) ; trailing\n (:Predicates (P ?X)))");
  CHECK(d.name == "mydom");
  REQUIRE(d.predicates.size() == 1);
  CHECK(d.predicates[0].name == "p");
  CHECK(d.predicates[0].params[0].name == "?x");
}

TEST_CASE("domain parse errors") {
  SUBCASE("undeclared parameter type") {
    auto e = parse_error_of([] {
      parse_domain("(define (domain d) (:action a :parameters (?x - blob) :effect (and)))");
    });
    CHECK(e.kind() == ParseErrorKind::kUndeclaredType);
  }
  SUBCASE("lexical error carries position") {
    auto e = parse_error_of([] { parse_domain("(define\n  (domain d) {)"); });
    CHECK(e.kind() == ParseErrorKind::kLexical);
    CHECK(e.line() == 2);
    CHECK(e.column() == 14);
  }
  SUBCASE("missing close paren") {
    auto e = parse_error_of([] { parse_domain("(define (domain d)"); });
    CHECK(e.kind() == ParseErrorKind::kUnbalanced);
    CHECK(e.line() == 1);
    CHECK(e.column() == 1);
    CHECK(e.expected() == std::vector<std::string>{")"});
  }
  SUBCASE("stray close paren") {
    auto e = parse_error_of([] { parse_domain("(define (domain d)))"); });
    CHECK(e.kind() == ParseErrorKind::kUnbalanced);
    CHECK(e.column() == 20);
  }
  SUBCASE("requirement outside the subset") {
    auto e = parse_error_of([] { parse_domain("(define (domain d) (:requirements :strips :fluents))"); });
    CHECK(e.kind() == ParseErrorKind::kUnknownRequirement);
    CHECK(e.column() == 43);
    CHECK(e.expected().size() == 3);
  }
  SUBCASE("undeclared predicate") {
    auto e = parse_error_of([] {
      parse_domain("(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) :precondition (q ?x)))");
    });
    CHECK(e.kind() == ParseErrorKind::kUndeclaredPredicate);
  }
  SUBCASE("arity mismatch") {
    auto e = parse_error_of([] {
      parse_domain("(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x ?y) :effect (p ?x ?y)))");
    });
    CHECK(e.kind() == ParseErrorKind::kArityMismatch);
  }
  SUBCASE("effect variable not in parameter list") {
    auto e = parse_error_of([] {
      parse_domain("(define (domain d) (:predicates (p ?x)) (:action a :parameters () :effect (p ?z)))");
    });
    CHECK(e.kind() == ParseErrorKind::kUnboundVariable);
  }
  SUBCASE("add and delete the same atom") {
    auto e = parse_error_of([] {
      parse_domain("(define (domain d) (:predicates (p)) (:action a :parameters () :effect (and (p) (not (p)))))");
    });
    CHECK(e.kind() == ParseErrorKind::kInconsistentEffects);
  }
  SUBCASE("duplicate action") {
    auto e = parse_error_of([] {
      parse_domain("(define (domain d) (:action a :parameters ()) (:action a :parameters ()))");
    });
    CHECK(e.kind() == ParseErrorKind::kDuplicate);
  }
  SUBCASE("disjunction is outside the subset") {
    auto e = parse_error_of([] {
      parse_domain("(define (domain d) (:predicates (p) (q)) (:action a :parameters () :precondition (or (p) (q))))");
    });
    CHECK(e.kind() == ParseErrorKind::kUnexpectedToken);
  }
  SUBCASE("unknown section names the expected set") {
    auto e = parse_error_of([] { parse_domain("(define (domain d) (:functions))"); });
    CHECK(e.kind() == ParseErrorKind::kUnexpectedToken);
    CHECK(e.expected() ==
          std::vector<std::string>{":requirements", ":types", ":predicates", ":action"});
  }
}

TEST_CASE("problem parsing") {
  const Domain d = tabletop();
  SUBCASE("single goal atom") {
    const Problem p = parse_problem(R"(
      (define (problem p1) (:domain tabletop)
        (:objects red_cube blue_cube - item)
        (:init (on-table blue_cube) (on red_cube blue_cube) (clear red_cube) (gripper-empty))
        (:goal (on red_cube blue_cube))))",
                                    d);
    REQUIRE(p.goal.size() == 1);
    CHECK(p.goal[0] == Literal{{"on", {"red_cube", "blue_cube"}}, false});
    CHECK(p.init.size() == 4);
  }
  SUBCASE("goal naming an undeclared object") {
    auto e = parse_error_of([&] {
      parse_problem("(define (problem p) (:domain tabletop) (:objects a - item) (:goal (holding ghost)))", d);
    });
    CHECK(e.kind() == ParseErrorKind::kUnknownObject);
  }
  SUBCASE("empty init and goal") {
    const Problem p = parse_problem("(define (problem p) (:domain tabletop) (:objects) (:init) (:goal (and)))", d);
    CHECK(p.init.empty());
    CHECK(p.goal.empty());
  }
  SUBCASE("argument of the wrong type") {
    auto e = parse_error_of([&] {
      parse_problem("(define (problem p) (:domain tabletop) (:objects bin - container) (:init (clear bin)))", d);
    });
    CHECK(e.kind() == ParseErrorKind::kTypeMismatch);
  }
  SUBCASE("predicate arity mismatch") {
    auto e = parse_error_of([&] {
      parse_problem("(define (problem p) (:domain tabletop) (:objects a - item) (:goal (on a)))", d);
    });
    CHECK(e.kind() == ParseErrorKind::kArityMismatch);
  }
  SUBCASE("negative goal") {
    const Problem p = parse_problem(
        "(define (problem p) (:domain tabletop) (:objects a - item) (:goal (and (not (holding a)))))", d);
    REQUIRE(p.goal.size() == 1);
    CHECK(p.goal[0].negated);
  }
  SUBCASE("wrong domain") {
    auto e = parse_error_of([&] { parse_problem("(define (problem p) (:domain other))", d); });
    CHECK(e.expected() == std::vector<std::string>{"tabletop"});
  }
}

TEST_CASE("problem sections resolve against known objects") {
  const Domain d = tabletop();
  const std::vector<TypedName> known = {{"red_cube", "item"}, {"table", "surface"}};
  const auto s = parse_problem_sections("(:objects tray - container) (:goal (in red_cube tray))", d, known);
  CHECK(s.objects == std::vector<TypedName>{{"tray", "container"}});
  CHECK(s.goal.size() == 1);
  CHECK_THROWS_AS(parse_problem_sections("(:objects red_cube - item) (:goal (and))", d, known), ParseError);
  CHECK_THROWS_AS(parse_problem_sections("(:init (gripper-empty))", d, known), ParseError);
  CHECK_THROWS_AS(parse_problem_sections("(:goal (levitating red_cube))", d, known), ParseError);
}

TEST_CASE("grounding") {
  const Domain d = tabletop();
  SUBCASE("three blocks and the table: count matches the typed enumeration") {
    Problem p;
    p.objects = {{"b1", "item"}, {"b2", "item"}, {"b3", "item"}, {"table", "surface"}};
    const Grounding g = ground(d, p);
    // pick-up, put-down: 3 each; stack, unstack: 3*3 each; place-in: 3*0.
    const std::size_t items = 3, containers = 0;
    CHECK(g.actions.size() == items + items + items * items * 2 + items * containers);
    CHECK(g.actions.size() == lam::testing::oracle_instantiate(d, p).size());
    // on: 4*4, on-table/clear/holding: 3 each, gripper-empty: 1, in: 0.
    CHECK(g.atoms.size() == 16 + 3 * 3 + 1);
  }
  SUBCASE("zero objects") {
    const Grounding g = ground(d, Problem{});
    CHECK(g.actions.empty());
    CHECK(g.initial.count() == 0);
    CHECK(g.atoms.size() == 1);  // (gripper-empty)
  }
  SUBCASE("self-stack instances exist but are never applicable") {
    const Problem p = parse_problem(kTwoBlocks, d);
    const Grounding g = ground(d, p);
    REQUIRE(g.find_action("stack", {"b1", "b1"}));
    const auto& self = g.actions[*g.find_action("stack", {"b1", "b1"})];
    // holding(b1) and clear(b1) are mutually exclusive in every reachable state.
    CHECK(self.pre_pos.size() == 2);
  }
  SUBCASE("atom table is lexicographic") {
    const Problem p = parse_problem(kTwoBlocks, d);
    const Grounding g = ground(d, p);
    CHECK(std::is_sorted(g.atoms.begin(), g.atoms.end()));
    CHECK(g.atoms.front() == Atom{"clear", {"b1"}});
  }
  SUBCASE("grounding cap") {
    Problem p;
    for (int i = 0; i < 30; ++i) p.objects.push_back({"o" + std::to_string(i), "item"});
    CHECK_THROWS_AS(ground(d, p, {.max_actions = 100}), GroundingLimitExceeded);
    CHECK_NOTHROW(ground(d, p, {.max_actions = 10'000}));
  }
}

TEST_CASE("ground actions respect declared parameter types (exhaustive, up to 10 objects)") {
  const Domain d = tabletop();
  for (int items = 0; items <= 6; ++items) {
    for (int containers = 0; containers + items <= 9; ++containers) {
      Problem p;
      for (int i = 0; i < items; ++i) p.objects.push_back({"i" + std::to_string(i), "item"});
      for (int c = 0; c < containers; ++c) p.objects.push_back({"c" + std::to_string(c), "container"});
      p.objects.push_back({"table", "surface"});
      const Grounding g = ground(d, p);
      for (const auto& ga : g.actions) {
        const ActionSchema* schema = d.find_action(ga.schema);
        REQUIRE(schema);
        REQUIRE(ga.args.size() == schema->params.size());
        for (std::size_t k = 0; k < ga.args.size(); ++k) {
          CHECK(d.is_subtype(p.find_object(ga.args[k])->type, schema->params[k].type));
        }
      }
      CHECK(g.actions.size() == lam::testing::oracle_instantiate(d, p).size());
    }
  }
}

TEST_CASE("validate_plan") {
  const Domain d = tabletop();
  const Problem p = parse_problem(kTwoBlocks, d);
  const Grounding g = ground(d, p);
  SUBCASE("empty plan with goal already true") {
    Problem q = p;
    q.goal = {{{"on-table", {"b1"}}, false}};
    CHECK(validate_plan(ground(d, q), Plan{}).valid);
  }
  SUBCASE("pick-up then stack") {
    const Plan plan{{{"pick-up", {"b1"}, {}}, {"stack", {"b1", "b2"}, {}}}};
    CHECK(validate_plan(g, plan).valid);
  }
  SUBCASE("stack without pick-up") {
    const Plan plan{{{"stack", {"b1", "b2"}, {}}}};
    const auto v = validate_plan(g, plan);
    CHECK_FALSE(v.valid);
    CHECK(v.failure == PlanVerdict::Failure::kPrecondition);
    CHECK(v.step == 0);
    CHECK(v.atom == "(holding b1)");
  }
  SUBCASE("goal unmet after applicable steps") {
    const Plan plan{{{"pick-up", {"b1"}, {}}}};
    const auto v = validate_plan(g, plan);
    CHECK(v.failure == PlanVerdict::Failure::kGoal);
    CHECK(v.step == 1);
  }
  SUBCASE("unknown action") {
    const auto v = validate_plan(g, Plan{{{"teleport", {"b1"}, {}}}});
    CHECK(v.failure == PlanVerdict::Failure::kUnknownAction);
  }
}

TEST_CASE("print_plan") {
  Plan plan;
  CHECK(print_plan(plan) == "");
  plan.steps = {{"pick-up", {"b1"}, "note"}, {"stack", {"b1", "b2"}, {}}};
  CHECK(print_plan(plan) == "(pick-up b1)\n(stack b1 b2)\n");

  Plan fixture{{{"unstack", {"red_cube", "blue_cube"}, {}},
                {"put-down", {"red_cube"}, {}},
                {"pick-up", {"green_cylinder"}, {}},
                {"place-in", {"green_cylinder", "bin"}, {}}}};
  CHECK(print_plan(fixture) == slurp(std::string(LAM_GOLDEN_DIR) + "/fixture_plan.txt"));
  CHECK(parse_plan(print_plan(fixture)) == fixture.steps);
}

TEST_CASE("round trip: parse(print(x)) == x over fuzzed inputs") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 1000; ++i) {
    const Domain d = lam::testing::random_domain(rng);
    const std::string text = print_domain(d);
    Domain back;
    REQUIRE_NOTHROW(back = parse_domain(text));
    REQUIRE_MESSAGE(back == d, text);

    const Problem p = lam::testing::random_problem(rng, d);
    const std::string ptext = print_problem(p);
    Problem pback;
    REQUIRE_NOTHROW(pback = parse_problem(ptext, d));
    REQUIRE_MESSAGE(pback == p, ptext);

    Plan plan{lam::testing::random_plan_steps(rng)};
    REQUIRE(parse_plan(print_plan(plan)) == plan.steps);
  }
}

TEST_CASE("validate_plan agrees with the naive interpreter on fuzzed (state, plan) pairs") {
  const Domain d = tabletop();
  std::mt19937_64 rng(77);
  int valid_count = 0;
  for (int i = 0; i < 1000; ++i) {
    const Problem p = lam::testing::random_tabletop_problem(rng, i);
    const Grounding g = ground(d, p);
    // Mostly random walks over applicable actions, with an occasional random
    // (likely inapplicable) action spliced in.
    Plan plan;
    SymbolicState s = g.initial;
    const int len = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int k = 0; k < len && !g.actions.empty(); ++k) {
      std::vector<std::size_t> options;
      for (std::size_t a = 0; a < g.actions.size(); ++a) {
        if (g.actions[a].applicable(s)) options.push_back(a);
      }
      std::size_t chosen;
      if (options.empty() || std::bernoulli_distribution(0.1)(rng)) {
        chosen = std::uniform_int_distribution<std::size_t>(0, g.actions.size() - 1)(rng);
      } else {
        chosen = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      }
      plan.steps.push_back({g.actions[chosen].schema, g.actions[chosen].args, {}});
      s = g.actions[chosen].apply(s);
    }
    const auto ours = validate_plan(g, plan);
    const auto naive = lam::testing::oracle_validate(d, p, plan.steps);
    REQUIRE(ours.valid == naive.valid);
    if (!ours.valid) CHECK(ours.step == naive.step);
    valid_count += ours.valid ? 1 : 0;
  }
  CHECK(valid_count > 0);
}
