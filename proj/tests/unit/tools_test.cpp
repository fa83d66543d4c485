#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "lam/pddl/grounding.hpp"
#include "lam/pddl/validate.hpp"
#include "lam/planner/search.hpp"
#include "lam/tools/mapping.hpp"
#include "lam/tools/registry.hpp"
#include "lam/world/abstraction.hpp"
#include "lam/world/motion.hpp"
#include "lam/world/scene_io.hpp"

using namespace lam;
using namespace lam::tools;
using world::WorldState;

namespace {

ToolCall obj_call(const std::string& tool, const std::string& arg, const std::string& value) {
  return ToolCall(tool, {{arg, value}});
}

WorldState scene(int n) { return world::load_scene(testing::scene_path(n)).world; }

}  // namespace

TEST_CASE("registry") {
  CHECK(registry().size() == 9);
  const ToolSpec* pick = find_tool("pick");
  REQUIRE(pick != nullptr);
  REQUIRE(pick->args.size() == 1);
  CHECK(pick->args[0].kind == ArgKind::kObjectRef);
  CHECK(find_tool("teleport") == nullptr);
  std::set<std::string> names;
  for (const auto& t : registry()) names.insert(t.name);
  CHECK(names.size() == registry().size());
  CHECK(names == std::set<std::string>{"detect", "pick", "place_on", "place_in", "move_to", "open_gripper",
                                       "close_gripper", "home", "wait"});
  const auto j = registry_json(ToolDurations::defaults());
  CHECK(j.size() == 9);
  CHECK(j[1]["name"] == "pick");
  CHECK(j[1]["ticks"] == 30);
  CHECK(ToolDurations::defaults().ticks_for("home") == 20);
  CHECK_THROWS(ToolDurations::from_json({{"teleport", 3}}));
  CHECK_THROWS(ToolDurations::from_json({{"pick", -1}}));
  CHECK(ToolDurations::from_json({{"pick", 7}}).ticks_for("pick") == 7);
}

TEST_CASE("call status transitions") {
  ToolCall c("home");
  CHECK_THROWS_AS(c.succeed(), IllegalTransition);
  c.start();
  CHECK_THROWS_AS(c.start(), IllegalTransition);
  c.preempt();
  CHECK_THROWS_AS(c.succeed(), IllegalTransition);
  CHECK(c.fresh().status == CallStatus::kPending);
}

TEST_CASE("call json round trip") {
  ToolCall c("move_to", {{"target", Eigen::Vector3d(0.1, 0.2, 0.3)}});
  c.rationale = "look closer";
  const ToolCall back = call_from_json(to_json(c));
  CHECK(back.same_invocation(c));
  CHECK(back.rationale == "look closer");
  CHECK(obj_call("pick", "object", "red_cube").to_string() == "pick(red_cube)");
  CHECK_THROWS_AS(call_from_json({{"args", nlohmann::json::object()}}), std::invalid_argument);
  CHECK_THROWS_AS(call_from_json({{"tool", "pick"}, {"args", {{"object", true}}}}), std::invalid_argument);
}

TEST_CASE("validate_call") {
  WorldState w = scene(1);
  const auto code = [](const CallVerdict& v) { return v.rejection ? v.rejection->code : RejectionCode::kUnknownTool; };

  SUBCASE("pick with the gripper occupied") {
    apply_effect(w, obj_call("pick", "object", "yellow_block"));
    const CallVerdict v = validate_call(obj_call("pick", "object", "red_cube"), w);
    REQUIRE_FALSE(v.ok());
    CHECK(code(v) == RejectionCode::kGripperOccupied);
    CHECK(code(validate_call(ToolCall("open_gripper"), w)) == RejectionCode::kOpenWhileHolding);
    CHECK(code(validate_call(obj_call("place_on", "target", "yellow_block"), w)) == RejectionCode::kSelfTarget);
    CHECK(code(validate_call(obj_call("place_on", "target", "bin"), w)) == RejectionCode::kIsContainer);
    CHECK(code(validate_call(obj_call("place_on", "target", "blue_cube"), w)) == RejectionCode::kNotClear);
    CHECK(validate_call(obj_call("place_on", "target", "red_cube"), w).ok());
    CHECK(validate_call(obj_call("place_on", "target", "table"), w).ok());
    CHECK(validate_call(obj_call("place_in", "container", "bin"), w).ok());
    CHECK(code(validate_call(obj_call("place_in", "container", "red_cube"), w)) == RejectionCode::kNotContainer);
  }
  SUBCASE("precondition-free tools") {
    CHECK(validate_call(ToolCall("home"), w).ok());
    CHECK(validate_call(ToolCall("close_gripper"), w).ok());
    apply_effect(w, obj_call("pick", "object", "red_cube"));
    CHECK(validate_call(ToolCall("home"), w).ok());
  }
  SUBCASE("unknown things") {
    CHECK(code(validate_call(obj_call("pick", "object", "ghost"), w)) == RejectionCode::kUnknownObject);
    CHECK(code(validate_call(ToolCall("teleport"), w)) == RejectionCode::kUnknownTool);
    CHECK(code(validate_call(obj_call("move_to", "target", "moon"), w)) == RejectionCode::kUnknownLocation);
    CHECK(validate_call(obj_call("move_to", "target", "scanning-position"), w).ok());
  }
  SUBCASE("schema") {
    CHECK(code(validate_call(ToolCall("pick"), w)) == RejectionCode::kBadArguments);
    CHECK(code(validate_call(ToolCall("pick", {{"object", 3.0}}), w)) == RejectionCode::kBadArguments);
    CHECK(code(validate_call(ToolCall("home", {{"speed", 1.0}}), w)) == RejectionCode::kBadArguments);
    CHECK(code(validate_call(ToolCall("wait", {{"duration", -5.0}}), w)) == RejectionCode::kBadArguments);
    CHECK(code(validate_call(ToolCall("wait", {{"duration", std::string("long")}}), w)) == RejectionCode::kBadArguments);
  }
  SUBCASE("world preconditions") {
    CHECK(code(validate_call(obj_call("pick", "object", "blue_cube"), w)) == RejectionCode::kNotClear);
    CHECK(code(validate_call(obj_call("pick", "object", "bin"), w)) == RejectionCode::kIsContainer);
    CHECK(code(validate_call(obj_call("place_on", "target", "table"), w)) == RejectionCode::kNotHolding);
    apply_effect(w, obj_call("pick", "object", "green_cylinder"));
    apply_effect(w, obj_call("place_in", "container", "bin"));
    CHECK(code(validate_call(obj_call("pick", "object", "green_cylinder"), w)) == RejectionCode::kInsideContainer);
  }
  SUBCASE("validation never mutates the world") {
    std::mt19937_64 rng(5);
    std::vector<std::string> names = {"red_cube", "blue_cube", "bin", "ghost", "table", "home"};
    for (int i = 0; i < 500; ++i) {
      const auto& spec = registry()[rng() % registry().size()];
      ToolCall c(spec.name);
      for (const auto& a : spec.args) c.args[a.name] = names[rng() % names.size()];
      const auto before = w.content_hash();
      (void)validate_call(c, w);
      CHECK(w.content_hash() == before);
      if (validate_call(c, w).ok() && rng() % 2) apply_effect(w, c);
    }
  }
}

TEST_CASE("map_plan_to_calls") {
  const WorldState w = scene(5);
  SUBCASE("pick-up then stack becomes three calls") {
    pddl::Plan plan{{{"pick-up", {"red_cube"}}, {"stack", {"red_cube", "blue_cube"}}}};
    const auto calls = map_plan_to_calls(plan, w);
    REQUIRE(calls.size() == 3);
    CHECK(calls[0].to_string() == "detect(red_cube)");
    CHECK(calls[1].to_string() == "pick(red_cube)");
    CHECK(calls[2].to_string() == "place_on(blue_cube)");
  }
  SUBCASE("put-down and place-in") {
    pddl::Plan plan{{{"pick-up", {"cup"}}, {"put-down", {"cup"}}, {"pick-up", {"cup"}}, {"place-in", {"cup", "bin"}}}};
    const auto calls = map_plan_to_calls(plan, w);
    REQUIRE(calls.size() == 6);
    CHECK(calls[2].to_string() == "place_on(table)");
    CHECK(calls[5].to_string() == "place_in(bin)");
  }
  SUBCASE("empty plan") { CHECK(map_plan_to_calls({}, w).empty()); }
  SUBCASE("unmapped schema") {
    pddl::Plan plan{{{"pick-up", {"cup"}}, {"juggle", {"cup"}}}};
    try {
      map_plan_to_calls(plan, w);
      FAIL("expected MappingError");
    } catch (const MappingError& e) {
      CHECK(e.step() == 1);
    }
  }
  SUBCASE("calls rejected under simulation") {
    pddl::Plan plan{{{"stack", {"cup", "red_cube"}}}};
    CHECK_THROWS_AS(map_plan_to_calls(plan, w), MappingError);
  }
}

TEST_CASE("executing mapped calls reproduces the planned final state") {
  const pddl::Domain domain = testing::tabletop_domain();
  const auto durations = ToolDurations::defaults();
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    WorldState w = seed % 3 == 0 ? scene(static_cast<int>(seed % 5) + 1) : world::random_scene(seed, 4).world;
    std::mt19937_64 rng(seed * 31 + 1);
    pddl::Problem p;
    p.name = "bisim";
    p.domain_name = "tabletop";
    p.objects = world::symbolic_objects(w);
    p.init = world::abstract_state(w);
    std::vector<std::string> items, containers;
    for (const auto& [name, o] : w.objects) (o.container ? containers : items).push_back(name);
    const std::string a = items[rng() % items.size()];
    const std::string b = items[rng() % items.size()];
    switch (rng() % 3) {
      case 0: p.goal = {{{"on-table", {a}}, false}}; break;
      case 1: p.goal = {{{"on", {a, b}}, false}}; break;
      default:
        p.goal = {{containers.empty() ? pddl::Atom{"holding", {a}} : pddl::Atom{"in", {a, containers[0]}}, false}};
    }
    const pddl::Grounding g = pddl::ground(domain, p);
    const planner::SearchResult r = planner::solve(g, {});
    if (!r.solved()) continue;
    ++solved;
    REQUIRE(pddl::validate_plan(g, r.plan).valid);
    const auto predicted = g.decode(pddl::simulate_plan(g, r.plan));
    for (ToolCall& c : map_plan_to_calls(r.plan, w)) {
      REQUIRE(validate_call(c, w).ok());
      world::MotionHandle h = world::apply_tool(w, c, durations);
      while (!h.advance(w)) {
      }
      REQUIRE(h.call().status == CallStatus::kSucceeded);
    }
    std::vector<pddl::Atom> expected = predicted;
    std::sort(expected.begin(), expected.end());
    CHECK(world::abstract_state(w) == expected);
    CHECK(world::satisfies(world::abstract_state(w), p.goal));
  }
  CHECK(solved > 40);
}
