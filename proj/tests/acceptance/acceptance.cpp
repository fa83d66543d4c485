// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every line passes. lam headers carry Eigen and must precede httplib.
#include "fixtures.hpp"
#include "instance_gen.hpp"
#include "lam/bench/latency.hpp"
#include "lam/bench/perception.hpp"
#include "lam/bench/trials.hpp"
#include "lam/gate/command_gate.hpp"
#include "lam/gateway/server.hpp"
#include "lam/pddl/printer.hpp"
#include "lam/pddl/validate.hpp"
#include "lam/planner/search.hpp"
#include "lam/world/abstraction.hpp"
#include "lam/world/scene_io.hpp"
#include "pddl_fuzz.hpp"
#include "strips_oracle.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "httplib.h"

using namespace lam;
using nlohmann::json;
using orchestrator::Mode;
using orchestrator::Phase;

namespace {

// Collects the reasons a criterion failed; empty means pass.
struct Verdict {
  std::vector<std::string> problems;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok && problems.size() < 5) problems.push_back(what);
  }
  bool passed() const { return problems.empty(); }
};

orchestrator::TranslatorResources resources() {
  return {translator::RuleSet::load(testing::data_path("translator_rules.txt")), testing::tabletop_domain(),
          translator::PromptTemplates::load(testing::data_path("prompts")), {}};
}

bench::BenchContext context() { return {resources(), {}}; }

bench::Suite suite() { return bench::load_suite(testing::data_path("tasks.yaml")); }

bool goal_holds(const std::vector<std::string>& goal, const world::WorldState& w) {
  std::string text = "(and";
  for (const auto& g : goal) text += " " + g;
  text += ")";
  const auto lits = pddl::parse_goal(text, testing::tabletop_domain(), world::symbolic_objects(w));
  return world::satisfies(world::abstract_state(w), lits);
}

std::unique_ptr<orchestrator::Session> session(Mode mode, const world::WorldState& w, const std::string& spec) {
  static const auto res = resources();
  orchestrator::SessionEnv env;
  env.translator = res.make(translator::TranslatorSpec::parse(spec));
  auto cell = std::make_shared<orchestrator::WorldCell>();
  cell->world = w;
  return std::make_unique<orchestrator::Session>("acceptance", mode, env, cell,
                                                 std::make_unique<orchestrator::VirtualClock>());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict task_suite() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = suite();
  const auto ctx = context();
  const auto records = bench::run_suite(s, {Mode::kDirect, Mode::kNeuroSymbolic}, {}, 5, 1, ctx);
  std::size_t ok = 0;
  for (const auto& r : records) {
    ok += r.success();
    v.require(r.success(), r.task + " (" + orchestrator::to_string(r.mode) + "): " + r.reason);
    v.require(r.approval_audit_ok, r.task + ": a call ran before approval");
  }
  v.require(records.size() == 130, fmt::format("expected 130 trials, ran {}", records.size()));

  // Second pass with a human-style approval: plans are checked independently
  // before approve() is called.
  const auto domain = testing::tabletop_domain();
  int approvals = 0;
  for (const auto& task : s.tasks) {
    const auto w = world::load_scene(task.scene).world;
    for (Mode mode : {Mode::kDirect, Mode::kNeuroSymbolic}) {
      auto sess = session(mode, w, "template");
      sess->transcript(task.sentence);
      const std::string where = task.id + " (" + orchestrator::to_string(mode) + ")";
      if (sess->phase() != Phase::kAwaitingApproval) {
        v.require(false, where + " never reached approval: " + sess->failure_reason());
        continue;
      }
      v.require(sess->check().valid, where + " plan failed its check");
      if (mode == Mode::kNeuroSymbolic) {
        const auto g = pddl::ground(domain, *sess->problem());
        v.require(pddl::validate_plan(g, *sess->plan()).valid, where + " plan does not validate");
        v.require(testing::oracle_validate(domain, *sess->problem(), sess->plan()->steps).valid,
                  where + " plan rejected by the reference interpreter");
      }
      v.require(sess->calls().empty() || sess->calls().front().status == tools::CallStatus::kPending,
                where + " dispatched before approval");
      sess->approve();
      ++approvals;
      sess->run();
      v.require(sess->phase() == Phase::kCompleted && goal_holds(task.goal, sess->world()),
                where + " did not reach its goal after approval");
    }
  }
  const double elapsed = seconds_since(t0);
  v.require(elapsed <= 60.0, fmt::format("took {:.1f} s, limit 60 s", elapsed));
  v.summary = fmt::format("{} tasks x 2 modes x 5 trials: {}/{} succeeded; {} explicit approvals after validation; {:.1f} s",
                          s.tasks.size(), ok, records.size(), approvals, elapsed);
  return v;
}

Verdict planner_oracle() {
  Verdict v;
  const auto d = testing::tabletop_domain();
  std::mt19937_64 rng(50);
  int solvable = 0, unsolvable = 0;
  for (int i = 0; i < 50; ++i) {
    const auto p = testing::random_tabletop_problem(rng, i);
    const std::string id = fmt::format("instance {}", i);
    v.require(p.objects.size() <= 5, id + " has more than 5 objects");
    const auto g = pddl::ground(d, p);
    const auto oracle = testing::oracle_bfs(d, p);
    const auto bfs = planner::solve(g, {.strategy = planner::Strategy::kBreadthFirst});
    const auto astar =
        planner::solve(g, {.strategy = planner::Strategy::kAStar, .heuristic = planner::HeuristicKind::kMax});
    const auto gbfs = planner::solve(
        g, {.strategy = planner::Strategy::kGreedyBestFirst, .heuristic = planner::HeuristicKind::kAdditive});
    if (oracle) {
      ++solvable;
      v.require(bfs.solved() && bfs.plan.size() == *oracle, id + ": breadth-first length differs from the oracle");
      v.require(astar.solved() && astar.plan.size() == *oracle, id + ": a-star length differs from the oracle");
      v.require(gbfs.solved() && testing::oracle_validate(d, p, gbfs.plan.steps).valid,
                id + ": greedy plan missing or invalid");
    } else {
      ++unsolvable;
      for (const auto* r : {&bfs, &astar, &gbfs}) {
        v.require(r->outcome == planner::Outcome::kUnsolvable, id + ": oracle says unsolvable, solver disagrees");
      }
    }
  }
  v.summary = fmt::format("50 instances ({} solvable, {} unsolvable): lengths and verdicts match the oracle", solvable,
                          unsolvable);
  return v;
}

Verdict safety_trap() {
  Verdict v;
  const auto s = suite();
  const auto ctx = context();
  std::size_t total = 0, mutations = 0;
  std::vector<std::string> rates;
  for (double rate : {0.2, 0.5, 1.0}) {
    auto spec = translator::TranslatorSpec::parse(fmt::format("fault:{}:17", rate));
    const auto records = bench::run_suite(s, {Mode::kDirect, Mode::kNeuroSymbolic}, spec, 10, 3, ctx);
    std::size_t failed = 0;
    for (const auto& r : records) {
      if (r.fault_injected && r.world_mutated) ++mutations;
      if (r.success()) continue;
      ++failed;
      v.require(r.outcome == bench::TrialOutcome::kTranslationFail, r.task + ": failure outside translation: " + r.reason);
    }
    const auto bounds = bench::binomial_bounds(records.size(), rate);
    v.require(failed >= bounds.lo && failed <= bounds.hi,
              fmt::format("rate {}: {} failures outside [{:.1f}, {:.1f}]", rate, failed, bounds.lo, bounds.hi));
    rates.push_back(fmt::format("{:.1f}: {}/{} failed, bounds [{:.1f}, {:.1f}]", rate, failed, records.size(),
                                bounds.lo, bounds.hi));
    total += records.size();
  }
  v.require(total >= 600, fmt::format("only {} trials", total));
  v.require(mutations == 0, fmt::format("{} world mutations after injected faults", mutations));
  std::string joined;
  for (const auto& r : rates) joined += (joined.empty() ? "" : "; ") + r;
  v.summary = fmt::format("{} trials, {} mutations from malformed output; rate {}", total, mutations, joined);
  return v;
}

Verdict stop_latency() {
  Verdict v;
  bench::LatencyConfig cfg;
  cfg.trials = 100;
  cfg.tick_ms = 50.0;
  cfg.seed = 2024;
  cfg.realtime = true;
  cfg.scene = testing::scene_path(1);
  cfg.instruction = "put the green cylinder in the bin, execute";
  const auto rep = bench::run_stop_latency(cfg, context());
  v.require(rep.samples_ms.size() == 100, fmt::format("{} samples", rep.samples_ms.size()));
  double worst = 0.0;
  for (double s : rep.samples_ms) worst = std::max(worst, s);
  v.require(rep.over_bound == 0 && worst <= 100.0, fmt::format("worst sample {:.1f} ms exceeds 100 ms", worst));
  v.summary = fmt::format("{}; max {:.1f} ms", rep.describe(), worst);
  return v;
}

Verdict perception() {
  Verdict v;
  std::vector<world::Scene> scenes;
  for (int i = 1; i <= 5; ++i) scenes.push_back(world::load_scene(testing::scene_path(i)));
  const auto exact = bench::run_perception_eval(scenes, bench::PerceptionConfig{});
  std::size_t objects = 0;
  for (const auto& sc : scenes) objects += sc.world.objects.size();
  v.require(objects == 25, fmt::format("{} objects, expected 25", objects));
  v.require(exact.accuracy == 1.0, fmt::format("zero-noise accuracy {}", exact.accuracy));
  v.require(exact.rmse < 1e-9, fmt::format("zero-noise RMSE {}", exact.rmse));

  bench::PerceptionConfig noisy;
  noisy.sigma_px = 1.0;
  noisy.sigma_depth = 0.005;
  const auto m = bench::run_perception_eval(scenes, noisy);
  v.require(std::isfinite(m.rmse) && m.rmse > 0.0, "noisy RMSE not finite and positive");
  v.require(m.rmse_ci.lo <= m.rmse && m.rmse <= m.rmse_ci.hi, "bootstrap interval excludes the estimate");

  const auto grid = bench::run_noise_grid(scenes, {0.0, 0.5, 1.0, 2.0, 4.0}, 0.005, bench::PerceptionConfig{});
  std::string curve;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) v.require(grid[i].rmse >= grid[i - 1].rmse, fmt::format("RMSE drops at sigma_px {}", grid[i].sigma_px));
    curve += fmt::format("{}{:.4f}", i ? " " : "", grid[i].rmse);
  }
  v.summary = fmt::format("zero noise: accuracy {:.3f}, RMSE {:.1e} m; sigma 1 px / 5 mm: accuracy {:.3f}, RMSE {:.4f} m "
                          "[{:.4f}, {:.4f}]; grid RMSE {}",
                          exact.accuracy, exact.rmse, m.accuracy, m.rmse, m.rmse_ci.lo, m.rmse_ci.hi, curve);
  return v;
}

struct Http {
  httplib::Client client;
  explicit Http(int port) : client("127.0.0.1", port) { client.set_read_timeout(std::chrono::seconds(10)); }
  json post(const std::string& path, const json& body, int* status = nullptr) {
    auto r = client.Post(path, body.dump(), "application/json");
    if (!r) throw std::runtime_error("no response from " + path);
    if (status) *status = r->status;
    return json::parse(r->body);
  }
  json get(const std::string& path) {
    auto r = client.Get(path);
    if (!r) throw std::runtime_error("no response from " + path);
    return json::parse(r->body);
  }
};

Verdict plan_revision() {
  Verdict v;
  auto cfg = gateway::GatewayConfig::from_json({{"port", 0}, {"tick_ms", 5.0}, {"data_dir", LAM_DATA_DIR}});
  gateway::Gateway gw(cfg);
  gw.start();
  Http http(gw.port());

  // Dependent pair: the put-down cannot precede the unstack.
  const std::string a = http.post("/sessions", {{"mode", "pddl"}})["id"];
  http.post("/sessions/" + a + "/transcript", {{"line", "Pick up the red cube and place it on the table, execute."}});
  const auto blocked = http.post("/sessions/" + a + "/revise", {{"op", "swap"}, {"i", 0}, {"j", 1}});
  v.require(blocked["check"]["valid"] == false && blocked["check"]["step"] == 0,
            "dependent swap not reported at step 0: " + blocked.dump());
  int status = 0;
  http.post("/sessions/" + a + "/approve", json::object(), &status);
  v.require(status == 409, fmt::format("approval of an invalid plan returned {}", status));

  // The demo: two independent pick-and-place units, reordered by voice.
  const std::string b = http.post("/sessions", {{"mode", "pddl"}})["id"];
  const std::vector<std::string> script = {
      "Put the green cylinder in the bin and then put the yellow block in the bin, execute.",
      "Swap the action order, execute.",
  };
  http.post("/sessions/" + b + "/transcript", {{"line", script[0]}});
  const std::string before = http.get("/sessions/" + b).value("plan", "");
  http.post("/sessions/" + b + "/transcript", {{"line", script[1]}});
  const auto record = http.get("/sessions/" + b);
  const std::string after = record.value("plan", "");
  v.require(record["phase"] == "awaiting-approval" && record["check"]["valid"] == true,
            "reordered plan not valid: " + record["check"].dump());
  v.require(before.find("green_cylinder") < before.find("yellow_block") &&
                after.find("yellow_block") < after.find("green_cylinder"),
            "order unchanged:\n" + before + "--\n" + after);
  http.post("/sessions/" + b + "/approve", json::object(), &status);
  v.require(status == 200, fmt::format("approval returned {}", status));
  std::string phase = "executing";
  for (int i = 0; i < 500 && phase == "executing"; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
    phase = http.get("/sessions/" + b)["phase"];
  }
  v.require(phase == "completed", "demo ended " + phase);
  const auto s = gw.orchestrator().find(b);
  v.require(s && goal_holds({"(in green_cylinder bin)", "(in yellow_block bin)"}, s->world()),
            "demo goal does not hold");
  gw.stop();
  std::string first_after = after.substr(0, after.find('\n'));
  v.summary = fmt::format("dependent swap blocked at step 0; \"{}\" reordered {} steps to start with {} and executed",
                          "Swap the action order", std::count(after.begin(), after.end(), '\n'), first_after);
  return v;
}

Verdict round_trip() {
  Verdict v;
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 1000; ++i) {
    const auto d = testing::random_domain(rng);
    const auto p = testing::random_problem(rng, d);
    const pddl::Plan plan{testing::random_plan_steps(rng)};
    try {
      v.require(pddl::parse_domain(pddl::print_domain(d)) == d, fmt::format("domain {} changed in round trip", i));
      v.require(pddl::parse_problem(pddl::print_problem(p), d) == p, fmt::format("problem {} changed", i));
      v.require(pddl::parse_plan(pddl::print_plan(plan)) == plan.steps, fmt::format("plan {} changed", i));
    } catch (const pddl::ParseError& e) {
      v.require(false, fmt::format("case {} does not reparse: {}", i, e.what()));
    }
  }

  // Same seeds, same bytes: plans and event logs without timestamps.
  const auto s = suite();
  int compared = 0;
  for (const auto& task : s.tasks) {
    const auto w = world::load_scene(task.scene).world;
    for (Mode mode : {Mode::kDirect, Mode::kNeuroSymbolic}) {
      for (const char* spec : {"template", "fault:0.5:9"}) {
        std::string logs[2], plans[2];
        for (int run = 0; run < 2; ++run) {
          auto sess = session(mode, w, spec);
          sess->transcript(task.sentence);
          if (sess->phase() == Phase::kAwaitingApproval) {
            sess->approve();
            sess->run();
          }
          logs[run] = sess->events().to_jsonl(false);
          plans[run] = sess->plan() ? pddl::print_plan(*sess->plan()) : sess->to_json()["calls"].dump();
        }
        v.require(logs[0] == logs[1], task.id + ": event logs differ between identical runs");
        v.require(plans[0] == plans[1], task.id + ": plans differ between identical runs");
        ++compared;
      }
    }
  }
  v.summary = fmt::format("1000 fuzzed domains, problems and plans reparse identically; {} repeated sessions "
                          "gave byte-identical plans and logs",
                          compared);
  return v;
}

Verdict command_gate() {
  Verdict v;
  std::istringstream script(testing::read_file(testing::data_path("transcripts/voice_script.txt")));
  gate::CommandGate g;
  std::string line, log;
  int lines = 0;
  while (std::getline(script, line)) {
    log += g.feed(line).to_string() + "\n";
    ++lines;
  }
  v.require(lines == 29, fmt::format("script has {} lines", lines));
  v.require(log == testing::read_file(std::string(LAM_GOLDEN_DIR) + "/gate_voice_script.log"), "log differs from golden");

  const std::vector<std::string> words = {"pick", "up", "the", "red", "STOP", "stop.", "Stop", "okay", "OKAY.",
                                          "execute", "nonstop", "unstoppable", "okayish", "move", ",", "home"};
  std::mt19937_64 rng(77);
  int stopped_lines = 0;
  for (int stream = 0; stream < 1000; ++stream) {
    gate::CommandGate fuzz(gate::GateConfig{stream % 2 == 0});
    for (int i = 0; i < 30; ++i) {
      std::string text;
      const int n = static_cast<int>(rng() % 6);
      for (int k = 0; k < n; ++k) text += (k ? " " : "") + words[rng() % words.size()];
      const bool was_stopped = fuzz.state().mode == gate::Mode::kStopped;
      const auto e = fuzz.feed(text);
      if (was_stopped) {
        ++stopped_lines;
        v.require(e.kind != gate::EventKind::kForward, "forward emitted in stopped mode for '" + text + "'");
      }
    }
  }
  v.summary = fmt::format("29-line script matches the golden log; 1000 fuzzed streams, {} lines fed while stopped, "
                          "no forwards",
                          stopped_lines);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"End-to-end task suite", task_suite},
      {"Planner oracle equivalence", planner_oracle},
      {"Safety trap", safety_trap},
      {"Stop latency", stop_latency},
      {"Perception metrics", perception},
      {"Plan revision", plan_revision},
      {"Round-trip and determinism", round_trip},
      {"Command gate", command_gate},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (v.passed() ? "PASS" : "FAIL") << "  " << name << ": " << v.summary << std::endl;
    for (const auto& p : v.problems) std::cout << "      " << p << std::endl;
    failed += !v.passed();
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
