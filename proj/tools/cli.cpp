// Eigen-bearing headers first, CLI11 after.
#include "cli.hpp"

#include "lam/bench/latency.hpp"
#include "lam/bench/perception.hpp"
#include "lam/bench/reference.hpp"
#include "lam/bench/trials.hpp"
#include "lam/gateway/server.hpp"
#include "lam/pddl/grounding.hpp"
#include "lam/pddl/parser.hpp"
#include "lam/pddl/printer.hpp"
#include "lam/pddl/validate.hpp"
#include "lam/planner/search.hpp"
#include "lam/world/scene_io.hpp"

#include <fmt/format.h>
#include <signal.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

namespace lam::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Bad input that is the caller's fault rather than a planning failure.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << text;
}

std::vector<orchestrator::Mode> parse_modes(const std::string& list) {
  std::vector<orchestrator::Mode> modes;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      modes.push_back(orchestrator::mode_from_string(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (modes.empty()) throw UsageError("--modes needs at least one mode");
  return modes;
}

translator::TranslatorSpec parse_spec(const std::string& text) {
  try {
    return translator::TranslatorSpec::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

orchestrator::TranslatorResources resources(const std::string& data_dir) {
  try {
    return gateway::load_resources(data_dir, translator::LlmEndpoint::from_env({}));
  } catch (const gateway::ConfigError& e) {
    throw UsageError(e.what());
  }
}

world::Scene scene_or_usage(const std::string& path) {
  try {
    return world::load_scene(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

struct SolveArgs {
  std::string domain, problem, strategy = "gbfs", heuristic = "hadd";
  std::size_t max_expansions = 100'000;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  planner::SearchConfig cfg;
  try {
    cfg.strategy = planner::strategy_from_string(a.strategy);
    cfg.heuristic = planner::heuristic_from_string(a.heuristic);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.max_expansions = a.max_expansions;
  pddl::Domain domain;
  pddl::Problem problem;
  try {
    domain = pddl::parse_domain(slurp(a.domain));
    problem = pddl::parse_problem(slurp(a.problem), domain);
  } catch (const pddl::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  }
  pddl::Grounding g;
  try {
    g = pddl::ground(domain, problem);
  } catch (const pddl::GroundingLimitExceeded& e) {
    err << "resource-limit: " << e.what() << "\n";
    return 1;
  }
  const auto r = planner::solve(g, cfg);
  err << fmt::format("{}: {} expansions, {} generated\n", planner::to_string(r.outcome), r.stats.expansions,
                     r.stats.generated);
  if (!r.solved()) return 1;
  out << pddl::print_plan(r.plan);
  return 0;
}

struct PlanArgs {
  std::string mode, instruction, scene, translator = "template", out, data_dir;
  bool approve = false;
};

int cmd_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const auto spec = parse_spec(a.translator);
  const auto scene = scene_or_usage(a.scene);
  const auto res = resources(a.data_dir);
  orchestrator::SessionEnv env;
  env.translator = res.make(spec);
  auto cell = std::make_shared<orchestrator::WorldCell>();
  cell->world = scene.world;
  orchestrator::Session s("cli", orchestrator::mode_from_string(a.mode), env, cell,
                          std::make_unique<orchestrator::VirtualClock>());
  s.submit(a.instruction);
  if (a.approve && s.phase() == orchestrator::Phase::kAwaitingApproval) {
    s.approve();
    s.run();
  }
  const auto phase = s.phase();

  if (!a.out.empty()) {
    const fs::path dir(a.out);
    fs::create_directories(dir);
    spill(dir, "instruction.txt", a.instruction + "\n");
    if (auto f = s.fragment()) spill(dir, "fragment.pddl", f->raw);
    if (auto t = s.subtasks()) spill(dir, "subtasks.json", t->raw);
    if (auto p = s.problem()) spill(dir, "problem.pddl", pddl::print_problem(*p));
    if (auto p = s.plan()) spill(dir, "plan.txt", pddl::print_plan(*p));
    json calls = json::array();
    for (const auto& c : s.calls()) calls.push_back(tools::to_json(c));
    spill(dir, "calls.json", calls.dump(2) + "\n");
    spill(dir, "events.jsonl", s.events().to_jsonl(false));
    spill(dir, "session.json", s.to_json().dump(2) + "\n");
    if (!s.raw_output().empty()) spill(dir, "raw_output.txt", s.raw_output());
    if (phase == orchestrator::Phase::kCompleted) spill(dir, "world_final.json", world::world_to_json(s.world()).dump(2) + "\n");
  }

  out << "phase: " << orchestrator::to_string(phase) << "\n";
  if (auto p = s.plan()) out << pddl::print_plan(*p);
  if (!s.plan()) {
    for (const auto& c : s.calls()) out << c.to_string() << "\n";
  }
  if (phase == orchestrator::Phase::kFailed) {
    err << s.failure_reason() << "\n";
    return 1;
  }
  return 0;
}

struct BenchArgs {
  std::string suite, modes = "direct,pddl", translator = "template", out, data_dir;
  int trials = 5;
  std::optional<double> fault;
  std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream&) {
  if (a.trials < 0) throw UsageError("--trials must be non-negative");
  bench::Suite suite;
  try {
    suite = bench::load_suite(a.suite);
  } catch (const bench::SuiteError& e) {
    throw UsageError(e.what());
  }
  auto spec = parse_spec(a.translator);
  if (a.fault) {
    if (*a.fault < 0.0 || *a.fault > 1.0) throw UsageError("--fault must lie in [0, 1]");
    spec.fault = true;
    spec.fault_rate = *a.fault;
  }
  const bench::BenchContext ctx{resources(a.data_dir), {}};
  const auto records = bench::run_suite(suite, parse_modes(a.modes), spec, a.trials, a.seed, ctx);
  const auto summary = bench::summarize(records);
  const std::string table = bench::format_table(summary);
  out << "suite " << suite.name << " (reconstruction), translator " << spec.to_string() << ", " << a.trials
      << " trials per task and mode\n"
      << table;
  if (!a.out.empty()) {
    const fs::path dir(a.out);
    fs::create_directories(dir);
    std::string lines;
    for (const auto& r : records) lines += r.to_json().dump() + "\n";
    spill(dir, "records.jsonl", lines);
    spill(dir, "summary.json", summary.to_json().dump(2) + "\n");
    spill(dir, "table.txt", table);
  }
  return 0;
}

struct PerceptionArgs {
  std::vector<std::string> scenes;
  std::string grid = "0,1,2,4", out, data_dir;
  int repeats = 20;
  double depth_per_px = 0.005;
};

int cmd_perception(const PerceptionArgs& a, std::ostream& out, std::ostream&) {
  std::vector<world::Scene> scenes;
  if (a.scenes.empty()) {
    for (int i = 1; i <= 5; ++i) {
      scenes.push_back(scene_or_usage((fs::path(a.data_dir) / "scenes" / ("scene_" + std::to_string(i) + ".json")).string()));
    }
  }
  for (const auto& p : a.scenes) scenes.push_back(scene_or_usage(p));
  std::vector<double> grid;
  std::stringstream ss(a.grid);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      grid.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad --grid entry '" + item + "'");
    }
  }
  bench::PerceptionConfig cfg;
  cfg.repeats = a.repeats;
  const auto results = bench::run_noise_grid(scenes, grid, a.depth_per_px, cfg);
  out << fmt::format("{:>9} {:>11} {:>9} {:>12} {:>25} {:>7}\n", "sigma_px", "sigma_d (m)", "accuracy", "RMSE (m)",
                     "95% bootstrap CI", "points");
  json report = json::array();
  for (const auto& m : results) {
    out << fmt::format("{:>9.2f} {:>11.4f} {:>9.4f} {:>12.6f} {:>25} {:>7}\n", m.sigma_px, m.sigma_depth, m.accuracy,
                       m.rmse, fmt::format("[{:.6f}, {:.6f}]", m.rmse_ci.lo, m.rmse_ci.hi), m.points);
    report.push_back(m.to_json(true));
  }
  out << fmt::format("External reference (hardware cameras, not a target): accuracy {:.3f}, RMSE {:.3f} m\n",
                     bench::reference::kSpatialAccuracy, bench::reference::kRmseMeters);
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    spill(a.out, "perception.json", report.dump(2) + "\n");
  }
  return 0;
}

struct LatencyArgs {
  int trials = 100;
  double tick = 50.0;
  std::uint64_t seed = 1;
  bool realtime = false;
  std::string scene, instruction = "put the green cylinder in the bin, execute", mode = "pddl", out, data_dir;
};

int cmd_latency(const LatencyArgs& a, std::ostream& out, std::ostream&) {
  if (a.trials <= 0) throw UsageError("--trials must be positive");
  if (!(a.tick > 0.0)) throw UsageError("--tick must be positive");
  bench::LatencyConfig cfg;
  cfg.trials = a.trials;
  cfg.tick_ms = a.tick;
  cfg.seed = a.seed;
  cfg.realtime = a.realtime;
  cfg.scene = a.scene.empty() ? (fs::path(a.data_dir) / "scenes" / "scene_1.json").string() : a.scene;
  scene_or_usage(cfg.scene);
  cfg.instruction = a.instruction;
  cfg.mode = orchestrator::mode_from_string(a.mode);
  const bench::BenchContext ctx{resources(a.data_dir), {}};
  const auto rep = bench::run_stop_latency(cfg, ctx);
  out << "Stop latency (gate event to halt, " << (a.realtime ? "wall clock" : "virtual clock") << "): "
      << rep.describe() << "\n";
  out << "samples above bound: " << rep.over_bound << ", resume mismatches: " << rep.resume_mismatches << "\n";
  out << fmt::format(
      "External reference (includes speech recognition transport, not comparable): {:.2f} ± {:.2f} s\n",
      bench::reference::kStopLatencySeconds, bench::reference::kStopLatencyStd);
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    spill(a.out, "stop_latency.json", rep.to_json().dump(2) + "\n");
  }
  return rep.over_bound == 0 ? 0 : 1;
}

struct ServeArgs {
  std::string config, data_dir;
  std::optional<int> port;
  std::optional<double> tick;
  std::string scene;
};

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  gateway::GatewayConfig cfg;
  try {
    cfg = a.config.empty() ? gateway::GatewayConfig::from_json({{"data_dir", a.data_dir}}) : gateway::GatewayConfig::load(a.config);
    if (a.port) cfg.port = *a.port;
    if (a.tick) cfg.tick_ms = *a.tick;
    if (!a.scene.empty()) cfg.scene = a.scene;
  } catch (const gateway::ConfigError& e) {
    throw UsageError(e.what());
  }

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::unique_ptr<gateway::Gateway> gw;
  try {
    gw = std::make_unique<gateway::Gateway>(cfg);
    gw->start();
  } catch (const gateway::ConfigError& e) {
    throw UsageError(e.what());
  } catch (const gateway::BindError& e) {
    err << e.what() << "\n";
    return 1;
  }
  out << "listening on http://" << cfg.host << ":" << gw->port() << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  out << "shutting down" << std::endl;
  gw->stop();
  return 0;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"lamctl: plan, solve, benchmark and serve the tabletop assistant"};
  app.require_subcommand(1);
  std::string data_dir = gateway::default_data_dir();
  app.add_option("--data-dir", data_dir, "Directory with the domain, rules, prompts and scenes");

  SolveArgs solve;
  auto* s = app.add_subcommand("plan-solve", "Solve a PDDL domain and problem");
  s->add_option("--domain", solve.domain)->required()->check(CLI::ExistingFile);
  s->add_option("--problem", solve.problem)->required()->check(CLI::ExistingFile);
  s->add_option("--strategy", solve.strategy, "gbfs | astar | bfs")->capture_default_str();
  s->add_option("--heuristic", solve.heuristic, "hadd | hmax | zero")->capture_default_str();
  s->add_option("--max-expansions", solve.max_expansions)->capture_default_str();

  PlanArgs plan;
  auto* p = app.add_subcommand("plan", "Translate and plan one instruction against a scene");
  p->add_option("--mode", plan.mode, "direct | pddl")->required()->check(CLI::IsMember({"direct", "pddl", "neuro-symbolic"}));
  p->add_option("--instruction", plan.instruction)->required();
  p->add_option("--scene", plan.scene)->required()->check(CLI::ExistingFile);
  p->add_option("--translator", plan.translator, "template | llm | fault:<rate>:<seed>[:llm]")->capture_default_str();
  p->add_flag("--approve", plan.approve, "Approve and execute the plan in simulation");
  p->add_option("--out", plan.out, "Artifact directory");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run the task suite in both pipelines");
  b->add_option("--suite", bench.suite)->required();
  b->add_option("--trials", bench.trials)->capture_default_str();
  b->add_option("--modes", bench.modes)->capture_default_str();
  b->add_option("--translator", bench.translator)->capture_default_str();
  b->add_option("--fault", bench.fault, "Fault-injection rate in [0, 1]");
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_option("--out", bench.out, "Report directory");

  PerceptionArgs perception;
  auto* pe = app.add_subcommand("perception", "Spatial accuracy and projection RMSE over a noise grid");
  pe->add_option("--scene", perception.scenes, "Scene files (default: the five bundled scenes)");
  pe->add_option("--grid", perception.grid, "Pixel sigmas, comma separated")->capture_default_str();
  pe->add_option("--depth-per-px", perception.depth_per_px, "Depth sigma per pixel sigma, meters")->capture_default_str();
  pe->add_option("--repeats", perception.repeats)->capture_default_str()->check(CLI::PositiveNumber);
  pe->add_option("--out", perception.out);

  LatencyArgs latency;
  auto* l = app.add_subcommand("stop-latency", "Inject STOP during execution and measure gate-to-halt latency");
  l->add_option("--trials", latency.trials)->capture_default_str();
  l->add_option("--tick", latency.tick, "Tick length, ms")->capture_default_str();
  l->add_option("--seed", latency.seed)->capture_default_str();
  l->add_flag("--realtime", latency.realtime, "Use the wall clock and a separate stopping thread");
  l->add_option("--scene", latency.scene);
  l->add_option("--instruction", latency.instruction)->capture_default_str();
  l->add_option("--mode", latency.mode)->check(CLI::IsMember({"direct", "pddl", "neuro-symbolic"}))->capture_default_str();
  l->add_option("--out", latency.out);

  ServeArgs serve;
  auto* sv = app.add_subcommand("serve", "Run the HTTP gateway until SIGINT or SIGTERM");
  sv->add_option("--config", serve.config)->check(CLI::ExistingFile);
  sv->add_option("--port", serve.port);
  sv->add_option("--tick", serve.tick, "Tick length, ms");
  sv->add_option("--scene", serve.scene)->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  plan.data_dir = bench.data_dir = perception.data_dir = latency.data_dir = serve.data_dir = data_dir;
  try {
    if (*s) return cmd_solve(solve, out, err);
    if (*p) return cmd_plan(plan, out, err);
    if (*b) return cmd_bench(bench, out, err);
    if (*pe) return cmd_perception(perception, out, err);
    if (*l) return cmd_latency(latency, out, err);
    if (*sv) return cmd_serve(serve, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace lam::cli
