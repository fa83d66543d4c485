#include "lam/bench/trials.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

#include "lam/bench/reference.hpp"
#include "lam/pddl/parser.hpp"
#include "lam/world/abstraction.hpp"
#include "lam/world/scene_io.hpp"

namespace lam::bench {

using nlohmann::json;
using orchestrator::Mode;

const char* to_string(TrialOutcome outcome) {
  switch (outcome) {
    case TrialOutcome::kSuccess: return "success";
    case TrialOutcome::kTranslationFail: return "translation-fail";
    case TrialOutcome::kUnsolvable: return "unsolvable";
    case TrialOutcome::kExecutionFail: return "execution-fail";
  }
  return "?";
}

json TrialRecord::to_json() const {
  json j = {{"task", task},
            {"mode", orchestrator::to_string(mode)},
            {"translator", translator},
            {"trial", trial},
            {"seed", seed},
            {"outcome", bench::to_string(outcome)},
            {"step_ms", step_ms},
            {"translator_requests", translator_requests},
            {"stop_latency_ms", stop_latency_ms},
            {"fault_injected", fault_injected},
            {"world_mutated", world_mutated},
            {"approval_audit_ok", approval_audit_ok}};
  j["tokens"] = tokens ? json(*tokens) : json(nullptr);
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

std::uint64_t trial_seed(std::uint64_t run_seed, int trial) {
  // splitmix64 finaliser
  std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

bool audit_approvals(const orchestrator::EventLog& log) {
  bool approved = false;
  for (const auto& e : log.all()) {
    if (e.kind == "plan-ready") approved = false;
    if (e.kind == "approval") approved = true;
    if (e.kind == "tool-status" && e.payload.value("status", "") == "running" && !approved) return false;
  }
  return true;
}

bool goal_holds(const TaskSpec& task, const world::WorldState& w, const pddl::Domain& domain) {
  std::string text = "(and";
  for (const auto& g : task.goal) text += " " + g;
  text += ")";
  const auto goal = pddl::parse_goal(text, domain, world::symbolic_objects(w));
  return world::satisfies(world::abstract_state(w), goal);
}

}  // namespace

TrialRecord run_trial(const TaskSpec& task, Mode mode, translator::TranslatorSpec spec, int trial,
                      std::uint64_t run_seed, const BenchContext& ctx) {
  TrialRecord rec;
  rec.task = task.id;
  rec.mode = mode;
  rec.trial = trial;
  rec.seed = trial_seed(run_seed ^ spec.seed, trial);
  spec.seed = rec.seed;
  rec.translator = spec.to_string();

  const world::Scene scene = world::load_scene(task.scene);
  orchestrator::SessionEnv env = ctx.env;
  env.auto_approve = true;
  env.translator = ctx.resources.make(spec);
  auto cell = std::make_shared<orchestrator::WorldCell>();
  cell->world = scene.world;
  orchestrator::Session session(task.id, mode, std::move(env), cell, std::make_unique<orchestrator::VirtualClock>());

  session.transcript(task.sentence);
  session.run();

  const world::WorldState final_world = session.world();
  const auto metrics = session.metrics();
  rec.step_ms = metrics.step_ms;
  rec.translator_requests = metrics.translator_requests;
  if (metrics.prompt_tokens || metrics.completion_tokens) {
    rec.tokens = metrics.prompt_tokens.value_or(0) + metrics.completion_tokens.value_or(0);
  }
  rec.stop_latency_ms = metrics.stop_latency_ms;
  rec.fault_injected = metrics.fault_injected;
  rec.world_mutated = final_world.content_hash() != scene.world.content_hash();
  rec.approval_audit_ok = audit_approvals(session.events());

  const auto phase = session.phase();
  if (phase == orchestrator::Phase::kCompleted) {
    if (goal_holds(task, final_world, ctx.resources.domain)) {
      rec.outcome = TrialOutcome::kSuccess;
    } else {
      rec.outcome = TrialOutcome::kExecutionFail;
      rec.reason = "completed but the task goal does not hold";
    }
    return rec;
  }
  rec.reason = session.failure_reason();
  if (phase != orchestrator::Phase::kFailed) {
    rec.outcome = TrialOutcome::kExecutionFail;
    rec.reason = std::string("ended in ") + orchestrator::to_string(phase);
  } else if (rec.reason.rfind("translation", 0) == 0) {
    rec.outcome = TrialOutcome::kTranslationFail;
  } else if (rec.reason.rfind("planning", 0) == 0) {
    rec.outcome = TrialOutcome::kUnsolvable;
  } else {
    rec.outcome = TrialOutcome::kExecutionFail;
  }
  return rec;
}

std::vector<TrialRecord> run_suite(const Suite& suite, const std::vector<Mode>& modes,
                                   const translator::TranslatorSpec& spec, int trials, std::uint64_t seed,
                                   const BenchContext& ctx) {
  std::vector<TrialRecord> out;
  for (const auto& task : suite.tasks) {
    for (Mode mode : modes) {
      for (int t = 0; t < trials; ++t) out.push_back(run_trial(task, mode, spec, t, seed, ctx));
    }
  }
  return out;
}

double ModeSummary::success_percent() const {
  return trials == 0 ? 0.0 : 100.0 * static_cast<double>(successes) / static_cast<double>(trials);
}

SuiteSummary summarize(const std::vector<TrialRecord>& records) {
  std::map<Mode, std::vector<const TrialRecord*>> by_mode;
  for (const auto& r : records) by_mode[r.mode].push_back(&r);

  SuiteSummary s;
  std::map<Mode, std::vector<double>> steps_by_mode;
  for (const auto& [mode, recs] : by_mode) {
    ModeSummary m;
    m.mode = mode;
    m.trials = recs.size();
    std::vector<double> steps;
    long requests = 0;
    std::vector<double> tokens;
    for (const auto* r : recs) {
      switch (r->outcome) {
        case TrialOutcome::kSuccess: ++m.successes; break;
        case TrialOutcome::kTranslationFail: ++m.translation_fail; break;
        case TrialOutcome::kUnsolvable: ++m.unsolvable; break;
        case TrialOutcome::kExecutionFail: ++m.execution_fail; break;
      }
      if (!r->success() && r->world_mutated && r->fault_injected) ++m.unsafe;
      steps.insert(steps.end(), r->step_ms.begin(), r->step_ms.end());
      requests += r->translator_requests;
      if (r->tokens) tokens.push_back(static_cast<double>(*r->tokens));
    }
    m.steps = steps.size();
    m.step_ms = mean_std(steps);
    m.requests_per_step = steps.empty() ? 0.0 : static_cast<double>(requests) / static_cast<double>(steps.size());
    if (!tokens.empty()) m.tokens_per_trial = mean_std(tokens).mean;
    steps_by_mode[mode] = std::move(steps);
    s.modes.push_back(m);
  }
  const auto& d = steps_by_mode[Mode::kDirect];
  const auto& n = steps_by_mode[Mode::kNeuroSymbolic];
  if (d.size() >= 2 && n.size() >= 2) s.step_time_test = welch_t_test(d, n);
  return s;
}

json SuiteSummary::to_json() const {
  json j = json::object();
  json ms = json::array();
  for (const auto& m : modes) {
    json e = {{"mode", orchestrator::to_string(m.mode)},
              {"trials", m.trials},
              {"successes", m.successes},
              {"success_percent", m.success_percent()},
              {"translation_fail", m.translation_fail},
              {"unsolvable", m.unsolvable},
              {"execution_fail", m.execution_fail},
              {"unsafe", m.unsafe},
              {"steps", m.steps},
              {"step_ms_mean", m.step_ms.mean},
              {"step_ms_std", m.step_ms.std},
              {"requests_per_step", m.requests_per_step}};
    e["tokens_per_trial"] = m.tokens_per_trial ? json(*m.tokens_per_trial) : json(nullptr);
    ms.push_back(e);
  }
  j["modes"] = ms;
  if (step_time_test) {
    j["welch"] = {{"t", step_time_test->t}, {"df", step_time_test->df}, {"p", step_time_test->p}};
  }
  return j;
}

std::string format_table(const SuiteSummary& summary) {
  const ModeSummary* direct = nullptr;
  const ModeSummary* symbolic = nullptr;
  for (const auto& m : summary.modes) (m.mode == Mode::kDirect ? direct : symbolic) = &m;

  auto cell = [](const ModeSummary* m, auto fn) -> std::string { return m ? fn(*m) : std::string("-"); };
  std::string out;
  auto row = [&](const std::string& label, const std::string& a, const std::string& b) {
    out += fmt::format("{:<38} {:>16} {:>16}\n", label, a, b);
  };
  row("Metric", "LLM-Direct", "Neuro-Symbolic");
  row("Avg. Execution Time per Step (s)",
      cell(direct, [](const ModeSummary& m) { return format_pm({m.step_ms.mean / 1000.0, m.step_ms.std / 1000.0, m.steps}); }),
      cell(symbolic, [](const ModeSummary& m) { return format_pm({m.step_ms.mean / 1000.0, m.step_ms.std / 1000.0, m.steps}); }));
  auto pct = [](const ModeSummary& m) { return fmt::format("{:.1f}", m.success_percent()); };
  row("Success Rate (%)", cell(direct, pct), cell(symbolic, pct));
  auto req = [](const ModeSummary& m) { return fmt::format("{:.2f}", m.requests_per_step); };
  row("LLM Requests per Step", cell(direct, req), cell(symbolic, req));
  auto tok = [](const ModeSummary& m) {
    return m.tokens_per_trial ? fmt::format("{:.0f}", *m.tokens_per_trial) : std::string("n/a");
  };
  row("Computational Cost (Tokens)", cell(direct, tok), cell(symbolic, tok));
  auto trials = [](const ModeSummary& m) { return std::to_string(m.trials); };
  row("Trials", cell(direct, trials), cell(symbolic, trials));
  auto unsafe = [](const ModeSummary& m) { return std::to_string(m.unsafe); };
  row("Unsafe executions", cell(direct, unsafe), cell(symbolic, unsafe));
  if (summary.step_time_test) {
    const auto& w = *summary.step_time_test;
    out += fmt::format("Time difference: Welch t = {:.3f}, df = {:.1f}, p = {:.3g}\n", w.t, w.df, w.p);
  } else {
    out += "Time difference: not enough steps for a Welch test\n";
  }
  namespace ref = reference;
  out += fmt::format(
      "External reference (hardware, live model; not a target): {:.2f} ± {:.2f} s / {:.2f} ± {:.2f} s per step, "
      "{:.1f}% / {:.1f}% success, {:.1f} requests per step, ~{} tokens, p = {:.3f}\n",
      ref::kDirectStepSeconds, ref::kDirectStepStd, ref::kSymbolicStepSeconds, ref::kSymbolicStepStd,
      ref::kDirectSuccessPercent, ref::kSymbolicSuccessPercent, ref::kRequestsPerStep, ref::kApproxTokens,
      ref::kStepTimePValue);
  return out;
}

}  // namespace lam::bench
