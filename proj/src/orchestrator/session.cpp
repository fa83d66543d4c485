#include "lam/orchestrator/session.hpp"

#include <algorithm>
#include <regex>

#include "lam/orchestrator/compose.hpp"
#include "lam/pddl/parser.hpp"
#include "lam/pddl/printer.hpp"
#include "lam/pddl/validate.hpp"
#include "lam/tools/mapping.hpp"
#include "lam/translator/rules.hpp"
#include "lam/world/abstraction.hpp"

namespace lam::orchestrator {

using nlohmann::json;

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::kIdle: return "idle";
    case Phase::kTranslating: return "translating";
    case Phase::kPlanning: return "planning";
    case Phase::kAwaitingApproval: return "awaiting-approval";
    case Phase::kExecuting: return "executing";
    case Phase::kCompleted: return "completed";
    case Phase::kFailed: return "failed";
    case Phase::kStopped: return "stopped";
  }
  return "?";
}

const char* to_string(Mode mode) { return mode == Mode::kDirect ? "direct" : "neuro-symbolic"; }

Mode mode_from_string(const std::string& text) {
  if (text == "direct") return Mode::kDirect;
  if (text == "pddl" || text == "neuro-symbolic") return Mode::kNeuroSymbolic;
  throw std::invalid_argument("unknown mode '" + text + "' (expected direct or pddl)");
}

Revision Revision::from_json(const json& j) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) {
    throw std::invalid_argument("revision needs a string 'op'");
  }
  const std::string op = j["op"];
  Revision r;
  auto index = [&](const char* key) -> std::size_t {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0) {
      throw std::invalid_argument(std::string("revision '") + op + "' needs a non-negative integer '" + key + "'");
    }
    return j[key].get<std::size_t>();
  };
  auto text = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j[key].is_string()) {
      throw std::invalid_argument(std::string("revision '") + op + "' needs a string '" + key + "'");
    }
    return j[key];
  };
  if (op == "swap") {
    r.kind = Kind::kSwap;
    r.i = index("i");
    r.j = index("j");
    if (j.contains("len")) r.length = index("len");
  } else if (op == "delete") {
    r.kind = Kind::kDelete;
    r.i = index("i");
    if (j.contains("len")) r.length = index("len");
  } else if (op == "edit-goal") {
    r.kind = Kind::kEditGoal;
    r.text = text("goal");
  } else if (op == "swap-order") {
    r.kind = Kind::kSwapOrder;
  } else if (op == "replace-instruction") {
    r.kind = Kind::kReplaceInstruction;
    r.text = text("instruction");
  } else {
    throw std::invalid_argument("unknown revision op '" + op + "'");
  }
  return r;
}

json Revision::to_json() const {
  switch (kind) {
    case Kind::kSwap: return {{"op", "swap"}, {"i", i}, {"j", j}, {"len", length}};
    case Kind::kDelete: return {{"op", "delete"}, {"i", i}, {"len", length}};
    case Kind::kEditGoal: return {{"op", "edit-goal"}, {"goal", text}};
    case Kind::kReplaceInstruction: return {{"op", "replace-instruction"}, {"instruction", text}};
    case Kind::kSwapOrder: return {{"op", "swap-order"}};
  }
  return {};
}

std::optional<Revision> parse_correction(const std::string& line) {
  const std::string text = translator::normalize_instruction(line);
  static const std::regex order(R"((?:please )?(?:swap|reverse|switch) the (?:action |task )?order)");
  static const std::regex swap(R"((?:please )?swap steps? (\d+) and (\d+))");
  static const std::regex remove(R"((?:please )?(?:delete|remove|skip) step (\d+))");
  std::smatch m;
  Revision r;
  if (std::regex_match(text, order)) {
    r.kind = Revision::Kind::kSwapOrder;
    return r;
  }
  auto index = [](const std::string& s) -> std::optional<std::size_t> {
    const auto n = std::stoul(s);
    if (n == 0) return std::nullopt;
    return n - 1;
  };
  if (std::regex_match(text, m, swap)) {
    const auto i = index(m[1]), j = index(m[2]);
    if (!i || !j) return std::nullopt;
    r.kind = Revision::Kind::kSwap;
    r.i = *i;
    r.j = *j;
    return r;
  }
  if (std::regex_match(text, m, remove)) {
    const auto i = index(m[1]);
    if (!i) return std::nullopt;
    r.kind = Revision::Kind::kDelete;
    r.i = *i;
    return r;
  }
  return std::nullopt;
}

json PlanCheck::to_json() const {
  json j = {{"valid", valid}};
  if (!valid) {
    j["step"] = step;
    j["violation"] = violation;
  }
  return j;
}

json SessionMetrics::to_json() const {
  json j = {{"translator_requests", translator_requests},
            {"fault_injected", fault_injected},
            {"replans", replans},
            {"step_ms", step_ms},
            {"stop_latency_ms", stop_latency_ms}};
  j["prompt_tokens"] = prompt_tokens ? json(*prompt_tokens) : json(nullptr);
  j["completion_tokens"] = completion_tokens ? json(*completion_tokens) : json(nullptr);
  if (searched) {
    j["search"] = {{"expansions", search.expansions},
                   {"generated", search.generated},
                   {"peak_open", search.peak_open},
                   {"elapsed_ms", std::chrono::duration<double, std::milli>(search.elapsed).count()}};
  }
  return j;
}

struct Session::Artifacts {
  std::string instruction;
  std::optional<translator::ProblemFragment> fragment;
  std::optional<translator::SubtaskList> subtasks;
  std::optional<pddl::Problem> problem;
  std::shared_ptr<const pddl::Grounding> grounding;
  std::optional<pddl::Plan> plan;
  std::vector<tools::ToolCall> calls;
  PlanCheck check;
  /// World the current plan was made for.
  std::optional<world::WorldState> basis;
  std::string raw_output;
};

namespace {

bool can_submit(Phase p) {
  return p == Phase::kIdle || p == Phase::kCompleted || p == Phase::kFailed || p == Phase::kStopped;
}

template <typename T>
void swap_blocks(std::vector<T>& v, std::size_t i, std::size_t j, std::size_t len) {
  std::swap_ranges(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(i + len),
                   v.begin() + static_cast<long>(j));
}

bool releases(const pddl::PlanStep& step) {
  return step.action == "put-down" || step.action == "stack" || step.action == "place-in";
}

bool releases(const tools::ToolCall& call) { return call.tool == "place_on" || call.tool == "place_in"; }

// Moves the second pick-and-place unit in front of the first. Returns false
// when the sequence has fewer than two units.
template <typename T>
bool swap_first_units(std::vector<T>& v) {
  std::vector<std::size_t> ends;
  for (std::size_t k = 0; k < v.size() && ends.size() < 2; ++k) {
    if (releases(v[k])) ends.push_back(k + 1);
  }
  if (ends.size() < 2) return false;
  std::rotate(v.begin(), v.begin() + static_cast<long>(ends[0]), v.begin() + static_cast<long>(ends[1]));
  return true;
}

template <typename T>
void erase_block(std::vector<T>& v, std::size_t i, std::size_t len) {
  v.erase(v.begin() + static_cast<long>(i), v.begin() + static_cast<long>(i + len));
}

PlanCheck simulate_calls(const std::vector<tools::ToolCall>& calls, world::WorldState w) {
  for (std::size_t i = 0; i < calls.size(); ++i) {
    const auto verdict = tools::validate_call(calls[i], w);
    if (!verdict.ok()) return {false, i, verdict.describe()};
    tools::apply_effect(w, calls[i]);
  }
  return {};
}

}  // namespace

Session::Session(std::string id, Mode mode, SessionEnv env, std::shared_ptr<WorldCell> world,
                 std::unique_ptr<Clock> clock)
    : id_(std::move(id)),
      mode_(mode),
      env_(std::move(env)),
      world_(std::move(world)),
      clock_(std::move(clock)),
      gate_(env_.gate),
      art_(std::make_unique<Artifacts>()) {
  if (!env_.translator) throw std::invalid_argument("session needs a translator");
  if (!world_) throw std::invalid_argument("session needs a world");
  if (!clock_) clock_ = std::make_unique<VirtualClock>();
}

Session::~Session() = default;

Phase Session::phase() const {
  std::lock_guard lock(mutex_);
  return phase_;
}

std::string Session::failure_reason() const {
  std::lock_guard lock(mutex_);
  return phase_ == Phase::kFailed ? reason_ : std::string();
}

void Session::log(const std::string& kind, json payload) { events_.append(kind, std::move(payload), clock_->now_ms()); }

void Session::set_phase(Phase next, const std::string& reason) {
  json p = {{"from", to_string(phase_)}, {"to", to_string(next)}};
  if (!reason.empty()) p["reason"] = reason;
  phase_ = next;
  reason_ = reason;
  log("phase-change", std::move(p));
  cv_.notify_all();
}

void Session::fail(const std::string& stage, const std::string& message, const json& extra) {
  json p = {{"stage", stage}, {"message", message}};
  if (extra.is_object()) p.update(extra);
  log("error", std::move(p));
  set_phase(Phase::kFailed, stage + ": " + message);
}

world::WorldState Session::world() const {
  std::lock_guard lock(world_->mutex);
  return world_->world;
}

void Session::set_world(const world::WorldState& w) {
  std::lock_guard lock(world_->mutex);
  world_->world = w;
}

gate::GateEvent Session::transcript(const std::string& line, std::optional<double> at_ms) {
  std::unique_lock lock(mutex_);
  const double at = at_ms.value_or(clock_->now_ms());
  const gate::GateEvent ev = gate_.feed(line);
  log("gate-event", {{"event", gate::to_string(ev.kind)}, {"text", ev.text}});
  switch (ev.kind) {
    case gate::EventKind::kForward:
      if (can_submit(phase_)) {
        run_pipeline(lock, ev.text, true);
      } else if (auto r = phase_ == Phase::kAwaitingApproval ? parse_correction(ev.text) : std::nullopt) {
        try {
          revise_locked(lock, *r);
        } catch (const RevisionError& e) {
          log("notice", {{"message", std::string("correction not applied: ") + e.what()}});
        }
      } else {
        log("notice", {{"message", std::string("instruction ignored while ") + to_string(phase_)}});
      }
      break;
    case gate::EventKind::kEmergencyStop:
      stop_locked(at);
      break;
    case gate::EventKind::kResume:
      if (phase_ == Phase::kStopped) {
        resume_locked();
      } else {
        log("notice", {{"message", std::string("resume ignored while ") + to_string(phase_)}});
      }
      break;
    default:
      break;
  }
  return ev;
}

void Session::submit(const std::string& instruction) {
  std::unique_lock lock(mutex_);
  if (!can_submit(phase_)) {
    throw StateError(std::string("cannot submit while ") + to_string(phase_));
  }
  run_pipeline(lock, instruction, true);
}

void Session::run_pipeline(std::unique_lock<std::mutex>& lock, const std::string& instruction, bool translate) {
  motion_.reset();
  stop_pending_ = false;
  call_index_ = 0;
  if (translate) {
    art_ = std::make_unique<Artifacts>();
    art_->instruction = instruction;
  }
  set_phase(Phase::kTranslating);
  const world::WorldState snapshot = world();
  const auto translator = env_.translator;

  // Model calls can take seconds; release the session meanwhile so stop and
  // status requests stay responsive.
  lock.unlock();
  translator::TranslationUsage usage;
  std::optional<translator::TranslationError> error;
  std::optional<translator::ProblemFragment> fragment;
  std::optional<translator::SubtaskList> subtasks;
  try {
    const auto facts = translator::observe(snapshot, env_.tolerance);
    if (mode_ == Mode::kNeuroSymbolic) {
      fragment = translator->translate_to_problem(instruction, facts, &usage);
    } else {
      subtasks = translator->translate_to_subtasks(instruction, facts, &usage);
    }
  } catch (const translator::TranslationError& e) {
    error = e;
  }
  lock.lock();

  metrics_.translator_requests += usage.requests;
  if (usage.prompt_tokens) metrics_.prompt_tokens = metrics_.prompt_tokens.value_or(0) + *usage.prompt_tokens;
  if (usage.completion_tokens) {
    metrics_.completion_tokens = metrics_.completion_tokens.value_or(0) + *usage.completion_tokens;
  }
  metrics_.fault_injected = metrics_.fault_injected || usage.fault_injected;
  if (shut_) return;
  if (error) {
    art_->raw_output = error->raw();
    fail("translation", error->what(), {{"kind", translator::to_string(error->kind())}, {"raw", error->raw()}});
    return;
  }
  art_->fragment = std::move(fragment);
  art_->subtasks = std::move(subtasks);
  set_phase(Phase::kPlanning);
  if (!plan_stage(snapshot)) return;
  publish_plan();
  if (env_.auto_approve) approve_locked(true);
}

bool Session::plan_stage(const world::WorldState& snapshot) {
  auto& a = *art_;
  a.basis = snapshot;
  a.plan.reset();
  a.calls.clear();
  if (mode_ == Mode::kDirect) {
    a.check = simulate_calls(a.subtasks->steps, snapshot);
    if (!a.check.valid) {
      fail("planning", "subtask " + std::to_string(a.check.step) + " rejected: " + a.check.violation,
           {{"step", a.check.step}});
      return false;
    }
    a.calls = a.subtasks->steps;
    return true;
  }

  const pddl::Domain& domain = env_.translator->domain();
  try {
    a.problem = compose_problem(*a.fragment, snapshot, domain);
  } catch (const ConflictError& e) {
    json w = json::array(), f = json::array();
    for (const auto& atom : e.world_atoms()) w.push_back(atom.to_string());
    for (const auto& atom : e.fragment_atoms()) f.push_back(atom.to_string());
    fail("planning", e.what(), {{"world_atoms", w}, {"fragment_atoms", f}});
    return false;
  } catch (const pddl::ParseError& e) {
    fail("planning", e.what());
    return false;
  }
  try {
    a.grounding = std::make_shared<const pddl::Grounding>(pddl::ground(domain, *a.problem, env_.grounding));
  } catch (const pddl::GroundingLimitExceeded& e) {
    fail("planning", std::string("resource-limit: ") + e.what());
    return false;
  }
  const planner::SearchResult result = planner::solve(*a.grounding, env_.search);
  metrics_.searched = true;
  metrics_.search = result.stats;
  if (!result.solved()) {
    fail("planning", planner::to_string(result.outcome), {{"expansions", result.stats.expansions}});
    return false;
  }
  a.plan = result.plan;
  try {
    a.calls = tools::map_plan_to_calls(*a.plan, snapshot);
  } catch (const tools::MappingError& e) {
    fail("planning", std::string("mapping: ") + e.what(), {{"step", e.step()}});
    return false;
  }
  a.check = {};
  return true;
}

void Session::publish_plan() {
  const auto& a = *art_;
  json p = {{"mode", to_string(mode_)}, {"instruction", a.instruction}, {"check", a.check.to_json()}};
  if (a.problem) p["problem"] = pddl::print_problem(*a.problem);
  if (a.plan) {
    json steps = json::array();
    for (const auto& s : a.plan->steps) steps.push_back(s.to_string());
    p["plan"] = steps;
  }
  json calls = json::array();
  for (const auto& c : a.calls) calls.push_back(c.to_string());
  p["calls"] = calls;
  if (phase_ != Phase::kAwaitingApproval) set_phase(Phase::kAwaitingApproval);
  log("plan-ready", std::move(p));
}

void Session::approve() {
  std::lock_guard lock(mutex_);
  approve_locked(false);
}

void Session::approve_locked(bool synthetic) {
  if (phase_ != Phase::kAwaitingApproval) {
    throw StateError(std::string("nothing to approve while ") + to_string(phase_));
  }
  if (!art_->check.valid) {
    throw StateError("plan is invalid at step " + std::to_string(art_->check.step) + ": " + art_->check.violation);
  }
  const world::WorldState now = world();
  if (!art_->basis || world::abstraction_hash(now) != world::abstraction_hash(*art_->basis)) {
    log("notice", {{"message", "world changed since planning; replanning"}});
    ++metrics_.replans;
    set_phase(Phase::kPlanning, "stale-state");
    if (!plan_stage(now)) return;
    publish_plan();
    if (env_.auto_approve) approve_locked(true);
    return;
  }
  log("approval", {{"synthetic", synthetic}, {"calls", art_->calls.size()}});
  start_execution(synthetic);
}

void Session::start_execution(bool) {
  call_index_ = 0;
  motion_.reset();
  stop_pending_ = false;
  clock_->sync();
  set_phase(Phase::kExecuting);
}

PlanCheck Session::recheck(const world::WorldState& snapshot) {
  auto& a = *art_;
  if (mode_ == Mode::kDirect) {
    PlanCheck c = simulate_calls(a.subtasks->steps, snapshot);
    a.calls = c.valid ? a.subtasks->steps : std::vector<tools::ToolCall>{};
    return c;
  }
  const pddl::PlanVerdict v = pddl::validate_plan(*a.grounding, *a.plan);
  if (!v.valid) {
    a.calls.clear();
    return {false, v.step, v.describe()};
  }
  try {
    a.calls = tools::map_plan_to_calls(*a.plan, snapshot);
  } catch (const tools::MappingError& e) {
    a.calls.clear();
    return {false, e.step(), e.what()};
  }
  return {};
}

void Session::revise(const Revision& r) {
  std::unique_lock lock(mutex_);
  revise_locked(lock, r);
}

void Session::revise_locked(std::unique_lock<std::mutex>& lock, const Revision& r) {
  if (phase_ != Phase::kAwaitingApproval) {
    throw StateError(std::string("cannot revise while ") + to_string(phase_));
  }
  auto& a = *art_;
  const std::size_t n = mode_ == Mode::kDirect ? a.subtasks->steps.size() : a.plan->steps.size();
  switch (r.kind) {
    case Revision::Kind::kSwapOrder: {
      const bool units = mode_ == Mode::kDirect ? swap_first_units(a.subtasks->steps) : swap_first_units(a.plan->steps);
      if (!units) {
        if (n < 2) throw RevisionError("nothing to reorder in a " + std::to_string(n) + "-step plan");
        if (mode_ == Mode::kDirect) {
          swap_blocks(a.subtasks->steps, 0, 1, 1);
        } else {
          swap_blocks(a.plan->steps, 0, 1, 1);
        }
      }
      a.check = recheck(*a.basis);
      log("revision", {{"revision", r.to_json()}, {"check", a.check.to_json()}});
      publish_plan();
      return;
    }
    case Revision::Kind::kSwap:
    case Revision::Kind::kDelete: {
      if (r.length == 0) throw RevisionError("block length must be positive");
      if (r.kind == Revision::Kind::kSwap) {
        const std::size_t lo = std::min(r.i, r.j), hi = std::max(r.i, r.j);
        if (hi + r.length > n) throw RevisionError("swap index out of range for " + std::to_string(n) + " steps");
        if (lo + r.length > hi) throw RevisionError("swap blocks overlap");
        if (mode_ == Mode::kDirect) {
          swap_blocks(a.subtasks->steps, lo, hi, r.length);
        } else {
          swap_blocks(a.plan->steps, lo, hi, r.length);
        }
      } else {
        if (r.i + r.length > n) throw RevisionError("delete index out of range for " + std::to_string(n) + " steps");
        if (mode_ == Mode::kDirect) {
          erase_block(a.subtasks->steps, r.i, r.length);
        } else {
          erase_block(a.plan->steps, r.i, r.length);
        }
      }
      a.check = recheck(*a.basis);
      log("revision", {{"revision", r.to_json()}, {"check", a.check.to_json()}});
      publish_plan();
      return;
    }
    case Revision::Kind::kEditGoal: {
      if (mode_ != Mode::kNeuroSymbolic) throw RevisionError("edit-goal needs a pddl session");
      std::vector<pddl::Literal> goal;
      try {
        goal = pddl::parse_goal(r.text, env_.translator->domain(), a.problem->objects);
      } catch (const pddl::ParseError& e) {
        throw RevisionError(std::string("goal does not parse: ") + e.what());
      }
      a.fragment->goal = goal;
      log("revision", {{"revision", r.to_json()}});
      set_phase(Phase::kPlanning, "edit-goal");
      if (plan_stage(world())) {
        publish_plan();
        if (env_.auto_approve) approve_locked(true);
      }
      return;
    }
    case Revision::Kind::kReplaceInstruction:
      log("revision", {{"revision", r.to_json()}});
      run_pipeline(lock, r.text, true);
      return;
  }
}

void Session::stop(std::optional<double> at_ms) {
  std::lock_guard lock(mutex_);
  stop_locked(at_ms.value_or(clock_->now_ms()));
}

void Session::stop_locked(double requested_at) {
  if (phase_ != Phase::kExecuting) {
    log("notice", {{"message", std::string("stop ignored while ") + to_string(phase_)}});
    return;
  }
  if (!stop_pending_) {
    stop_pending_ = true;
    stop_requested_at_ = requested_at;
  }
}

void Session::resume() {
  std::lock_guard lock(mutex_);
  if (phase_ != Phase::kStopped) throw StateError(std::string("cannot resume while ") + to_string(phase_));
  resume_locked();
}

void Session::resume_locked() {
  if (call_index_ < art_->calls.size() && art_->calls[call_index_].finished()) {
    art_->calls[call_index_] = art_->calls[call_index_].fresh();
  }
  stop_pending_ = false;
  clock_->sync();
  set_phase(Phase::kExecuting, "resume");
}

void Session::halt(double now) {
  const double latency = std::max(0.0, now - stop_requested_at_);
  stop_pending_ = false;
  if (motion_) {
    motion_->preempt();
    art_->calls[call_index_] = motion_->call();
    log("tool-status", {{"index", call_index_},
                        {"call", motion_->call().to_string()},
                        {"status", "preempted"},
                        {"elapsed_ticks", motion_->elapsed_ticks()}});
    motion_.reset();
  }
  metrics_.stop_latency_ms.push_back(latency);
  log("stop-latency-sample", {{"latency_ms", latency}});
  set_phase(Phase::kStopped, "emergency-stop");
}

void Session::finish_call(double now) {
  const tools::ToolCall call = motion_->call();
  art_->calls[call_index_] = call;
  const double took = now - dispatched_at_;
  metrics_.step_ms.push_back(took);
  json p = {{"index", call_index_}, {"call", call.to_string()}, {"status", tools::to_string(call.status)},
            {"duration_ms", took}};
  if (!call.failure.empty()) p["reason"] = call.failure;
  log("tool-status", std::move(p));
  motion_.reset();
  if (call.status == tools::CallStatus::kFailed) {
    fail("execution", "call " + std::to_string(call_index_) + " failed: " + call.failure);
    return;
  }
  ++call_index_;
}

bool Session::tick() {
  std::unique_lock lock(mutex_);
  if (phase_ != Phase::kExecuting) return false;
  const double now = clock_->now_ms();
  if (stop_pending_) {
    halt(now);
    return true;
  }
  if (!motion_) {
    auto& calls = art_->calls;
    if (call_index_ >= calls.size()) {
      const world::WorldState w = world();
      if (mode_ == Mode::kNeuroSymbolic && !world::satisfies(world::abstract_state(w), art_->problem->goal)) {
        fail("execution", "goal does not hold after the last call");
      } else {
        set_phase(Phase::kCompleted);
      }
      return true;
    }
    {
      std::lock_guard wl(world_->mutex);
      const auto verdict = tools::validate_call(calls[call_index_], world_->world);
      if (!verdict.ok()) {
        calls[call_index_].start();
        calls[call_index_].fail(verdict.describe());
        log("tool-status", {{"index", call_index_},
                            {"call", calls[call_index_].to_string()},
                            {"status", "failed"},
                            {"reason", verdict.describe()}});
        fail("execution", "call " + std::to_string(call_index_) + " rejected at dispatch: " + verdict.describe());
        return true;
      }
      motion_.emplace(world::apply_tool(world_->world, calls[call_index_], env_.durations));
    }
    calls[call_index_] = motion_->call();
    dispatched_at_ = now;
    log("tool-status", {{"index", call_index_},
                        {"call", motion_->call().to_string()},
                        {"status", "running"},
                        {"ticks", motion_->total_ticks()}});
    if (motion_->done()) {
      finish_call(now);
      return true;
    }
  }

  const double tick_ms = world().tick_ms;
  lock.unlock();
  clock_->wait_tick(tick_ms);
  lock.lock();
  if (phase_ != Phase::kExecuting || !motion_) return true;
  bool finished;
  {
    std::lock_guard wl(world_->mutex);
    finished = motion_->advance(world_->world);
  }
  if (finished) finish_call(clock_->now_ms());
  return true;
}

void Session::run() {
  while (tick()) {
  }
}

bool Session::wait_executing(std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  return cv_.wait_for(lock, timeout, [&] { return shut_ || phase_ == Phase::kExecuting; }) &&
         phase_ == Phase::kExecuting;
}

void Session::shutdown() {
  {
    std::lock_guard lock(mutex_);
    if (shut_) return;
    shut_ = true;
    if (phase_ == Phase::kExecuting) {
      if (motion_) {
        motion_->preempt();
        art_->calls[call_index_] = motion_->call();
        log("tool-status", {{"index", call_index_}, {"call", motion_->call().to_string()}, {"status", "preempted"}});
        motion_.reset();
      }
      set_phase(Phase::kStopped, "shutdown");
    }
    cv_.notify_all();
  }
  events_.close();
}

SessionMetrics Session::metrics() const {
  std::lock_guard lock(mutex_);
  return metrics_;
}

std::vector<tools::ToolCall> Session::calls() const {
  std::lock_guard lock(mutex_);
  return art_->calls;
}

std::optional<pddl::Plan> Session::plan() const {
  std::lock_guard lock(mutex_);
  return art_->plan;
}

std::optional<pddl::Problem> Session::problem() const {
  std::lock_guard lock(mutex_);
  return art_->problem;
}

std::optional<translator::ProblemFragment> Session::fragment() const {
  std::lock_guard lock(mutex_);
  return art_->fragment;
}

std::optional<translator::SubtaskList> Session::subtasks() const {
  std::lock_guard lock(mutex_);
  return art_->subtasks;
}

std::string Session::raw_output() const {
  std::lock_guard lock(mutex_);
  return art_->raw_output;
}

PlanCheck Session::check() const {
  std::lock_guard lock(mutex_);
  return art_->check;
}

std::string Session::instruction() const {
  std::lock_guard lock(mutex_);
  return art_->instruction;
}

json Session::to_json() const {
  std::lock_guard lock(mutex_);
  const auto& a = *art_;
  json j = {{"id", id_},
            {"mode", to_string(mode_)},
            {"translator", env_.translator->spec().to_string()},
            {"phase", to_string(phase_)},
            {"instruction", a.instruction},
            {"call_index", call_index_},
            {"check", a.check.to_json()},
            {"metrics", metrics_.to_json()},
            {"last_seq", events_.last_seq()}};
  if (!reason_.empty()) j["reason"] = reason_;
  if (a.problem) j["problem"] = pddl::print_problem(*a.problem);
  if (a.plan) j["plan"] = pddl::print_plan(*a.plan);
  json calls = json::array();
  for (const auto& c : a.calls) calls.push_back(tools::to_json(c));
  j["calls"] = calls;
  if (!a.raw_output.empty()) j["raw_output"] = a.raw_output;
  return j;
}

}  // namespace lam::orchestrator
