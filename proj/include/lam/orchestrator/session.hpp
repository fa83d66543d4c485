#pragma once

// Eigen-bearing headers first; see the note in the gateway sources.
#include "lam/pddl/grounding.hpp"
#include "lam/planner/search.hpp"
#include "lam/tools/registry.hpp"
#include "lam/translator/translator.hpp"
#include "lam/world/motion.hpp"

#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lam/gate/command_gate.hpp"
#include "lam/orchestrator/clock.hpp"
#include "lam/orchestrator/events.hpp"

namespace lam::orchestrator {

enum class Phase { kIdle, kTranslating, kPlanning, kAwaitingApproval, kExecuting, kCompleted, kFailed, kStopped };
const char* to_string(Phase phase);

enum class Mode { kDirect, kNeuroSymbolic };
const char* to_string(Mode mode);
/// "direct", "pddl" or "neuro-symbolic". Throws std::invalid_argument.
Mode mode_from_string(const std::string& text);

/// The operation is not allowed in the session's current phase.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A revision request that cannot be applied (bad indices, wrong mode).
/// The session is left untouched.
class RevisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Revision {
  /// kSwapOrder exchanges the first two pick-and-place units of the plan,
  /// falling back to the first two steps when there is only one unit.
  enum class Kind { kSwap, kDelete, kEditGoal, kReplaceInstruction, kSwapOrder };
  Kind kind = Kind::kSwap;
  std::size_t i = 0;
  std::size_t j = 0;
  /// Block length for swap and delete.
  std::size_t length = 1;
  std::string text;

  /// {"op":"swap","i":0,"j":2,"len":2} | {"op":"delete","i":1} |
  /// {"op":"edit-goal","goal":"(on a b)"} | {"op":"replace-instruction","instruction":"..."} |
  /// {"op":"swap-order"}
  static Revision from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Spoken corrections understood while a plan awaits approval: "swap the
/// action order", "swap steps 1 and 2", "delete step 3" (steps are 1-based).
std::optional<Revision> parse_correction(const std::string& line);

/// World storage. Sessions normally own one each; with a shared world,
/// several sessions point at the same cell and take turns writing it.
struct WorldCell {
  std::mutex mutex;
  world::WorldState world;
};

struct SessionEnv {
  std::shared_ptr<const translator::Translator> translator;
  tools::ToolDurations durations = tools::ToolDurations::defaults();
  planner::SearchConfig search;
  pddl::GroundingOptions grounding;
  gate::GateConfig gate;
  double tolerance = 0.02;
  /// Approve plans as soon as they are ready. The approval event is marked
  /// synthetic.
  bool auto_approve = false;
};

/// Outcome of checking the current plan or subtask list before approval.
struct PlanCheck {
  bool valid = true;
  std::size_t step = 0;
  std::string violation;
  nlohmann::json to_json() const;
};

struct SessionMetrics {
  int translator_requests = 0;
  std::optional<long> prompt_tokens;
  std::optional<long> completion_tokens;
  bool fault_injected = false;
  bool searched = false;
  planner::SearchStatistics search;
  int replans = 0;
  /// Clock time from dispatch to completion of each finished call.
  std::vector<double> step_ms;
  std::vector<double> stop_latency_ms;
  nlohmann::json to_json() const;
};

/// One operator session: a phase machine over translation, planning,
/// approval and tick-driven execution. All members are thread safe. The
/// execution loop is driven from outside through tick(); stop() only sets a
/// flag that the next tick boundary honours.
class Session {
 public:
  Session(std::string id, Mode mode, SessionEnv env, std::shared_ptr<WorldCell> world,
          std::unique_ptr<Clock> clock);
  ~Session();

  const std::string& id() const { return id_; }
  Mode mode() const { return mode_; }
  Phase phase() const;
  std::string failure_reason() const;

  /// Feeds one transcript line through the command gate. A forwarded
  /// command is submitted, an emergency stop stops and a resume resumes.
  gate::GateEvent transcript(const std::string& line, std::optional<double> at_ms = std::nullopt);

  /// Translates and plans `instruction` from idle, completed, failed or
  /// stopped. Ends in awaiting-approval (or executing with auto-approve) or
  /// failed. Never touches the world.
  void submit(const std::string& instruction);
  /// Starts execution. Replans first, and stays out of executing, when the
  /// world changed since planning. Throws StateError outside
  /// awaiting-approval or while the plan is invalid.
  void approve();
  /// Throws StateError outside awaiting-approval and RevisionError for bad
  /// requests.
  void revise(const Revision& revision);
  /// Safety path. Never throws; outside executing it only logs a no-op.
  /// `at_ms` backdates the request for virtual-time measurements.
  void stop(std::optional<double> at_ms = std::nullopt);
  /// Restarts the preempted call from the current state. Throws StateError
  /// unless stopped.
  void resume();

  /// One tick of the execution loop. Returns false when not executing.
  bool tick();
  /// Ticks until the session leaves executing.
  void run();
  /// Blocks until the session is executing or the timeout expires.
  bool wait_executing(std::chrono::milliseconds timeout) const;
  /// Halts any running motion and closes the event log.
  void shutdown();

  world::WorldState world() const;
  /// Replaces the world, e.g. to simulate an external disturbance.
  void set_world(const world::WorldState& world);
  const EventLog& events() const { return events_; }
  SessionMetrics metrics() const;
  std::vector<tools::ToolCall> calls() const;
  std::optional<pddl::Plan> plan() const;
  std::optional<pddl::Problem> problem() const;
  std::optional<translator::ProblemFragment> fragment() const;
  std::optional<translator::SubtaskList> subtasks() const;
  /// Translator output that failed validation, verbatim.
  std::string raw_output() const;
  PlanCheck check() const;
  std::string instruction() const;
  double now_ms() const { return clock_->now_ms(); }
  nlohmann::json to_json() const;

 private:
  struct Artifacts;

  void set_phase(Phase next, const std::string& reason = {});
  void log(const std::string& kind, nlohmann::json payload);
  void fail(const std::string& stage, const std::string& message, const nlohmann::json& extra = {});
  void run_pipeline(std::unique_lock<std::mutex>& lock, const std::string& instruction, bool translate);
  void revise_locked(std::unique_lock<std::mutex>& lock, const Revision& revision);
  bool plan_stage(const world::WorldState& snapshot);
  void publish_plan();
  void start_execution(bool synthetic);
  void approve_locked(bool synthetic);
  void stop_locked(double requested_at);
  void resume_locked();
  PlanCheck recheck(const world::WorldState& snapshot);
  void halt(double now);
  void finish_call(double now);

  const std::string id_;
  const Mode mode_;
  SessionEnv env_;
  std::shared_ptr<WorldCell> world_;
  std::unique_ptr<Clock> clock_;
  gate::CommandGate gate_;
  EventLog events_;

  mutable std::mutex mutex_;
  mutable std::condition_variable cv_;
  Phase phase_ = Phase::kIdle;
  std::string reason_;
  std::unique_ptr<Artifacts> art_;
  SessionMetrics metrics_;

  std::size_t call_index_ = 0;
  std::optional<world::MotionHandle> motion_;
  double dispatched_at_ = 0.0;
  bool stop_pending_ = false;
  double stop_requested_at_ = 0.0;
  bool shut_ = false;
};

}  // namespace lam::orchestrator
