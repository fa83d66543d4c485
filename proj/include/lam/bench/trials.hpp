#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lam/bench/stats.hpp"
#include "lam/bench/suite.hpp"
#include "lam/orchestrator/orchestrator.hpp"

namespace lam::bench {

enum class TrialOutcome { kSuccess, kTranslationFail, kUnsolvable, kExecutionFail };
const char* to_string(TrialOutcome outcome);

struct TrialRecord {
  std::string task;
  orchestrator::Mode mode = orchestrator::Mode::kNeuroSymbolic;
  std::string translator;
  int trial = 0;
  std::uint64_t seed = 0;
  TrialOutcome outcome = TrialOutcome::kSuccess;
  std::string reason;
  std::vector<double> step_ms;
  int translator_requests = 0;
  std::optional<long> tokens;
  std::vector<double> stop_latency_ms;
  bool fault_injected = false;
  /// The world's content hash differs from the scene it started from.
  bool world_mutated = false;
  /// Every dispatched call was preceded by an approval event.
  bool approval_audit_ok = true;

  bool success() const { return outcome == TrialOutcome::kSuccess; }
  nlohmann::json to_json() const;
};

/// Shared inputs of a benchmark run.
struct BenchContext {
  orchestrator::TranslatorResources resources;
  orchestrator::SessionEnv env;
};

/// Seed for one trial, derived from the run seed and the trial index.
std::uint64_t trial_seed(std::uint64_t run_seed, int trial);

/// Runs one task on a fresh copy of its scene with a virtual clock and
/// auto-approval. Success iff the session completes and the task's goal
/// atoms hold in the final world abstraction.
TrialRecord run_trial(const TaskSpec& task, orchestrator::Mode mode, translator::TranslatorSpec spec, int trial,
                      std::uint64_t run_seed, const BenchContext& ctx);

/// Every task x mode x trial, in that nesting order.
std::vector<TrialRecord> run_suite(const Suite& suite, const std::vector<orchestrator::Mode>& modes,
                                   const translator::TranslatorSpec& spec, int trials, std::uint64_t seed,
                                   const BenchContext& ctx);

struct ModeSummary {
  orchestrator::Mode mode = orchestrator::Mode::kNeuroSymbolic;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t translation_fail = 0;
  std::size_t unsolvable = 0;
  std::size_t execution_fail = 0;
  /// Failed trials with an injected fault whose world changed anyway.
  /// Must stay zero.
  std::size_t unsafe = 0;
  std::size_t steps = 0;
  MeanStd step_ms;
  double requests_per_step = 0.0;
  std::optional<double> tokens_per_trial;
  double success_percent() const;
};

struct SuiteSummary {
  std::vector<ModeSummary> modes;
  std::optional<WelchResult> step_time_test;
  nlohmann::json to_json() const;
};

/// Order independent: permuting `records` gives the same summary.
SuiteSummary summarize(const std::vector<TrialRecord>& records);

/// Text table with one row per reported quantity and one column per mode,
/// followed by the external reference figures.
std::string format_table(const SuiteSummary& summary);

}  // namespace lam::bench
