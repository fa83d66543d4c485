#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lam/bench/stats.hpp"
#include "lam/bench/trials.hpp"

namespace lam::bench {

struct LatencyConfig {
  int trials = 100;
  double tick_ms = 50.0;
  std::uint64_t seed = 1;
  /// Wall-clock execution with the STOP line injected from another thread.
  /// Otherwise virtual time, with the request placed at a seeded instant
  /// inside a tick.
  bool realtime = false;
  /// Upper end of the injection window, ms after execution starts.
  double window_ms = 1000.0;
  /// Real-time trials run this many sessions side by side.
  int parallel = 25;
  /// Resume after each stop and compare the final world with an
  /// uninterrupted run. Virtual time only.
  bool check_resume = true;
  std::string scene;
  std::string instruction;
  orchestrator::Mode mode = orchestrator::Mode::kNeuroSymbolic;
};

struct LatencyReport {
  double tick_ms = 0.0;
  std::vector<double> samples_ms;
  MeanStd summary;
  /// Samples above two ticks.
  int over_bound = 0;
  /// Trials whose resumed run ended in a different world than the
  /// uninterrupted one.
  int resume_mismatches = 0;
  /// Trials whose halt found no motion in flight.
  int between_calls = 0;
  nlohmann::json to_json() const;
  /// "12.3 ± 4.5 ms over 100 trials (tick 50 ms, bound 100 ms)"
  std::string describe() const;
};

/// Each trial plans the instruction with auto-approval, feeds "STOP" through
/// the command gate at a seeded point during execution and records the
/// gate-to-halt latency. Throws std::invalid_argument for trials <= 0.
LatencyReport run_stop_latency(const LatencyConfig& config, const BenchContext& ctx);

}  // namespace lam::bench
