#include "lam/bench/latency.hpp"

#include <fmt/format.h>

#include <random>
#include <stdexcept>
#include <thread>

#include "lam/world/scene_io.hpp"

namespace lam::bench {

using nlohmann::json;
using orchestrator::Phase;
using orchestrator::Session;

json LatencyReport::to_json() const {
  return {{"tick_ms", tick_ms},
          {"samples_ms", samples_ms},
          {"mean_ms", summary.mean},
          {"std_ms", summary.std},
          {"n", summary.n},
          {"over_bound", over_bound},
          {"between_calls", between_calls},
          {"resume_mismatches", resume_mismatches}};
}

std::string LatencyReport::describe() const {
  return fmt::format("{} ms over {} trials (tick {:g} ms, bound {:g} ms)", format_pm(summary, 1), summary.n, tick_ms,
                     2.0 * tick_ms);
}

namespace {

std::unique_ptr<Session> make_session(const LatencyConfig& config, const BenchContext& ctx,
                                      const world::WorldState& w, bool realtime) {
  orchestrator::SessionEnv env = ctx.env;
  env.auto_approve = true;
  env.translator = ctx.resources.make(translator::TranslatorSpec{});
  auto cell = std::make_shared<orchestrator::WorldCell>();
  cell->world = w;
  std::unique_ptr<orchestrator::Clock> clock;
  if (realtime) {
    clock = std::make_unique<orchestrator::RealClock>();
  } else {
    clock = std::make_unique<orchestrator::VirtualClock>();
  }
  return std::make_unique<Session>("latency", config.mode, std::move(env), cell, std::move(clock));
}

void require_executing(const Session& s) {
  if (s.phase() != Phase::kExecuting) {
    throw std::runtime_error("latency instruction did not reach execution: " + s.failure_reason());
  }
}

bool motion_running(const Session& s) {
  const auto events = s.events().all();
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    if (it->kind != "tool-status") continue;
    return it->payload.value("status", "") == "running";
  }
  return false;
}

}  // namespace

LatencyReport run_stop_latency(const LatencyConfig& config, const BenchContext& ctx) {
  if (config.trials <= 0) throw std::invalid_argument("stop-latency needs at least one trial");
  if (!(config.tick_ms > 0.0)) throw std::invalid_argument("tick must be positive");
  world::WorldState w = world::load_scene(config.scene).world;
  w.tick_ms = config.tick_ms;

  LatencyReport report;
  report.tick_ms = config.tick_ms;

  // Reference run without interruption.
  auto reference = make_session(config, ctx, w, false);
  reference->transcript(config.instruction);
  require_executing(*reference);
  reference->run();
  const std::uint64_t reference_hash = reference->world().content_hash();
  const double total_ms = reference->now_ms();
  const double window = std::min(config.window_ms, 0.8 * total_ms);

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> when(0.0, window);
  std::vector<double> targets;
  for (int t = 0; t < config.trials; ++t) targets.push_back(when(rng));

  auto finish = [&](Session& s, double latency, bool idle) {
    report.samples_ms.push_back(latency);
    if (latency > 2.0 * config.tick_ms) ++report.over_bound;
    if (idle) ++report.between_calls;
    if (config.check_resume && !config.realtime && s.phase() == Phase::kStopped) {
      s.transcript("okay");
      s.run();
      if (s.world().content_hash() != reference_hash) ++report.resume_mismatches;
    }
  };

  if (!config.realtime) {
    for (double target : targets) {
      auto s = make_session(config, ctx, w, false);
      s->transcript(config.instruction);
      require_executing(*s);
      while (s->phase() == Phase::kExecuting && s->now_ms() < target) s->tick();
      const bool idle = !motion_running(*s);
      s->transcript("STOP", target);
      s->tick();
      const auto lat = s->metrics().stop_latency_ms;
      if (lat.empty()) throw std::runtime_error("stop was not honoured");
      finish(*s, lat.front(), idle);
    }
  } else {
    const std::size_t batch = static_cast<std::size_t>(std::max(1, config.parallel));
    for (std::size_t start = 0; start < targets.size(); start += batch) {
      const std::size_t end = std::min(targets.size(), start + batch);
      std::vector<std::unique_ptr<Session>> sessions;
      std::vector<std::thread> workers;
      std::vector<std::thread> stoppers;
      for (std::size_t i = start; i < end; ++i) {
        sessions.push_back(make_session(config, ctx, w, true));
        Session& s = *sessions.back();
        s.transcript(config.instruction);
        require_executing(s);
        workers.emplace_back([&s] { s.run(); });
        stoppers.emplace_back([&s, delay = targets[i]] {
          std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(delay));
          s.transcript("STOP");
        });
      }
      for (auto& t : stoppers) t.join();
      for (auto& t : workers) t.join();
      for (auto& s : sessions) {
        const auto lat = s->metrics().stop_latency_ms;
        if (lat.empty()) throw std::runtime_error("stop was not honoured");
        finish(*s, lat.front(), false);
      }
    }
  }
  report.summary = mean_std(report.samples_ms);
  return report;
}

}  // namespace lam::bench
