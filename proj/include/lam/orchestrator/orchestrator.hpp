#pragma once

#include "lam/orchestrator/session.hpp"

#include <map>
#include <thread>

namespace lam::orchestrator {

/// Everything needed to build a translator of any kind.
struct TranslatorResources {
  translator::RuleSet rules;
  pddl::Domain domain;
  translator::PromptTemplates prompts;
  translator::LlmEndpoint endpoint;

  std::shared_ptr<const translator::Translator> make(const translator::TranslatorSpec& spec) const;
};

struct OrchestratorConfig {
  /// Template for every session; its translator is replaced per session.
  SessionEnv env;
  /// Wall-clock ticks driven by one worker thread per session. When false
  /// sessions get virtual clocks and the caller drives tick().
  bool realtime = true;
  /// All sessions act on one world instead of a copy each.
  bool shared_world = false;
};

/// Owns sessions and their execution workers.
class Orchestrator {
 public:
  Orchestrator(world::WorldState initial, TranslatorResources resources, OrchestratorConfig config);
  ~Orchestrator();
  Orchestrator(const Orchestrator&) = delete;
  Orchestrator& operator=(const Orchestrator&) = delete;

  /// Ids are "s1", "s2", ... in creation order.
  std::shared_ptr<Session> create(Mode mode, const translator::TranslatorSpec& spec);
  std::shared_ptr<Session> find(const std::string& id) const;
  std::vector<std::string> ids() const;

  /// The shared world, or the initial world sessions are copied from.
  world::WorldState world() const;
  const OrchestratorConfig& config() const { return config_; }
  const TranslatorResources& resources() const { return resources_; }

  /// Preempts every running motion and joins the workers. Idempotent.
  void shutdown();

 private:
  world::WorldState initial_;
  TranslatorResources resources_;
  OrchestratorConfig config_;
  std::shared_ptr<WorldCell> shared_;

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::vector<std::thread> workers_;
  std::atomic<bool> stopping_{false};
  int next_id_ = 1;
};

}  // namespace lam::orchestrator
