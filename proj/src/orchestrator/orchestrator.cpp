#include "lam/orchestrator/orchestrator.hpp"

namespace lam::orchestrator {

std::shared_ptr<const translator::Translator> TranslatorResources::make(const translator::TranslatorSpec& spec) const {
  return std::make_shared<const translator::Translator>(spec, rules, domain, prompts, endpoint);
}

Orchestrator::Orchestrator(world::WorldState initial, TranslatorResources resources, OrchestratorConfig config)
    : initial_(std::move(initial)), resources_(std::move(resources)), config_(std::move(config)) {
  if (config_.shared_world) {
    shared_ = std::make_shared<WorldCell>();
    shared_->world = initial_;
  }
}

Orchestrator::~Orchestrator() { shutdown(); }

std::shared_ptr<Session> Orchestrator::create(Mode mode, const translator::TranslatorSpec& spec) {
  SessionEnv env = config_.env;
  env.translator = resources_.make(spec);
  std::shared_ptr<WorldCell> cell = shared_;
  if (!cell) {
    cell = std::make_shared<WorldCell>();
    cell->world = initial_;
  }
  std::unique_ptr<Clock> clock;
  if (config_.realtime) {
    clock = std::make_unique<RealClock>();
  } else {
    clock = std::make_unique<VirtualClock>();
  }

  std::lock_guard lock(mutex_);
  if (stopping_) throw StateError("orchestrator is shutting down");
  const std::string id = "s" + std::to_string(next_id_++);
  auto session = std::make_shared<Session>(id, mode, std::move(env), cell, std::move(clock));
  sessions_[id] = session;
  if (config_.realtime) {
    workers_.emplace_back([this, session] {
      while (!stopping_) {
        if (session->wait_executing(std::chrono::milliseconds(100))) session->tick();
      }
    });
  }
  return session;
}

std::shared_ptr<Session> Orchestrator::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::vector<std::string> Orchestrator::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

world::WorldState Orchestrator::world() const {
  if (shared_) {
    std::lock_guard lock(shared_->mutex);
    return shared_->world;
  }
  return initial_;
}

void Orchestrator::shutdown() {
  std::vector<std::thread> workers;
  std::vector<std::shared_ptr<Session>> sessions;
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
    workers.swap(workers_);
    for (const auto& [_, s] : sessions_) sessions.push_back(s);
  }
  for (auto& s : sessions) s->shutdown();
  for (auto& t : workers) t.join();
}

}  // namespace lam::orchestrator
