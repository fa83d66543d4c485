#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "lam/orchestrator/orchestrator.hpp"

namespace lam::gateway {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Service configuration. Relative paths are resolved against the directory
/// of the config file. Unknown keys are rejected.
///
///   {"host": "127.0.0.1", "port": 8080, "tick_ms": 50,
///    "scene": "scenes/scene_1.json", "data_dir": ".",
///    "translator": {"url": "...", "model": "...", "api_key_env": "LAM_LLM_API_KEY",
///                   "temperature": 0, "timeout_s": 60, "retries": 1},
///    "tool_ticks": {"pick": 30}, "gate": {"buffering": true},
///    "auto_approve": false, "shared_world": false}
struct GatewayConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  double tick_ms = 50.0;
  std::string scene;
  std::string data_dir;
  translator::LlmEndpoint endpoint;
  nlohmann::json tool_ticks = nlohmann::json::object();
  bool gate_buffering = true;
  bool auto_approve = false;
  bool shared_world = false;

  static GatewayConfig from_json(const nlohmann::json& j, const std::string& base_dir = ".");
  static GatewayConfig load(const std::string& path);
};

/// Directory of the bundled domain, rules, prompts and scenes: $LAM_DATA_DIR
/// if set, else the source tree's data directory.
std::string default_data_dir();

/// Domain, translation rules and prompt templates from `data_dir`.
orchestrator::TranslatorResources load_resources(const std::string& data_dir, translator::LlmEndpoint endpoint = {});

}  // namespace lam::gateway
