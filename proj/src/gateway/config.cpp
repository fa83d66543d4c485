#include "lam/gateway/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "lam/pddl/parser.hpp"

#ifndef LAM_DEFAULT_DATA_DIR
#define LAM_DEFAULT_DATA_DIR "data"
#endif

namespace lam::gateway {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

template <typename T>
T field(const json& j, const char* key, const char* what) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: '") + key + "' must be " + what);
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

GatewayConfig GatewayConfig::from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {"host",       "port", "tick_ms", "scene",        "data_dir",
                                              "translator", "tool_ticks", "gate", "auto_approve", "shared_world"};
  for (const auto& [k, _] : j.items()) {
    if (!known.count(k)) throw ConfigError("config: unknown key '" + k + "'");
  }
  GatewayConfig c;
  if (j.contains("host")) c.host = field<std::string>(j, "host", "a string");
  if (j.contains("port")) {
    c.port = field<int>(j, "port", "an integer");
    if (c.port < 0 || c.port > 65535) throw ConfigError("config: port out of range");
  }
  if (j.contains("tick_ms")) {
    c.tick_ms = field<double>(j, "tick_ms", "a number");
    if (!(c.tick_ms > 0.0)) throw ConfigError("config: tick_ms must be positive");
  }
  c.data_dir = j.contains("data_dir") ? resolve(base_dir, field<std::string>(j, "data_dir", "a string"))
                                      : default_data_dir();
  c.scene = j.contains("scene") ? resolve(base_dir, field<std::string>(j, "scene", "a string"))
                                : (fs::path(c.data_dir) / "scenes" / "scene_1.json").string();
  if (j.contains("translator")) {
    const json& t = j["translator"];
    if (!t.is_object()) throw ConfigError("config: 'translator' must be an object");
    if (t.contains("url")) c.endpoint.url = field<std::string>(t, "url", "a string");
    if (t.contains("model")) c.endpoint.model = field<std::string>(t, "model", "a string");
    if (t.contains("api_key")) c.endpoint.api_key = field<std::string>(t, "api_key", "a string");
    if (t.contains("api_key_env")) {
      const char* v = std::getenv(field<std::string>(t, "api_key_env", "a string").c_str());
      if (v && c.endpoint.api_key.empty()) c.endpoint.api_key = v;
    }
    if (t.contains("temperature")) c.endpoint.temperature = field<double>(t, "temperature", "a number");
    if (t.contains("timeout_s")) c.endpoint.timeout_s = field<double>(t, "timeout_s", "a number");
    if (t.contains("retries")) c.endpoint.retries = field<int>(t, "retries", "an integer");
  }
  c.endpoint = translator::LlmEndpoint::from_env(c.endpoint);
  if (j.contains("tool_ticks")) {
    c.tool_ticks = j["tool_ticks"];
    try {
      tools::ToolDurations::from_json(c.tool_ticks);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config: tool_ticks: ") + e.what());
    }
  }
  if (j.contains("gate")) {
    const json& g = j["gate"];
    if (!g.is_object()) throw ConfigError("config: 'gate' must be an object");
    if (g.contains("buffering")) c.gate_buffering = field<bool>(g, "buffering", "a boolean");
  }
  if (j.contains("auto_approve")) c.auto_approve = field<bool>(j, "auto_approve", "a boolean");
  if (j.contains("shared_world")) c.shared_world = field<bool>(j, "shared_world", "a boolean");
  return c;
}

GatewayConfig GatewayConfig::load(const std::string& path) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return from_json(j, fs::path(path).parent_path().string());
}

std::string default_data_dir() {
  const char* v = std::getenv("LAM_DATA_DIR");
  return v && *v ? v : LAM_DEFAULT_DATA_DIR;
}

orchestrator::TranslatorResources load_resources(const std::string& data_dir, translator::LlmEndpoint endpoint) {
  const fs::path d(data_dir);
  try {
    return {translator::RuleSet::load((d / "translator_rules.txt").string()),
            pddl::parse_domain(slurp((d / "tabletop.pddl").string())),
            translator::PromptTemplates::load((d / "prompts").string()), std::move(endpoint)};
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("cannot load bundled data from " + data_dir + ": " + e.what());
  }
}

}  // namespace lam::gateway
