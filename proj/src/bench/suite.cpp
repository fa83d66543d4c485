#include "lam/bench/suite.hpp"

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <set>

namespace lam::bench {

Suite load_suite(const std::string& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw SuiteError("suite file not found: " + path);
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw SuiteError("cannot parse " + path + ": " + e.what());
  }
  const fs::path base = fs::path(path).parent_path();
  Suite suite;
  suite.name = root["suite"] ? root["suite"].as<std::string>() : fs::path(path).stem().string();
  if (!root["tasks"] || !root["tasks"].IsSequence()) throw SuiteError(path + ": 'tasks' must be a list");
  std::set<std::string> seen;
  for (const auto& node : root["tasks"]) {
    TaskSpec t;
    for (const char* key : {"id", "sentence", "scene", "goal"}) {
      if (!node[key]) throw SuiteError(path + ": task is missing '" + key + "'");
    }
    try {
      t.id = node["id"].as<std::string>();
      t.sentence = node["sentence"].as<std::string>();
      t.scene = (base / node["scene"].as<std::string>()).lexically_normal().string();
      if (!node["goal"].IsSequence() || node["goal"].size() == 0) {
        throw SuiteError(path + ": task " + t.id + " needs a non-empty goal list");
      }
      for (const auto& g : node["goal"]) t.goal.push_back(g.as<std::string>());
    } catch (const YAML::Exception& e) {
      throw SuiteError(path + ": " + e.what());
    }
    if (!seen.insert(t.id).second) throw SuiteError(path + ": duplicate task id " + t.id);
    suite.tasks.push_back(std::move(t));
  }
  return suite;
}

}  // namespace lam::bench
