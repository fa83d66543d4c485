#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "lam/pddl/parser.hpp"

namespace lam::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& rel) { return std::string(LAM_DATA_DIR) + "/" + rel; }

inline pddl::Domain tabletop_domain() { return pddl::parse_domain(read_file(data_path("tabletop.pddl"))); }

inline std::string scene_path(int n) { return data_path("scenes/scene_" + std::to_string(n) + ".json"); }

}  // namespace lam::testing
