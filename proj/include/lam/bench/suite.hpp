#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lam::bench {

class SuiteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TaskSpec {
  std::string id;
  std::string sentence;
  /// Absolute path of the bound scene file.
  std::string scene;
  /// Atoms that must hold in the final world, e.g. "(in cup container)".
  std::vector<std::string> goal;
};

struct Suite {
  std::string name;
  std::vector<TaskSpec> tasks;
};

/// Reads a tasks.yaml file. Scene paths are resolved against the file's
/// directory. Throws SuiteError for missing files, missing fields or
/// duplicate task ids.
Suite load_suite(const std::string& path);

}  // namespace lam::bench
