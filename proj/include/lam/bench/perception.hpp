#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lam/bench/stats.hpp"
#include "lam/world/scene_io.hpp"

namespace lam::bench {

struct PerceptionConfig {
  double sigma_px = 0.0;
  double sigma_depth = 0.0;
  /// Position checks pass within this Euclidean distance, meters.
  double tolerance = 0.02;
  /// Scene-graph tolerance used for both the true and recovered graphs.
  double tau = 0.02;
  /// Noise draws per scene; draw r uses seed scene.noise.seed * 1000 + r.
  int repeats = 20;
  int bootstrap_resamples = 2000;
  std::uint64_t bootstrap_seed = 7;
};

struct PredicateCounts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

struct PerceptionTrial {
  std::string scene;
  int repeat = 0;
  std::vector<std::string> objects;
  std::vector<world::Vec3> truth;
  std::vector<world::Vec3> recovered;
  std::size_t position_checks = 0;
  std::size_t position_correct = 0;
  std::size_t predicate_checks = 0;
  std::size_t predicate_correct = 0;
  std::map<std::string, PredicateCounts> confusion;
};

struct PerceptionMetrics {
  double sigma_px = 0.0;
  double sigma_depth = 0.0;
  /// Correct checks over all checks, positions and predicates together.
  double accuracy = 0.0;
  double rmse = 0.0;
  /// 95% percentile bootstrap interval of the RMSE.
  Interval rmse_ci;
  std::size_t points = 0;
  std::vector<PerceptionTrial> trials;
  nlohmann::json to_json(bool with_trials = false) const;
};

/// Observes every scene through its camera with the configured noise,
/// recovers positions and compares them, and the scene graph built from
/// them, against ground truth.
PerceptionMetrics run_perception_eval(const std::vector<world::Scene>& scenes, const PerceptionConfig& config);

/// The evaluation at sigma_px in `grid`, with depth noise scaled by
/// `depth_per_px` meters per pixel of sigma.
std::vector<PerceptionMetrics> run_noise_grid(const std::vector<world::Scene>& scenes,
                                              const std::vector<double>& grid, double depth_per_px,
                                              PerceptionConfig config);

}  // namespace lam::bench
