#include "lam/bench/perception.hpp"

#include "lam/world/camera.hpp"
#include "lam/world/scene_graph.hpp"

namespace lam::bench {

using nlohmann::json;

json PerceptionMetrics::to_json(bool with_trials) const {
  json j = {{"sigma_px", sigma_px},   {"sigma_depth", sigma_depth}, {"accuracy", accuracy},
            {"rmse", rmse},           {"rmse_ci", {rmse_ci.lo, rmse_ci.hi}}, {"points", points}};
  if (with_trials) {
    json ts = json::array();
    for (const auto& t : trials) {
      json objs = json::array();
      for (std::size_t i = 0; i < t.objects.size(); ++i) {
        objs.push_back({{"name", t.objects[i]},
                        {"truth", {t.truth[i].x(), t.truth[i].y(), t.truth[i].z()}},
                        {"recovered", {t.recovered[i].x(), t.recovered[i].y(), t.recovered[i].z()}}});
      }
      json conf = json::object();
      for (const auto& [p, c] : t.confusion) conf[p] = {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}};
      ts.push_back({{"scene", t.scene}, {"repeat", t.repeat}, {"objects", objs}, {"confusion", conf}});
    }
    j["trials"] = ts;
  }
  return j;
}

PerceptionMetrics run_perception_eval(const std::vector<world::Scene>& scenes, const PerceptionConfig& config) {
  PerceptionMetrics m;
  m.sigma_px = config.sigma_px;
  m.sigma_depth = config.sigma_depth;
  std::vector<double> errors;
  std::size_t checks = 0, correct = 0;

  for (const auto& scene : scenes) {
    const world::SceneGraph truth_graph = world::derive_scene_graph(scene.world, config.tau);
    for (int r = 0; r < config.repeats; ++r) {
      world::NoiseModel noise{config.sigma_px, config.sigma_depth, scene.noise.seed * 1000 + static_cast<std::uint64_t>(r)};
      const auto obs = world::synth_observation(scene.world, scene.intrinsics, scene.extrinsics, noise);
      PerceptionTrial t;
      t.scene = scene.name;
      t.repeat = r;
      world::WorldState seen = scene.world;
      for (const auto& o : obs) {
        const world::Vec3 p = world::recover_position(o, scene.intrinsics, scene.extrinsics);
        const world::Vec3 truth = scene.world.objects.at(o.name).position;
        t.objects.push_back(o.name);
        t.truth.push_back(truth);
        t.recovered.push_back(p);
        seen.objects.at(o.name).position = p;
        const double err = (p - truth).norm();
        errors.push_back(err);
        ++t.position_checks;
        if (err <= config.tolerance) ++t.position_correct;
      }
      const world::SceneGraph seen_graph = world::derive_scene_graph(seen, config.tau);
      for (const auto& pred : world::relation_predicates()) {
        auto& c = t.confusion[pred];
        for (const auto& a : truth_graph.nodes) {
          for (const auto& b : truth_graph.nodes) {
            if (a == b) continue;
            const bool want = truth_graph.holds(pred, a, b);
            const bool got = seen_graph.holds(pred, a, b);
            ++t.predicate_checks;
            if (want == got) ++t.predicate_correct;
            if (want && got) ++c.tp;
            if (!want && got) ++c.fp;
            if (want && !got) ++c.fn;
            if (!want && !got) ++c.tn;
          }
        }
      }
      checks += t.position_checks + t.predicate_checks;
      correct += t.position_correct + t.predicate_correct;
      m.trials.push_back(std::move(t));
    }
  }
  m.points = errors.size();
  m.accuracy = checks == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(checks);
  m.rmse = rms(errors);
  m.rmse_ci = bootstrap_ci(errors, rms, config.bootstrap_resamples, 0.95, config.bootstrap_seed);
  return m;
}

std::vector<PerceptionMetrics> run_noise_grid(const std::vector<world::Scene>& scenes,
                                              const std::vector<double>& grid, double depth_per_px,
                                              PerceptionConfig config) {
  std::vector<PerceptionMetrics> out;
  for (double s : grid) {
    config.sigma_px = s;
    config.sigma_depth = s * depth_per_px;
    out.push_back(run_perception_eval(scenes, config));
  }
  return out;
}

}  // namespace lam::bench
