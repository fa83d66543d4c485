#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "lam/world/camera.hpp"
#include "lam/world/world_state.hpp"

namespace lam::world {

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A spawned world plus the sensing configuration it was described with.
struct Scene {
  std::string name;
  WorldState world;
  CameraIntrinsics intrinsics;
  CameraExtrinsics extrinsics = CameraExtrinsics::overhead({0.0, 0.3, 0.8});
  NoiseModel noise;
};

/// Builds a scene from its JSON description. Positions of stacked, contained
/// and held objects are derived from their support; table objects need an
/// (x, y) position, z defaults to the half height. Throws SceneError on
/// duplicate names, dangling or cyclic supports, overlapping table
/// footprints, or a world that violates its invariants.
Scene spawn_scene(const nlohmann::json& spec);
Scene load_scene(const std::string& path);

/// Seeded random scene of `n` objects on a table grid, a few of them stacked.
Scene random_scene(std::uint64_t seed, int n);

nlohmann::json scene_to_json(const Scene& scene);
nlohmann::json world_to_json(const WorldState& world);

/// Height of the top face of `name` (recurses through its supports).
double top_of(const WorldState& world, const std::string& name);

/// First table spot, starting at the object's rest position and then
/// scanning a fixed grid, whose footprint is free of every other table
/// object. Throws SceneError if the grid is full.
Eigen::Vector2d free_table_spot(const WorldState& world, const std::string& name);

/// Recomputes positions of everything resting on, inside or held above the
/// objects in the world, after a support change.
void settle(WorldState& world);

}  // namespace lam::world
