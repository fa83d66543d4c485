#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "lam/world/world_state.hpp"

namespace lam::world {

struct CameraIntrinsics {
  double fx = 600.0;
  double fy = 600.0;
  double cx = 320.0;
  double cy = 240.0;
  int width = 640;
  int height = 480;

  /// Throws std::invalid_argument unless fx, fy > 0 and the principal point
  /// lies inside the image.
  void validate() const;
};

/// Rigid transform taking camera-frame points to the world frame.
struct CameraExtrinsics {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();

  /// Overhead camera at `position` looking straight down, image rows running
  /// toward the viewer (-y).
  static CameraExtrinsics overhead(const Vec3& position);

  Vec3 to_world(const Vec3& camera_point) const { return rotation * camera_point + translation; }
  Vec3 to_camera(const Vec3& world_point) const {
    return rotation.transpose() * (world_point - translation);
  }
};

struct PixelCoord {
  double u = 0.0;
  double v = 0.0;
  /// Distance along the optical axis, meters.
  double depth = 0.0;
};

/// Back-projects a pixel and its depth into the camera frame:
/// x = (u - cx) d / fx, y = (v - cy) d / fy, z = d.
/// Throws std::domain_error for non-positive depth.
Vec3 pixel_to_real(const PixelCoord& pixel, const CameraIntrinsics& k);

/// Pinhole projection of a camera-frame point. Throws std::domain_error for
/// points at or behind the camera.
PixelCoord project(const Vec3& camera_point, const CameraIntrinsics& k);

struct NoiseModel {
  double sigma_px = 0.0;
  double sigma_depth = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Observation {
  std::string name;
  PixelCoord pixel;
};

/// Projects every object centroid and perturbs (u, v, depth) with seeded
/// Gaussian noise. The standard-normal draws are independent of the sigmas,
/// so the same seed yields errors that scale with them. Throws
/// std::invalid_argument if a centroid falls outside the image.
std::vector<Observation> synth_observation(const WorldState& world, const CameraIntrinsics& k,
                                           const CameraExtrinsics& pose, const NoiseModel& noise);

/// World-frame position recovered from an observation.
Vec3 recover_position(const Observation& obs, const CameraIntrinsics& k,
                      const CameraExtrinsics& pose);

}  // namespace lam::world
