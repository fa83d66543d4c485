#include "lam/world/camera.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lam::world {

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw std::invalid_argument("focal lengths must be positive");
  if (width <= 0 || height <= 0) throw std::invalid_argument("image size must be positive");
  if (!(cx >= 0.0 && cx < width) || !(cy >= 0.0 && cy < height)) {
    throw std::invalid_argument("principal point outside the image");
  }
}

CameraExtrinsics CameraExtrinsics::overhead(const Vec3& position) {
  CameraExtrinsics e;
  e.rotation << 1, 0, 0,
                0, -1, 0,
                0, 0, -1;
  e.translation = position;
  return e;
}

Vec3 pixel_to_real(const PixelCoord& pixel, const CameraIntrinsics& k) {
  if (!(pixel.depth > 0.0)) throw std::domain_error("depth must be positive");
  return {(pixel.u - k.cx) * pixel.depth / k.fx, (pixel.v - k.cy) * pixel.depth / k.fy, pixel.depth};
}

PixelCoord project(const Vec3& p, const CameraIntrinsics& k) {
  if (!(p.z() > 0.0)) throw std::domain_error("point is not in front of the camera");
  return {k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy, p.z()};
}

void NoiseModel::validate() const {
  if (!(sigma_px >= 0.0) || !(sigma_depth >= 0.0)) {
    throw std::invalid_argument("noise sigmas must be non-negative");
  }
}

std::vector<Observation> synth_observation(const WorldState& world, const CameraIntrinsics& k,
                                           const CameraExtrinsics& pose, const NoiseModel& noise) {
  k.validate();
  noise.validate();
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> standard(0.0, 1.0);
  std::vector<Observation> out;
  out.reserve(world.objects.size());
  for (const auto& [name, o] : world.objects) {
    PixelCoord px = project(pose.to_camera(o.position), k);
    if (px.u < 0.0 || px.u >= k.width || px.v < 0.0 || px.v >= k.height) {
      throw std::invalid_argument(name + " projects outside the image");
    }
    const double zu = standard(rng);
    const double zv = standard(rng);
    const double zd = standard(rng);
    px.u += noise.sigma_px * zu;
    px.v += noise.sigma_px * zv;
    px.depth = std::max(px.depth + noise.sigma_depth * zd, 1e-6);
    out.push_back({name, px});
  }
  return out;
}

Vec3 recover_position(const Observation& obs, const CameraIntrinsics& k,
                      const CameraExtrinsics& pose) {
  return pose.to_world(pixel_to_real(obs.pixel, k));
}

}  // namespace lam::world
