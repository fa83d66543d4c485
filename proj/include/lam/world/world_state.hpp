#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace lam::world {

using Vec3 = Eigen::Vector3d;

/// What an object rests on. `ref` names the supporting object for kOn and
/// the container for kIn.
struct Support {
  enum class Kind { kTable, kOn, kHeld, kIn };
  Kind kind = Kind::kTable;
  std::string ref;

  static Support table() { return {Kind::kTable, {}}; }
  static Support held() { return {Kind::kHeld, {}}; }
  static Support on(std::string name) { return {Kind::kOn, std::move(name)}; }
  static Support in(std::string container) { return {Kind::kIn, std::move(container)}; }

  bool operator==(const Support&) const = default;
  /// "table", "held", "on:<name>", "in:<name>"
  std::string to_string() const;
  static Support parse(const std::string& text);
};

struct ObjectState {
  std::string cls;
  std::string color;
  Vec3 position = Vec3::Zero();
  Vec3 half_extents = Vec3::Constant(0.025);
  Support support;
  bool container = false;
  /// Where a put-down returns the object on the table, (x, y).
  Eigen::Vector2d rest_xy = Eigen::Vector2d::Zero();
};

struct RobotState {
  bool gripper_open = true;
  std::optional<std::string> held;
  /// Named location, or "pose" when `arm_pose` holds a Cartesian goal.
  std::string arm_location = "home";
  std::optional<Vec3> arm_pose;
};

/// Ground truth of the simulated tabletop. x points right, y away from the
/// camera, z up; the table top is z = 0.
struct WorldState {
  std::map<std::string, ObjectState> objects;
  RobotState robot;
  std::uint64_t tick = 0;
  double tick_ms = 50.0;

  const ObjectState* find(const std::string& name) const;
  ObjectState* find(const std::string& name);

  /// True when `name` is an item resting on the table or another item with
  /// nothing stacked on it.
  bool is_clear(const std::string& name) const;
  std::optional<std::string> object_on_top_of(const std::string& name) const;

  /// First violated invariant, if any: single held object consistent with the
  /// robot, acyclic support graph, existing references, finite positions.
  std::optional<std::string> invariant_violation() const;

  /// Hash of everything except the tick counter.
  std::uint64_t content_hash() const;
  /// Canonical text form hashed by content_hash().
  std::string canonical() const;
};

/// Classes treated as receptacles when a scene does not say otherwise.
bool is_container_class(const std::string& cls);

}  // namespace lam::world
