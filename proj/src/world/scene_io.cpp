#include "lam/world/scene_io.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace lam::world {

using nlohmann::json;

namespace {

constexpr double kLiftHeight = 0.10;

Vec3 read_vec(const json& j, const std::string& what, bool allow_2d) {
  if (!j.is_array() || (j.size() != 3 && !(allow_2d && j.size() == 2))) {
    throw SceneError(what + " must be an array of " + (allow_2d ? "2 or 3" : "3") + " numbers");
  }
  Vec3 v = Vec3::Zero();
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SceneError(what + " must contain numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  if (!v.allFinite()) throw SceneError(what + " is not finite");
  return v;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

bool footprints_overlap(const ObjectState& a, const ObjectState& b) {
  return std::abs(a.position.x() - b.position.x()) < a.half_extents.x() + b.half_extents.x() &&
         std::abs(a.position.y() - b.position.y()) < a.half_extents.y() + b.half_extents.y();
}

const std::array<double, 7> kGridX = {-0.3, -0.2, -0.1, 0.0, 0.1, 0.2, 0.3};
const std::array<double, 5> kGridY = {0.1, 0.2, 0.3, 0.4, 0.5};

}  // namespace

double top_of(const WorldState& world, const std::string& name) {
  const ObjectState* o = world.find(name);
  if (o == nullptr) throw SceneError("unknown object " + name);
  return o->position.z() + o->half_extents.z();
}

void settle(WorldState& world) {
  std::set<std::string> done;
  std::set<std::string> visiting;
  std::function<void(const std::string&)> place = [&](const std::string& name) {
    if (done.count(name)) return;
    if (!visiting.insert(name).second) throw SceneError("support cycle through " + name);
    ObjectState& o = world.objects.at(name);
    switch (o.support.kind) {
      case Support::Kind::kTable:
        o.position.z() = o.half_extents.z();
        break;
      case Support::Kind::kOn: {
        if (!world.find(o.support.ref)) throw SceneError(name + " rests on unknown " + o.support.ref);
        place(o.support.ref);
        const ObjectState& base = world.objects.at(o.support.ref);
        o.position = {base.position.x(), base.position.y(), top_of(world, o.support.ref) + o.half_extents.z()};
        break;
      }
      case Support::Kind::kIn: {
        if (!world.find(o.support.ref)) throw SceneError(name + " is inside unknown " + o.support.ref);
        place(o.support.ref);
        const ObjectState& c = world.objects.at(o.support.ref);
        o.position = {c.position.x(), c.position.y(), o.half_extents.z()};
        break;
      }
      case Support::Kind::kHeld:
        o.position.z() = kLiftHeight + o.half_extents.z();
        break;
    }
    visiting.erase(name);
    done.insert(name);
  };
  for (const auto& [name, _] : world.objects) place(name);
}

Eigen::Vector2d free_table_spot(const WorldState& world, const std::string& name) {
  const ObjectState* self = world.find(name);
  if (self == nullptr) throw SceneError("unknown object " + name);
  auto fits = [&](const Eigen::Vector2d& xy) {
    ObjectState probe = *self;
    probe.position.x() = xy.x();
    probe.position.y() = xy.y();
    for (const auto& [other, o] : world.objects) {
      if (other == name || o.support.kind != Support::Kind::kTable) continue;
      if (footprints_overlap(probe, o)) return false;
    }
    return true;
  };
  if (fits(self->rest_xy)) return self->rest_xy;
  for (double y : kGridY) {
    for (double x : kGridX) {
      if (fits({x, y})) return {x, y};
    }
  }
  throw SceneError("no free table spot for " + name);
}

Scene spawn_scene(const json& spec) {
  if (!spec.is_object()) throw SceneError("scene must be a JSON object");
  Scene scene;
  scene.name = spec.value("name", std::string{});
  WorldState& w = scene.world;
  try {
    w.tick_ms = spec.value("tick_ms", 50.0);
    if (!(w.tick_ms > 0.0)) throw SceneError("tick_ms must be positive");

    for (const auto& jo : spec.value("objects", json::array())) {
      const std::string name = jo.at("name").get<std::string>();
      if (name.empty() || name == "table") throw SceneError("invalid object name '" + name + "'");
      if (w.objects.count(name)) throw SceneError("duplicate object name " + name);
      ObjectState o;
      o.cls = jo.value("class", std::string{"object"});
      o.color = jo.value("color", std::string{});
      o.container = jo.value("container", is_container_class(o.cls));
      o.support = Support::parse(jo.value("support", std::string{"table"}));
      if (jo.contains("half_extents")) o.half_extents = read_vec(jo["half_extents"], name + ".half_extents", false);
      if ((o.half_extents.array() <= 0.0).any()) throw SceneError(name + " needs positive half extents");
      if (jo.contains("position")) {
        const bool has_z = jo["position"].size() == 3;
        o.position = read_vec(jo["position"], name + ".position", true);
        if (!has_z) o.position.z() = o.half_extents.z();
      } else if (o.support.kind == Support::Kind::kTable) {
        throw SceneError(name + " rests on the table but has no position");
      }
      o.rest_xy = o.position.head<2>();
      if (jo.contains("rest")) o.rest_xy = read_vec(jo["rest"], name + ".rest", true).head<2>();
      w.objects.emplace(name, std::move(o));
    }

    if (spec.contains("robot")) {
      const json& jr = spec["robot"];
      w.robot.gripper_open = jr.value("gripper_open", true);
      w.robot.arm_location = jr.value("arm_location", std::string{"home"});
      if (jr.contains("held") && !jr["held"].is_null()) w.robot.held = jr["held"].get<std::string>();
    }
    for (const auto& [name, o] : w.objects) {
      if (o.support.kind == Support::Kind::kHeld && !w.robot.held) w.robot.held = name;
      if (o.support.kind == Support::Kind::kOn) {
        const ObjectState* base = w.find(o.support.ref);
        if (base != nullptr && base->container) {
          throw SceneError(name + " rests on container " + o.support.ref + "; use in:");
        }
      }
    }
    if (w.robot.held) w.robot.gripper_open = false;

    if (auto v = w.invariant_violation()) throw SceneError(*v);
    settle(w);

    for (auto a = w.objects.begin(); a != w.objects.end(); ++a) {
      if (a->second.support.kind != Support::Kind::kTable) continue;
      for (auto b = std::next(a); b != w.objects.end(); ++b) {
        if (b->second.support.kind != Support::Kind::kTable) continue;
        if (footprints_overlap(a->second, b->second)) {
          throw SceneError("footprints of " + a->first + " and " + b->first + " overlap");
        }
      }
    }

    if (spec.contains("camera")) {
      const json& jc = spec["camera"];
      if (jc.contains("intrinsics")) {
        const json& ji = jc["intrinsics"];
        CameraIntrinsics& k = scene.intrinsics;
        k.fx = ji.value("fx", k.fx);
        k.fy = ji.value("fy", k.fy);
        k.cx = ji.value("cx", k.cx);
        k.cy = ji.value("cy", k.cy);
        k.width = ji.value("width", k.width);
        k.height = ji.value("height", k.height);
      }
      if (jc.contains("extrinsics")) {
        const json& je = jc["extrinsics"];
        Vec3 position = read_vec(je.at("position"), "camera position", false);
        scene.extrinsics = CameraExtrinsics::overhead(position);
        if (je.contains("rotation")) {
          const json& r = je["rotation"];
          if (!r.is_array() || r.size() != 3) throw SceneError("camera rotation must be 3x3");
          for (int i = 0; i < 3; ++i) {
            scene.extrinsics.rotation.row(i) = read_vec(r[static_cast<std::size_t>(i)], "rotation row", false).transpose();
          }
          const Eigen::Matrix3d& R = scene.extrinsics.rotation;
          if (!(R * R.transpose()).isIdentity(1e-6) || std::abs(R.determinant() - 1.0) > 1e-6) {
            throw SceneError("camera rotation is not a proper rotation");
          }
        }
      }
    }
    scene.intrinsics.validate();
    if (spec.contains("noise")) {
      const json& jn = spec["noise"];
      scene.noise.sigma_px = jn.value("sigma_px", 0.0);
      scene.noise.sigma_depth = jn.value("sigma_depth", 0.0);
      scene.noise.seed = jn.value("seed", std::uint64_t{0});
    }
    scene.noise.validate();
  } catch (const json::exception& e) {
    throw SceneError(std::string("malformed scene: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SceneError(e.what());
  }
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open scene file " + path);
  json spec;
  try {
    spec = json::parse(in);
  } catch (const json::exception& e) {
    throw SceneError(path + ": " + e.what());
  }
  return spawn_scene(spec);
}

Scene random_scene(std::uint64_t seed, int n) {
  static const std::vector<std::string> kColors = {"red", "blue", "green", "yellow", "black", "white"};
  static const std::vector<std::string> kShapes = {"cube", "block", "cylinder", "box", "cup"};
  std::mt19937_64 rng(seed);
  std::vector<std::pair<double, double>> cells;
  for (double y : kGridY) {
    for (double x : kGridX) cells.emplace_back(x, y);
  }
  std::shuffle(cells.begin(), cells.end(), rng);
  json objects = json::array();
  std::set<std::string> names;
  std::vector<std::string> stack_tops;
  std::size_t cell = 0;
  for (int i = 0; i < n; ++i) {
    std::string color, shape, name;
    do {
      color = kColors[rng() % kColors.size()];
      shape = kShapes[rng() % kShapes.size()];
      name = color + "_" + shape;
      if (names.count(name)) name += "_" + std::to_string(i);
    } while (names.count(name));
    names.insert(name);
    json jo = {{"name", name}, {"class", shape}, {"color", color}};
    if (!stack_tops.empty() && rng() % 3 == 0) {
      const std::size_t k = rng() % stack_tops.size();
      jo["support"] = "on:" + stack_tops[k];
      stack_tops[k] = name;
    } else {
      if (cell >= cells.size()) throw SceneError("random scene does not fit the grid");
      jo["position"] = {cells[cell].first, cells[cell].second};
      ++cell;
      stack_tops.push_back(name);
    }
    objects.push_back(jo);
  }
  json spec = {{"name", "random_" + std::to_string(seed)}, {"objects", objects}};
  return spawn_scene(spec);
}

json world_to_json(const WorldState& world) {
  json objects = json::array();
  for (const auto& [name, o] : world.objects) {
    objects.push_back({{"name", name},
                       {"class", o.cls},
                       {"color", o.color},
                       {"position", vec_json(o.position)},
                       {"half_extents", vec_json(o.half_extents)},
                       {"support", o.support.to_string()},
                       {"container", o.container},
                       {"rest", json::array({o.rest_xy.x(), o.rest_xy.y()})}});
  }
  json robot = {{"gripper_open", world.robot.gripper_open},
                {"held", world.robot.held ? json(*world.robot.held) : json(nullptr)},
                {"arm_location", world.robot.arm_location}};
  if (world.robot.arm_pose) robot["arm_pose"] = vec_json(*world.robot.arm_pose);
  return {{"objects", objects}, {"robot", robot}, {"tick", world.tick}, {"tick_ms", world.tick_ms}};
}

json scene_to_json(const Scene& scene) {
  json j = world_to_json(scene.world);
  j.erase("tick");
  j["name"] = scene.name;
  const CameraIntrinsics& k = scene.intrinsics;
  json rotation = json::array();
  for (int i = 0; i < 3; ++i) rotation.push_back(vec_json(scene.extrinsics.rotation.row(i).transpose()));
  j["camera"] = {{"intrinsics", {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy},
                                 {"width", k.width}, {"height", k.height}}},
                 {"extrinsics", {{"position", vec_json(scene.extrinsics.translation)},
                                 {"rotation", rotation}}}};
  j["noise"] = {{"sigma_px", scene.noise.sigma_px}, {"sigma_depth", scene.noise.sigma_depth},
                {"seed", scene.noise.seed}};
  return j;
}

}  // namespace lam::world
