#include "lam/world/world_state.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace lam::world {

std::string Support::to_string() const {
  switch (kind) {
    case Kind::kTable: return "table";
    case Kind::kHeld: return "held";
    case Kind::kOn: return "on:" + ref;
    case Kind::kIn: return "in:" + ref;
  }
  return "?";
}

Support Support::parse(const std::string& text) {
  if (text == "table") return table();
  if (text == "held") return held();
  if (text.rfind("on:", 0) == 0 && text.size() > 3) return on(text.substr(3));
  if (text.rfind("in:", 0) == 0 && text.size() > 3) return in(text.substr(3));
  throw std::invalid_argument("invalid support '" + text + "' (table | held | on:<name> | in:<name>)");
}

const ObjectState* WorldState::find(const std::string& name) const {
  auto it = objects.find(name);
  return it == objects.end() ? nullptr : &it->second;
}

ObjectState* WorldState::find(const std::string& name) {
  auto it = objects.find(name);
  return it == objects.end() ? nullptr : &it->second;
}

std::optional<std::string> WorldState::object_on_top_of(const std::string& name) const {
  for (const auto& [other, state] : objects) {
    if (state.support.kind == Support::Kind::kOn && state.support.ref == name) return other;
  }
  return std::nullopt;
}

bool WorldState::is_clear(const std::string& name) const {
  const ObjectState* o = find(name);
  if (o == nullptr || o->container) return false;
  if (o->support.kind != Support::Kind::kTable && o->support.kind != Support::Kind::kOn) return false;
  return !object_on_top_of(name).has_value();
}

std::optional<std::string> WorldState::invariant_violation() const {
  int held_count = 0;
  for (const auto& [name, o] : objects) {
    if (!o.position.allFinite() || !o.half_extents.allFinite()) {
      return "non-finite geometry for " + name;
    }
    switch (o.support.kind) {
      case Support::Kind::kHeld:
        ++held_count;
        if (robot.held != name) return name + " is held but the robot holds something else";
        break;
      case Support::Kind::kOn: {
        const ObjectState* base = find(o.support.ref);
        if (base == nullptr) return name + " rests on unknown object " + o.support.ref;
        if (o.support.ref == name) return name + " rests on itself";
        break;
      }
      case Support::Kind::kIn: {
        const ObjectState* c = find(o.support.ref);
        if (c == nullptr || !c->container) return name + " is inside non-container " + o.support.ref;
        break;
      }
      case Support::Kind::kTable: break;
    }
    if (o.container && o.support.kind != Support::Kind::kTable) {
      return "container " + name + " must rest on the table";
    }
  }
  if (held_count > 1) return "more than one object held";
  if (robot.held) {
    const ObjectState* h = find(*robot.held);
    if (h == nullptr || h->support.kind != Support::Kind::kHeld) {
      return "robot holds " + *robot.held + " without a held support edge";
    }
  }
  for (const auto& [name, o] : objects) {
    std::set<std::string> chain{name};
    const ObjectState* cur = &o;
    while (cur->support.kind == Support::Kind::kOn || cur->support.kind == Support::Kind::kIn) {
      if (!chain.insert(cur->support.ref).second) return "support cycle through " + name;
      cur = find(cur->support.ref);
      if (cur == nullptr) break;
    }
  }
  // At most one object directly on any object.
  std::set<std::string> bases;
  for (const auto& [name, o] : objects) {
    if (o.support.kind == Support::Kind::kOn && !bases.insert(o.support.ref).second) {
      return "two objects rest on " + o.support.ref;
    }
  }
  return std::nullopt;
}

std::string WorldState::canonical() const {
  std::string out;
  char buf[512];
  for (const auto& [name, o] : objects) {
    std::snprintf(buf, sizeof buf, " p=%.17g,%.17g,%.17g e=%.17g,%.17g,%.17g r=%.17g,%.17g c=%d",
                  o.position.x(), o.position.y(), o.position.z(), o.half_extents.x(),
                  o.half_extents.y(), o.half_extents.z(), o.rest_xy.x(), o.rest_xy.y(),
                  o.container ? 1 : 0);
    out += name + " " + o.cls + " " + o.color + " " + o.support.to_string() + buf + "\n";
  }
  out += "robot open=" + std::to_string(robot.gripper_open) + " held=" + robot.held.value_or("-") +
         " at=" + robot.arm_location;
  if (robot.arm_pose) {
    std::snprintf(buf, sizeof buf, " pose=%.17g,%.17g,%.17g", robot.arm_pose->x(),
                  robot.arm_pose->y(), robot.arm_pose->z());
    out += buf;
  }
  return out;
}

std::uint64_t WorldState::content_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool is_container_class(const std::string& cls) {
  static const std::set<std::string> kContainers = {"bin", "container", "shelf", "tool_holder",
                                                    "holder", "tray", "basket"};
  return kContainers.count(cls) > 0;
}

}  // namespace lam::world
