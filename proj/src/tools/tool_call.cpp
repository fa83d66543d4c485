#include "lam/tools/tool_call.hpp"

#include <cmath>

#include "lam/tools/registry.hpp"
#include "lam/world/abstraction.hpp"
#include "lam/world/scene_io.hpp"

namespace lam::tools {

using nlohmann::json;
using world::Support;
using world::WorldState;

std::string to_string(CallStatus status) {
  switch (status) {
    case CallStatus::kPending: return "pending";
    case CallStatus::kRunning: return "running";
    case CallStatus::kSucceeded: return "succeeded";
    case CallStatus::kFailed: return "failed";
    case CallStatus::kPreempted: return "preempted";
  }
  return "?";
}

std::string to_string(RejectionCode code) {
  switch (code) {
    case RejectionCode::kUnknownTool: return "unknown tool";
    case RejectionCode::kBadArguments: return "bad arguments";
    case RejectionCode::kUnknownObject: return "unknown object";
    case RejectionCode::kUnknownLocation: return "unknown location";
    case RejectionCode::kGripperOccupied: return "gripper occupied";
    case RejectionCode::kNotHolding: return "not holding";
    case RejectionCode::kNotClear: return "not clear";
    case RejectionCode::kInsideContainer: return "inside container";
    case RejectionCode::kNotContainer: return "not a container";
    case RejectionCode::kIsContainer: return "is a container";
    case RejectionCode::kSelfTarget: return "self target";
    case RejectionCode::kNoFreeSpot: return "no free spot";
    case RejectionCode::kOpenWhileHolding: return "open while holding";
  }
  return "?";
}

void ToolCall::start() {
  if (status != CallStatus::kPending) throw IllegalTransition(to_string() + " cannot start from " + tools::to_string(status));
  status = CallStatus::kRunning;
}

void ToolCall::succeed() {
  if (status != CallStatus::kRunning) throw IllegalTransition(to_string() + " cannot succeed from " + tools::to_string(status));
  status = CallStatus::kSucceeded;
}

void ToolCall::fail(std::string reason) {
  if (status != CallStatus::kRunning) throw IllegalTransition(to_string() + " cannot fail from " + tools::to_string(status));
  status = CallStatus::kFailed;
  failure = std::move(reason);
}

void ToolCall::preempt() {
  if (status != CallStatus::kRunning) throw IllegalTransition(to_string() + " cannot be preempted from " + tools::to_string(status));
  status = CallStatus::kPreempted;
}

bool ToolCall::finished() const {
  return status == CallStatus::kSucceeded || status == CallStatus::kFailed || status == CallStatus::kPreempted;
}

ToolCall ToolCall::fresh() const {
  ToolCall c(tool, args);
  c.rationale = rationale;
  return c;
}

std::optional<std::string> ToolCall::object_arg(const std::string& name) const {
  auto it = args.find(name);
  if (it == args.end()) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  return std::nullopt;
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string value_string(const ArgValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  const auto& p = std::get<Eigen::Vector3d>(v);
  return "[" + format_number(p.x()) + "," + format_number(p.y()) + "," + format_number(p.z()) + "]";
}

json value_json(const ArgValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* d = std::get_if<double>(&v)) return *d;
  const auto& p = std::get<Eigen::Vector3d>(v);
  return json::array({p.x(), p.y(), p.z()});
}

}  // namespace

std::string ToolCall::to_string() const {
  std::string out = tool + "(";
  bool first = true;
  for (const auto& [name, value] : args) {
    if (!first) out += ", ";
    first = false;
    const bool bare = std::holds_alternative<std::string>(value) && args.size() == 1;
    out += bare ? value_string(value) : name + "=" + value_string(value);
  }
  return out + ")";
}

json to_json(const ToolCall& call) {
  json args = json::object();
  for (const auto& [name, value] : call.args) args[name] = value_json(value);
  json j = {{"tool", call.tool}, {"args", args}, {"status", to_string(call.status)}};
  if (!call.failure.empty()) j["failure"] = call.failure;
  if (!call.rationale.empty()) j["rationale"] = call.rationale;
  return j;
}

ToolCall call_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tool") || !j["tool"].is_string()) {
    throw std::invalid_argument("tool call needs a string \"tool\" field");
  }
  ToolCall call(j["tool"].get<std::string>());
  if (j.contains("args")) {
    if (!j["args"].is_object()) throw std::invalid_argument("\"args\" must be an object");
    for (const auto& [name, value] : j["args"].items()) {
      if (value.is_string()) {
        call.args[name] = value.get<std::string>();
      } else if (value.is_number()) {
        call.args[name] = value.get<double>();
      } else if (value.is_array() && value.size() == 3 && value[0].is_number() && value[1].is_number() &&
                 value[2].is_number()) {
        call.args[name] = Eigen::Vector3d(value[0].get<double>(), value[1].get<double>(), value[2].get<double>());
      } else {
        throw std::invalid_argument("argument " + name + " has an unsupported value");
      }
    }
  }
  if (j.contains("rationale") && j["rationale"].is_string()) call.rationale = j["rationale"].get<std::string>();
  return call;
}

std::optional<Eigen::Vector3d> location_point(const WorldState& w, const std::string& name) {
  if (name == "home") return Eigen::Vector3d(0.0, 0.3, 0.5);
  if (name == "scanning-position") return Eigen::Vector3d(0.0, 0.3, 0.6);
  if (name == "table") return Eigen::Vector3d(0.0, 0.3, 0.2);
  if (name == "bin") {
    for (const auto& [obj, o] : w.objects) {
      if (o.cls == "bin") return Eigen::Vector3d(o.position.x(), o.position.y(), 0.3);
    }
    return Eigen::Vector3d(0.3, 0.5, 0.3);
  }
  return std::nullopt;
}

namespace {

CallVerdict reject(RejectionCode code, std::string reason) { return {Rejection{code, std::move(reason)}}; }

CallVerdict check_schema(const ToolSpec& spec, const ToolCall& call) {
  for (const auto& [name, _] : call.args) {
    bool known = false;
    for (const auto& a : spec.args) known = known || a.name == name;
    if (!known) return reject(RejectionCode::kBadArguments, spec.name + " takes no argument '" + name + "'");
  }
  for (const auto& a : spec.args) {
    auto it = call.args.find(a.name);
    if (it == call.args.end()) return reject(RejectionCode::kBadArguments, spec.name + " needs argument '" + a.name + "'");
    const ArgValue& v = it->second;
    switch (a.kind) {
      case ArgKind::kObjectRef:
        if (!std::holds_alternative<std::string>(v) || std::get<std::string>(v).empty()) {
          return reject(RejectionCode::kBadArguments, a.name + " must name an object");
        }
        break;
      case ArgKind::kPose:
        if (const auto* p = std::get_if<Eigen::Vector3d>(&v)) {
          if (!p->allFinite()) return reject(RejectionCode::kBadArguments, a.name + " is not finite");
        } else if (!std::holds_alternative<std::string>(v)) {
          return reject(RejectionCode::kBadArguments, a.name + " must be a location or a point");
        }
        break;
      case ArgKind::kScalar: {
        const auto* d = std::get_if<double>(&v);
        if (d == nullptr || !std::isfinite(*d)) return reject(RejectionCode::kBadArguments, a.name + " must be a number");
        break;
      }
      case ArgKind::kEnum: {
        const auto* s = std::get_if<std::string>(&v);
        bool allowed = false;
        if (s != nullptr) {
          for (const auto& value : a.values) allowed = allowed || value == *s;
        }
        if (!allowed) return reject(RejectionCode::kBadArguments, a.name + " is not an allowed value");
        break;
      }
    }
  }
  return {};
}

}  // namespace

CallVerdict check_arguments(const ToolCall& call) {
  const ToolSpec* spec = find_tool(call.tool);
  if (spec == nullptr) return reject(RejectionCode::kUnknownTool, "no tool named '" + call.tool + "'");
  return check_schema(*spec, call);
}

CallVerdict validate_call(const ToolCall& call, const WorldState& w) {
  if (CallVerdict v = check_arguments(call); !v.ok()) return v;
  const ToolSpec* spec = find_tool(call.tool);

  const auto object = [&](const std::string& arg) { return *call.object_arg(arg); };
  switch (spec->id) {
    case ToolId::kDetect: {
      if (!w.find(object("object"))) return reject(RejectionCode::kUnknownObject, "no object " + object("object"));
      return {};
    }
    case ToolId::kPick: {
      const std::string x = object("object");
      const auto* o = w.find(x);
      if (w.robot.held) return reject(RejectionCode::kGripperOccupied, "already holding " + *w.robot.held);
      if (o == nullptr) return reject(RejectionCode::kUnknownObject, "no object " + x);
      if (o->container) return reject(RejectionCode::kIsContainer, x + " is a container");
      if (o->support.kind == Support::Kind::kIn) {
        return reject(RejectionCode::kInsideContainer, x + " is inside " + o->support.ref);
      }
      if (!w.is_clear(x)) return reject(RejectionCode::kNotClear, x + " is under " + w.object_on_top_of(x).value_or("?"));
      return {};
    }
    case ToolId::kPlaceOn: {
      const std::string y = object("target");
      if (!w.robot.held) return reject(RejectionCode::kNotHolding, "gripper is empty");
      if (y == world::kTableObject) {
        try {
          world::free_table_spot(w, *w.robot.held);
        } catch (const world::SceneError& e) {
          return reject(RejectionCode::kNoFreeSpot, e.what());
        }
        return {};
      }
      const auto* o = w.find(y);
      if (o == nullptr) return reject(RejectionCode::kUnknownObject, "no object " + y);
      if (y == *w.robot.held) return reject(RejectionCode::kSelfTarget, "cannot place " + y + " on itself");
      if (o->container) return reject(RejectionCode::kIsContainer, y + " is a container; use place_in");
      if (!w.is_clear(y)) return reject(RejectionCode::kNotClear, y + " is not clear");
      return {};
    }
    case ToolId::kPlaceIn: {
      const std::string c = object("container");
      if (!w.robot.held) return reject(RejectionCode::kNotHolding, "gripper is empty");
      const auto* o = w.find(c);
      if (o == nullptr) return reject(RejectionCode::kUnknownObject, "no object " + c);
      if (!o->container) return reject(RejectionCode::kNotContainer, c + " is not a container");
      return {};
    }
    case ToolId::kMoveTo: {
      const ArgValue& target = call.args.at("target");
      if (const auto* name = std::get_if<std::string>(&target)) {
        if (!location_point(w, *name)) return reject(RejectionCode::kUnknownLocation, "no location " + *name);
      } else {
        const auto& p = std::get<Eigen::Vector3d>(target);
        if (std::abs(p.x()) > 1.0 || std::abs(p.y()) > 1.0 || p.z() < 0.0 || p.z() > 1.0) {
          return reject(RejectionCode::kUnknownLocation, "point outside the workspace");
        }
      }
      return {};
    }
    case ToolId::kOpenGripper:
      if (w.robot.held) return reject(RejectionCode::kOpenWhileHolding, "opening would drop " + *w.robot.held);
      return {};
    case ToolId::kCloseGripper:
    case ToolId::kHome:
      return {};
    case ToolId::kWait:
      if (std::get<double>(call.args.at("duration")) < 0.0) {
        return reject(RejectionCode::kBadArguments, "duration must be non-negative");
      }
      return {};
  }
  return reject(RejectionCode::kUnknownTool, call.tool);
}

void apply_effect(WorldState& w, const ToolCall& call) {
  if (CallVerdict v = validate_call(call, w); !v.ok()) {
    throw std::logic_error("effect of rejected call " + call.to_string() + ": " + v.describe());
  }
  const ToolSpec& spec = *find_tool(call.tool);
  const std::string placed = w.robot.held.value_or("");
  switch (spec.id) {
    case ToolId::kDetect:
    case ToolId::kWait:
      break;
    case ToolId::kPick: {
      const std::string x = *call.object_arg("object");
      auto& o = w.objects.at(x);
      o.support = Support::held();
      w.robot.held = x;
      w.robot.gripper_open = false;
      w.robot.arm_location = "pose";
      w.robot.arm_pose = o.position;
      break;
    }
    case ToolId::kPlaceOn: {
      const std::string y = *call.object_arg("target");
      const std::string x = *w.robot.held;
      auto& o = w.objects.at(x);
      if (y == world::kTableObject) {
        const Eigen::Vector2d xy = world::free_table_spot(w, x);
        o.support = Support::table();
        o.position.head<2>() = xy;
        o.rest_xy = xy;
      } else {
        o.support = Support::on(y);
      }
      w.robot.held.reset();
      w.robot.gripper_open = true;
      break;
    }
    case ToolId::kPlaceIn: {
      const std::string x = *w.robot.held;
      w.objects.at(x).support = Support::in(*call.object_arg("container"));
      w.robot.held.reset();
      w.robot.gripper_open = true;
      break;
    }
    case ToolId::kMoveTo: {
      const ArgValue& target = call.args.at("target");
      if (const auto* name = std::get_if<std::string>(&target)) {
        w.robot.arm_location = *name;
        w.robot.arm_pose.reset();
      } else {
        w.robot.arm_location = "pose";
        w.robot.arm_pose = std::get<Eigen::Vector3d>(target);
      }
      break;
    }
    case ToolId::kOpenGripper: w.robot.gripper_open = true; break;
    case ToolId::kCloseGripper: w.robot.gripper_open = false; break;
    case ToolId::kHome:
      w.robot.arm_location = "home";
      w.robot.arm_pose.reset();
      break;
  }
  world::settle(w);
  if (spec.id == ToolId::kPlaceOn || spec.id == ToolId::kPlaceIn) {
    w.robot.arm_location = "pose";
    w.robot.arm_pose = w.objects.at(placed).position;
  }
}

}  // namespace lam::tools
