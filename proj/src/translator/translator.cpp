#include "lam/translator/translator.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "lam/pddl/parser.hpp"
#include "lam/pddl/printer.hpp"
#include "lam/tools/registry.hpp"
#include "lam/world/abstraction.hpp"

namespace lam::translator {

using nlohmann::json;
using Kind = TranslationError::Kind;

std::string to_string(TranslationError::Kind kind) {
  switch (kind) {
    case Kind::kNoMatch: return "no-match";
    case Kind::kUnresolvedObject: return "unresolved-object";
    case Kind::kUnsupported: return "unsupported";
    case Kind::kUnparseable: return "unparseable";
    case Kind::kUnknownPredicate: return "unknown-predicate";
    case Kind::kUnknownObject: return "unknown-object";
    case Kind::kUnknownTool: return "unknown-tool";
    case Kind::kBadArguments: return "bad-arguments";
    case Kind::kEmpty: return "empty";
    case Kind::kTransport: return "transport";
  }
  return "?";
}

TranslatorSpec TranslatorSpec::parse(const std::string& text) {
  TranslatorSpec spec;
  if (text == "template") return spec;
  if (text == "llm") {
    spec.base = Base::kLlm;
    return spec;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() < 3 || parts.size() > 4 || parts[0] != "fault") {
    throw std::invalid_argument("unknown translator '" + text + "' (template | llm | fault:<rate>:<seed>[:llm])");
  }
  spec.fault = true;
  try {
    std::size_t used = 0;
    spec.fault_rate = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    spec.seed = std::stoull(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed fault translator '" + text + "'");
  }
  if (!(spec.fault_rate >= 0.0 && spec.fault_rate <= 1.0)) throw std::invalid_argument("fault rate must be in [0, 1]");
  if (parts.size() == 4) {
    if (parts[3] != "llm" && parts[3] != "template") throw std::invalid_argument("unknown base translator " + parts[3]);
    spec.base = parts[3] == "llm" ? Base::kLlm : Base::kTemplate;
  }
  return spec;
}

std::string TranslatorSpec::to_string() const {
  const std::string base_name = base == Base::kLlm ? "llm" : "template";
  if (!fault) return base_name;
  std::ostringstream out;
  out << "fault:" << fault_rate << ":" << seed;
  if (base == Base::kLlm) out << ":llm";
  return out.str();
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string substitute(std::string text, const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    const std::string marker = "{{" + key + "}}";
    for (auto pos = text.find(marker); pos != std::string::npos; pos = text.find(marker, pos + value.size())) {
      text.replace(pos, marker.size(), value);
    }
  }
  return text;
}

std::vector<std::string> descriptor_tokens(const std::string& text) {
  static const std::set<std::string> kFiller = {"the", "a", "an", "object", "item", "thing", "slot", "one",
                                                "it", "small", "big", "that", "this"};
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && !kFiller.count(cur)) out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::uint64_t fnv(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool is_container(const SceneFacts& scene, const std::string& name) {
  const ObjectFact* o = scene.find(name);
  return o != nullptr && o->container;
}

}  // namespace

std::string resolve_descriptor(const std::string& descriptor, const SceneFacts& scene) {
  const auto tokens = descriptor_tokens(descriptor);
  if (tokens.size() == 1 && tokens[0] == world::kTableObject) return world::kTableObject;
  if (tokens.empty()) throw TranslationError(Kind::kUnresolvedObject, "cannot tell which object '" + descriptor + "' means");
  std::vector<std::string> matches;
  for (const auto& o : scene.objects) {
    std::set<std::string> labels = {o.color, o.cls};
    for (const auto& part : descriptor_tokens(o.name)) labels.insert(part);
    for (const auto& part : descriptor_tokens(o.cls)) labels.insert(part);
    bool all = true;
    for (const auto& t : tokens) all = all && labels.count(t) > 0;
    if (all) matches.push_back(o.name);
  }
  if (matches.size() == 1) return matches[0];
  if (matches.empty()) throw TranslationError(Kind::kUnresolvedObject, "no object in the scene matches '" + descriptor + "'");
  std::string list;
  for (const auto& m : matches) list += (list.empty() ? "" : ", ") + m;
  throw TranslationError(Kind::kUnresolvedObject, "'" + descriptor + "' is ambiguous: " + list);
}

PromptTemplates PromptTemplates::load(const std::string& dir) {
  return {slurp(dir + "/pddl_system.txt"), slurp(dir + "/direct_system.txt"), slurp(dir + "/user.txt")};
}

ProblemFragment parse_fragment(const std::string& raw, const pddl::Domain& domain, const SceneFacts& scene) {
  ProblemFragment f;
  f.raw = raw;
  try {
    pddl::ProblemSections s = pddl::parse_problem_sections(raw, domain, scene.typed_objects());
    f.objects = std::move(s.objects);
    f.init = std::move(s.init);
    f.goal = std::move(s.goal);
  } catch (const pddl::ParseError& e) {
    Kind kind = Kind::kUnparseable;
    if (e.kind() == pddl::ParseErrorKind::kUndeclaredPredicate) kind = Kind::kUnknownPredicate;
    if (e.kind() == pddl::ParseErrorKind::kUnknownObject) kind = Kind::kUnknownObject;
    throw TranslationError(kind, std::string("rejected problem fragment: ") + e.what(), raw);
  }
  return f;
}

SubtaskList parse_subtasks(const std::string& raw, const SceneFacts& scene) {
  SubtaskList out;
  out.raw = raw;
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::exception& e) {
    throw TranslationError(Kind::kUnparseable, std::string("subtask list is not JSON: ") + e.what(), raw);
  }
  if (!j.is_array()) throw TranslationError(Kind::kUnparseable, "subtask list must be a JSON array", raw);
  if (j.empty()) throw TranslationError(Kind::kEmpty, "subtask list is empty", raw);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "subtask " + std::to_string(i) + ": ";
    tools::ToolCall call;
    try {
      call = tools::call_from_json(j[i]);
    } catch (const std::invalid_argument& e) {
      throw TranslationError(Kind::kUnparseable, where + e.what(), raw);
    }
    const tools::ToolSpec* spec = tools::find_tool(call.tool);
    if (spec == nullptr) throw TranslationError(Kind::kUnknownTool, where + "no tool named '" + call.tool + "'", raw);
    if (auto v = tools::check_arguments(call); !v.ok()) {
      throw TranslationError(Kind::kBadArguments, where + v.describe(), raw);
    }
    for (const auto& a : spec->args) {
      const auto& value = call.args.at(a.name);
      if (a.kind == tools::ArgKind::kObjectRef) {
        const std::string& name = std::get<std::string>(value);
        const bool table_ok = a.allow_table && name == world::kTableObject;
        if (!table_ok && scene.find(name) == nullptr) {
          throw TranslationError(Kind::kUnknownObject, where + "unknown object '" + name + "'", raw);
        }
      } else if (a.kind == tools::ArgKind::kPose) {
        if (const auto* loc = std::get_if<std::string>(&value)) {
          const auto& known = tools::named_locations();
          if (std::find(known.begin(), known.end(), *loc) == known.end()) {
            throw TranslationError(Kind::kBadArguments, where + "unknown location '" + *loc + "'", raw);
          }
        }
      }
    }
    out.steps.push_back(std::move(call));
  }
  return out;
}

std::string corrupt_problem_text(const std::string& raw, unsigned choice) {
  auto truncate = [&] {
    std::string s = raw;
    const auto pos = s.rfind(')');
    if (pos == std::string::npos) return s + "(";
    s.erase(pos, 1);
    return s;
  };
  const auto goal = raw.find("(:goal");
  if (goal == std::string::npos) return truncate();
  // First atom inside the goal: '(' followed by a name other than and/not.
  std::size_t atom = std::string::npos, name_end = 0;
  for (std::size_t p = raw.find('(', goal + 1); p != std::string::npos; p = raw.find('(', p + 1)) {
    std::size_t b = p + 1;
    while (b < raw.size() && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
    std::size_t e = b;
    while (e < raw.size() && !std::isspace(static_cast<unsigned char>(raw[e])) && raw[e] != '(' && raw[e] != ')') ++e;
    const std::string name = raw.substr(b, e - b);
    if (!name.empty() && name != "and" && name != "not") {
      atom = b;
      name_end = e;
      break;
    }
  }
  if (atom == std::string::npos || choice % 3 == 0) return truncate();
  std::string s = raw;
  if (choice % 3 == 2) {
    std::size_t b = name_end;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    std::size_t e = b;
    while (e < s.size() && !std::isspace(static_cast<unsigned char>(s[e])) && s[e] != '(' && s[e] != ')') ++e;
    if (e > b) return s.replace(b, e - b, "ghost_object");
  }
  return s.replace(atom, name_end - atom, "levitating");
}

std::string corrupt_subtask_text(const std::string& raw, unsigned choice) {
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::exception&) {
    return raw.empty() ? "[" : raw.substr(0, raw.size() - 1);
  }
  if (choice % 3 == 0 || !j.is_array() || j.empty() || !j[0].is_object()) {
    const std::string s = j.dump(2);
    return s.substr(0, s.size() - 1);
  }
  if (choice % 3 == 2) {
    for (auto& step : j) {
      if (!step.contains("args") || !step["args"].is_object()) continue;
      for (auto& [name, value] : step["args"].items()) {
        if (value.is_string() && name != "target") {
          value = "ghost_object";
          return j.dump(2);
        }
      }
    }
  }
  j[0]["tool"] = "teleport";
  return j.dump(2);
}

Translator::Translator(TranslatorSpec spec, RuleSet rules, pddl::Domain domain, PromptTemplates prompts,
                       LlmEndpoint endpoint)
    : spec_(spec),
      rules_(std::move(rules)),
      domain_(std::move(domain)),
      prompts_(std::move(prompts)),
      endpoint_(std::move(endpoint)) {}

bool Translator::inject(const std::string& instruction, char mode, unsigned* choice) const {
  if (!spec_.fault) return false;
  std::mt19937_64 rng(spec_.seed ^ fnv(std::string(1, mode) + instruction));
  const bool hit = std::bernoulli_distribution(spec_.fault_rate)(rng);
  *choice = static_cast<unsigned>(rng());
  return hit;
}

std::string Translator::template_problem(const std::string& instruction, const SceneFacts& scene) const {
  const auto intents = rules_.match_sequence(instruction);
  if (intents.empty()) throw TranslationError(Kind::kNoMatch, "no template rule matches '" + instruction + "'");
  std::string goals;
  for (const auto& intent : intents) {
    std::string goal;
    switch (intent.kind) {
      case IntentKind::kTable:
        goal = "(on-table " + resolve_descriptor(intent.slots[0], scene) + ")";
        break;
      case IntentKind::kOnto: {
        const std::string x = resolve_descriptor(intent.slots[0], scene);
        const std::string y = resolve_descriptor(intent.slots[1], scene);
        if (y == world::kTableObject) {
          goal = "(on-table " + x + ")";
        } else if (is_container(scene, y)) {
          goal = "(in " + x + " " + y + ")";
        } else {
          goal = "(on " + x + " " + y + ")";
        }
        break;
      }
      case IntentKind::kInto: {
        const std::string x = resolve_descriptor(intent.slots[0], scene);
        const std::string c = resolve_descriptor(intent.slots[1], scene);
        if (!is_container(scene, c)) throw TranslationError(Kind::kUnresolvedObject, c + " is not a container");
        goal = "(in " + x + " " + c + ")";
        break;
      }
      default:
        throw TranslationError(Kind::kUnsupported,
                               "'" + to_string(intent.kind) + "' is a motion-only instruction with no symbolic goal");
    }
    goals += (goals.empty() ? "" : " ") + goal;
  }
  return "(:objects)\n(:init)\n(:goal (and " + goals + "))\n";
}

std::string Translator::template_subtasks(const std::string& instruction, const SceneFacts& scene) const {
  const auto intents = rules_.match_sequence(instruction);
  if (intents.empty()) throw TranslationError(Kind::kNoMatch, "no template rule matches '" + instruction + "'");

  std::map<std::string, std::string> below;  // object -> what it rests on
  for (const auto& r : scene.relations) {
    if (r.predicate == "on-top-of") below[r.subject] = r.object;
  }
  std::optional<std::string> held = scene.held;
  json steps = json::array();
  auto emit = [&](const std::string& tool, json args, const std::string& why) {
    steps.push_back({{"tool", tool}, {"args", std::move(args)}, {"rationale", why}});
  };
  auto above = [&](const std::string& name) -> std::optional<std::string> {
    for (const auto& [top, base] : below) {
      if (base == name) return top;
    }
    return std::nullopt;
  };
  std::function<void(const std::string&)> clear = [&](const std::string& name) {
    while (auto top = above(name)) {
      clear(*top);
      emit("detect", {{"object", *top}}, "locate " + *top + ", which blocks " + name);
      emit("pick", {{"object", *top}}, "lift " + *top + " off " + name);
      emit("place_on", {{"target", world::kTableObject}}, "set " + *top + " aside on the table");
      below.erase(*top);
    }
  };
  auto grasp = [&](const std::string& x) {
    if (held == x) return;
    if (held) {
      emit("place_on", {{"target", world::kTableObject}}, "free the gripper by setting " + *held + " down");
      held.reset();
    }
    clear(x);
    emit("detect", {{"object", x}}, "locate " + x);
    emit("pick", {{"object", x}}, "grasp " + x);
    below.erase(x);
    held = x;
  };

  for (const auto& intent : intents) {
    switch (intent.kind) {
      case IntentKind::kTable: {
        const std::string x = resolve_descriptor(intent.slots[0], scene);
        grasp(x);
        emit("place_on", {{"target", world::kTableObject}}, "put " + x + " on the table");
        held.reset();
        break;
      }
      case IntentKind::kOnto:
      case IntentKind::kInto: {
        const std::string x = resolve_descriptor(intent.slots[0], scene);
        const std::string y = resolve_descriptor(intent.slots[1], scene);
        if (intent.kind == IntentKind::kInto && !is_container(scene, y)) {
          throw TranslationError(Kind::kUnresolvedObject, y + " is not a container");
        }
        if (y != world::kTableObject && !is_container(scene, y)) clear(y);
        grasp(x);
        if (y == world::kTableObject) {
          emit("place_on", {{"target", y}}, "put " + x + " on the table");
        } else if (is_container(scene, y)) {
          emit("place_in", {{"container", y}}, "drop " + x + " into " + y);
        } else {
          emit("place_on", {{"target", y}}, "stack " + x + " on " + y);
          below[x] = y;
        }
        held.reset();
        break;
      }
      case IntentKind::kHome:
        emit("home", json::object(), "return the arm to its home pose");
        break;
      case IntentKind::kGoto: {
        std::string loc = intent.slots[0];
        for (char& c : loc) c = c == ' ' ? '-' : c;
        emit("move_to", {{"target", loc}}, "move the arm to the " + intent.slots[0]);
        break;
      }
      case IntentKind::kOpenGripper:
        emit("open_gripper", json::object(), "open the gripper");
        break;
      case IntentKind::kCloseGripper:
        emit("close_gripper", json::object(), "close the gripper");
        break;
    }
  }
  return steps.dump(2);
}

std::string Translator::llm(const std::string& system, const std::string& instruction, const SceneFacts& scene,
                            TranslationUsage* usage) const {
  if (system.empty() || prompts_.user.empty()) {
    throw TranslationError(Kind::kTransport, "prompt templates are not loaded");
  }
  const std::vector<ChatMessage> messages = {
      {"system", system},
      {"user", substitute(prompts_.user, {{"scene", to_json(scene).dump(2)}, {"instruction", instruction}})},
  };
  try {
    ChatCompletion c = chat_complete(LlmEndpoint::from_env(endpoint_), messages);
    if (usage) {
      usage->requests += c.attempts;
      if (c.prompt_tokens) usage->prompt_tokens = usage->prompt_tokens.value_or(0) + *c.prompt_tokens;
      if (c.completion_tokens) usage->completion_tokens = usage->completion_tokens.value_or(0) + *c.completion_tokens;
    }
    return c.text;
  } catch (const TransportError& e) {
    if (usage) ++usage->requests;
    throw TranslationError(Kind::kTransport, e.what(), e.body());
  }
}

std::string Translator::raw_problem(const std::string& instruction, const SceneFacts& scene,
                                    TranslationUsage* usage) const {
  std::string raw;
  if (spec_.base == TranslatorSpec::Base::kLlm) {
    raw = llm(substitute(prompts_.pddl_system, {{"domain", pddl::print_domain(domain_)}}), instruction, scene, usage);
  } else {
    if (usage) ++usage->requests;
    raw = template_problem(instruction, scene);
  }
  unsigned choice = 0;
  if (inject(instruction, 'p', &choice)) {
    if (usage) usage->fault_injected = true;
    raw = corrupt_problem_text(raw, choice);
  }
  return raw;
}

std::string Translator::raw_subtasks(const std::string& instruction, const SceneFacts& scene,
                                     TranslationUsage* usage) const {
  std::string raw;
  if (spec_.base == TranslatorSpec::Base::kLlm) {
    raw = llm(substitute(prompts_.direct_system, {{"tools", tools::registry_json(tools::ToolDurations::defaults()).dump(2)}}),
              instruction, scene, usage);
  } else {
    if (usage) ++usage->requests;
    raw = template_subtasks(instruction, scene);
  }
  unsigned choice = 0;
  if (inject(instruction, 'd', &choice)) {
    if (usage) usage->fault_injected = true;
    raw = corrupt_subtask_text(raw, choice);
  }
  return raw;
}

ProblemFragment Translator::translate_to_problem(const std::string& instruction, const SceneFacts& scene,
                                                 TranslationUsage* usage) const {
  scene.validate();
  return parse_fragment(raw_problem(instruction, scene, usage), domain_, scene);
}

SubtaskList Translator::translate_to_subtasks(const std::string& instruction, const SceneFacts& scene,
                                              TranslationUsage* usage) const {
  scene.validate();
  return parse_subtasks(raw_subtasks(instruction, scene, usage), scene);
}

}  // namespace lam::translator
