#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lam/pddl/ast.hpp"
#include "lam/tools/tool_call.hpp"
#include "lam/translator/llm_client.hpp"
#include "lam/translator/rules.hpp"
#include "lam/translator/scene_facts.hpp"

namespace lam::translator {

/// Dynamic half of a problem: everything except the static domain.
struct ProblemFragment {
  std::vector<pddl::TypedName> objects;
  std::vector<pddl::Atom> init;
  std::vector<pddl::Literal> goal;
  /// Text the fragment was parsed from.
  std::string raw;
};

struct SubtaskList {
  std::vector<tools::ToolCall> steps;
  std::string raw;
};

class TranslationError : public std::runtime_error {
 public:
  enum class Kind {
    kNoMatch,
    kUnresolvedObject,
    kUnsupported,
    kUnparseable,
    kUnknownPredicate,
    kUnknownObject,
    kUnknownTool,
    kBadArguments,
    kEmpty,
    kTransport,
  };
  TranslationError(Kind kind, const std::string& what, std::string raw = {})
      : std::runtime_error(what), kind_(kind), raw_(std::move(raw)) {}
  Kind kind() const { return kind_; }
  /// Model output exactly as received; empty when nothing was produced.
  const std::string& raw() const { return raw_; }

 private:
  Kind kind_;
  std::string raw_;
};
std::string to_string(TranslationError::Kind kind);

/// template | llm | fault:<rate>:<seed>[:llm]
struct TranslatorSpec {
  enum class Base { kTemplate, kLlm };
  Base base = Base::kTemplate;
  bool fault = false;
  double fault_rate = 0.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on unknown kinds or a rate outside [0, 1].
  static TranslatorSpec parse(const std::string& text);
  std::string to_string() const;
};

struct PromptTemplates {
  std::string pddl_system;
  std::string direct_system;
  std::string user;

  static PromptTemplates load(const std::string& dir);
};

/// Per-translation accounting, mirrored into session metrics.
struct TranslationUsage {
  int requests = 0;
  std::optional<long> prompt_tokens;
  std::optional<long> completion_tokens;
  bool fault_injected = false;
};

/// Validating constructors: the only way raw model text becomes an artifact.
/// References must be fragment objects or objects of `scene`.
ProblemFragment parse_fragment(const std::string& raw, const pddl::Domain& domain, const SceneFacts& scene);
/// Every tool name is checked against the registry and every argument
/// against its schema and the scene's object names.
SubtaskList parse_subtasks(const std::string& raw, const SceneFacts& scene);

/// Deterministic corruption used by fault injection. `choice` selects the
/// defect; every defect makes the matching parser above reject the text.
std::string corrupt_problem_text(const std::string& raw, unsigned choice);
std::string corrupt_subtask_text(const std::string& raw, unsigned choice);

class Translator {
 public:
  Translator(TranslatorSpec spec, RuleSet rules, pddl::Domain domain, PromptTemplates prompts = {},
             LlmEndpoint endpoint = {});

  ProblemFragment translate_to_problem(const std::string& instruction, const SceneFacts& scene,
                                       TranslationUsage* usage = nullptr) const;
  SubtaskList translate_to_subtasks(const std::string& instruction, const SceneFacts& scene,
                                    TranslationUsage* usage = nullptr) const;

  /// Raw outputs before validation, exposed for tests and the CLI.
  std::string raw_problem(const std::string& instruction, const SceneFacts& scene, TranslationUsage* usage) const;
  std::string raw_subtasks(const std::string& instruction, const SceneFacts& scene, TranslationUsage* usage) const;

  const TranslatorSpec& spec() const { return spec_; }
  const pddl::Domain& domain() const { return domain_; }

 private:
  std::string template_problem(const std::string& instruction, const SceneFacts& scene) const;
  std::string template_subtasks(const std::string& instruction, const SceneFacts& scene) const;
  std::string llm(const std::string& system, const std::string& instruction, const SceneFacts& scene,
                  TranslationUsage* usage) const;
  bool inject(const std::string& instruction, char mode, unsigned* choice) const;

  TranslatorSpec spec_;
  RuleSet rules_;
  pddl::Domain domain_;
  PromptTemplates prompts_;
  LlmEndpoint endpoint_;
};

/// Resolves a spoken descriptor ("red cube", "yellow object", "tool holder
/// slot") to exactly one scene object, or "table". Throws TranslationError.
std::string resolve_descriptor(const std::string& descriptor, const SceneFacts& scene);

}  // namespace lam::translator
