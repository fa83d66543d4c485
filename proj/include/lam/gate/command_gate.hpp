#pragma once

#include <string>
#include <utility>

namespace lam::gate {

enum class Mode { kListening, kStopped };

struct GateConfig {
  /// Keep non-terminated lines and prepend them to the next command. When
  /// false such lines are discarded.
  bool buffering = true;
  std::string deactivation_word = "execute";
  std::string stop_word = "stop";
  std::string resume_word = "okay";
};

struct GateState {
  Mode mode = Mode::kListening;
  std::string buffer;
};

enum class EventKind { kForward, kEmergencyStop, kResume, kBuffered, kIgnored };

struct GateEvent {
  EventKind kind = EventKind::kIgnored;
  /// Instruction text for kForward.
  std::string text;

  bool operator==(const GateEvent&) const = default;
  /// "forward\t<text>", "emergency-stop", "resume", "buffered", "ignored"
  std::string to_string() const;
};

std::string to_string(EventKind kind);
std::string to_string(Mode mode);

/// True when `token` appears in `line` as a whole word, ignoring case.
bool contains_word(const std::string& line, const std::string& token);

/// One transition of the keyword protocol. Exactly one event per line; the
/// stop word is checked before anything else, in either mode.
std::pair<GateState, GateEvent> process_line(const GateState& state, const std::string& line,
                                             const GateConfig& config = {});

/// Stateful wrapper around process_line.
class CommandGate {
 public:
  explicit CommandGate(GateConfig config = {}) : config_(std::move(config)) {}
  GateEvent feed(const std::string& line);
  const GateState& state() const { return state_; }
  const GateConfig& config() const { return config_; }

 private:
  GateConfig config_;
  GateState state_;
};

}  // namespace lam::gate
