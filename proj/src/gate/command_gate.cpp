#include "lam/gate/command_gate.hpp"

#include <cctype>
#include <vector>

namespace lam::gate {

namespace {

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool is_trailing_junk(char c) { return std::isspace(static_cast<unsigned char>(c)) || std::ispunct(static_cast<unsigned char>(c)); }

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_trailing(std::string s) {
  while (!s.empty() && is_trailing_junk(s.back())) s.pop_back();
  return s;
}

// Removes every whole-word occurrence of `token` and collapses the gaps.
std::string remove_word(const std::string& text, const std::string& token) {
  const std::string lt = lower(token);
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (word_char(text[i])) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      std::string word = text.substr(i, j - i);
      if (lower(word) != lt) out += word;
      i = j;
    } else {
      out += text[i++];
    }
  }
  std::string collapsed;
  for (char c : out) {
    if (std::isspace(static_cast<unsigned char>(c)) && (collapsed.empty() || collapsed.back() == ' ')) continue;
    collapsed += std::isspace(static_cast<unsigned char>(c)) ? ' ' : c;
  }
  return strip_trailing(trim(collapsed));
}

bool ends_with_word(const std::string& text, const std::string& token) {
  const std::string t = lower(strip_trailing(text));
  const std::string k = lower(token);
  if (t.size() < k.size() || t.compare(t.size() - k.size(), k.size(), k) != 0) return false;
  return t.size() == k.size() || !word_char(t[t.size() - k.size() - 1]);
}

}  // namespace

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kForward: return "forward";
    case EventKind::kEmergencyStop: return "emergency-stop";
    case EventKind::kResume: return "resume";
    case EventKind::kBuffered: return "buffered";
    case EventKind::kIgnored: return "ignored";
  }
  return "?";
}

std::string to_string(Mode mode) { return mode == Mode::kListening ? "listening" : "stopped"; }

std::string GateEvent::to_string() const {
  return kind == EventKind::kForward ? "forward\t" + text : gate::to_string(kind);
}

bool contains_word(const std::string& line, const std::string& token) {
  const std::string l = lower(line);
  const std::string t = lower(token);
  if (t.empty()) return false;
  for (std::size_t pos = l.find(t); pos != std::string::npos; pos = l.find(t, pos + 1)) {
    const bool left = pos == 0 || !word_char(l[pos - 1]);
    const bool right = pos + t.size() == l.size() || !word_char(l[pos + t.size()]);
    if (left && right) return true;
  }
  return false;
}

std::pair<GateState, GateEvent> process_line(const GateState& state, const std::string& line,
                                             const GateConfig& config) {
  GateState next = state;
  if (contains_word(line, config.stop_word)) {
    next.mode = Mode::kStopped;
    next.buffer.clear();
    return {next, {EventKind::kEmergencyStop, {}}};
  }
  if (state.mode == Mode::kStopped) {
    if (contains_word(line, config.resume_word)) {
      next.mode = Mode::kListening;
      return {next, {EventKind::kResume, {}}};
    }
    return {next, {EventKind::kIgnored, {}}};
  }
  const std::string piece = trim(line);
  if (piece.empty()) return {next, {EventKind::kIgnored, {}}};

  const std::string combined = next.buffer.empty() ? piece : next.buffer + " " + piece;
  if (ends_with_word(combined, config.deactivation_word)) {
    next.buffer.clear();
    std::string instruction = remove_word(combined, config.deactivation_word);
    if (instruction.empty()) return {next, {EventKind::kIgnored, {}}};
    return {next, {EventKind::kForward, std::move(instruction)}};
  }
  if (!config.buffering) {
    next.buffer.clear();
    return {next, {EventKind::kIgnored, {}}};
  }
  next.buffer = combined;
  return {next, {EventKind::kBuffered, {}}};
}

GateEvent CommandGate::feed(const std::string& line) {
  auto [next, event] = process_line(state_, line, config_);
  state_ = std::move(next);
  return event;
}

}  // namespace lam::gate
