#include "lam/translator/rules.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lam::translator {

namespace {

struct IntentName {
  const char* name;
  IntentKind kind;
  unsigned slots;
};

constexpr IntentName kIntents[] = {
    {"onto", IntentKind::kOnto, 2},   {"into", IntentKind::kInto, 2},
    {"table", IntentKind::kTable, 1}, {"home", IntentKind::kHome, 0},
    {"goto", IntentKind::kGoto, 1},   {"open", IntentKind::kOpenGripper, 0},
    {"close", IntentKind::kCloseGripper, 0},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

std::string to_string(IntentKind kind) {
  for (const auto& i : kIntents) {
    if (i.kind == kind) return i.name;
  }
  return "?";
}

std::string normalize_instruction(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c == ',' || c == ';') c = ' ';
    s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  std::istringstream words(s);
  std::string w, out;
  while (words >> w) out += (out.empty() ? "" : " ") + w;
  auto strip = [&] {
    while (!out.empty() && (std::ispunct(static_cast<unsigned char>(out.back())) || out.back() == ' ')) out.pop_back();
  };
  strip();
  const std::string kw = " execute";
  if (out == "execute") out.clear();
  if (out.size() >= kw.size() && out.compare(out.size() - kw.size(), kw.size(), kw) == 0) {
    out.erase(out.size() - kw.size());
    strip();
  }
  return out;
}

RuleSet RuleSet::parse(const std::string& text) {
  RuleSet set;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto sep = t.find(":=");
    if (sep == std::string::npos) {
      throw std::invalid_argument("rules line " + std::to_string(number) + ": expected '<intent> := <pattern>'");
    }
    const std::string name = trim(t.substr(0, sep));
    const std::string pattern = trim(t.substr(sep + 2));
    const IntentName* intent = nullptr;
    for (const auto& i : kIntents) {
      if (name == i.name) intent = &i;
    }
    if (intent == nullptr) throw std::invalid_argument("rules line " + std::to_string(number) + ": unknown intent '" + name + "'");
    std::regex re;
    try {
      re = std::regex(pattern, std::regex::ECMAScript | std::regex::icase);
    } catch (const std::regex_error& e) {
      throw std::invalid_argument("rules line " + std::to_string(number) + ": " + e.what());
    }
    if (re.mark_count() != intent->slots) {
      throw std::invalid_argument("rules line " + std::to_string(number) + ": intent '" + name + "' needs " +
                                  std::to_string(intent->slots) + " capture groups");
    }
    set.rules_.push_back({intent->kind, pattern, std::move(re), number});
  }
  return set;
}

RuleSet RuleSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open rules file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::optional<Intent> RuleSet::match(const std::string& instruction) const {
  const std::string text = normalize_instruction(instruction);
  for (const auto& rule : rules_) {
    std::smatch m;
    if (std::regex_match(text, m, rule.regex)) {
      Intent intent{rule.kind, {}, rule.line};
      for (std::size_t i = 1; i < m.size(); ++i) intent.slots.push_back(m[i].str());
      return intent;
    }
  }
  return std::nullopt;
}

std::vector<Intent> RuleSet::match_sequence(const std::string& instruction) const {
  // Clauses first: the object slots are greedy and would swallow "and then ...".
  static const std::regex separator(" (?:and )?then ");
  const std::string text = normalize_instruction(instruction);
  std::vector<Intent> clauses;
  for (std::sregex_token_iterator it(text.begin(), text.end(), separator, -1), end; it != end; ++it) {
    auto intent = match(it->str());
    if (!intent) {
      clauses.clear();
      break;
    }
    clauses.push_back(std::move(*intent));
  }
  if (clauses.size() > 1) return clauses;
  if (auto whole = match(instruction)) return {*whole};
  return {};
}

}  // namespace lam::translator
