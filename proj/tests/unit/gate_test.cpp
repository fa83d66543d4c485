#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "lam/gate/command_gate.hpp"

using namespace lam::gate;

TEST_CASE("keyword protocol examples") {
  CommandGate gate;
  SUBCASE("terminal keyword forwards the instruction") {
    const GateEvent e = gate.feed("Pick up the red cube and place it on the table, execute.");
    CHECK(e.kind == EventKind::kForward);
    CHECK(e.text == "Pick up the red cube and place it on the table");
  }
  SUBCASE("stop halts, okay resumes") {
    CHECK(gate.feed("STOP.").kind == EventKind::kEmergencyStop);
    CHECK(gate.state().mode == Mode::kStopped);
    CHECK(gate.feed("move to home, execute").kind == EventKind::kIgnored);
    CHECK(gate.feed("Okay.").kind == EventKind::kResume);
    CHECK(gate.state().mode == Mode::kListening);
  }
  SUBCASE("split utterances are buffered") {
    CHECK(gate.feed("move the arm").kind == EventKind::kBuffered);
    const GateEvent e = gate.feed("to home, execute");
    CHECK(e.kind == EventKind::kForward);
    CHECK(e.text == "move the arm to home");
    CHECK(gate.state().buffer.empty());
  }
  SUBCASE("stop clears the buffer") {
    gate.feed("move the arm");
    gate.feed("please stop now");
    gate.feed("okay");
    CHECK(gate.feed("home, execute").text == "home");
  }
  SUBCASE("word boundaries") {
    CHECK(gate.feed("an unstoppable robot").kind == EventKind::kBuffered);
    CHECK(gate.feed("re-execute").kind == EventKind::kForward);
    CHECK(gate.feed("executed").kind == EventKind::kBuffered);
    CHECK(contains_word("Stop!", "stop"));
    CHECK(contains_word("stop", "STOP"));
    CHECK_FALSE(contains_word("stopper", "stop"));
    CHECK_FALSE(contains_word("nonstop", "stop"));
  }
  SUBCASE("blank lines and bare keywords are ignored") {
    CHECK(gate.feed("   ").kind == EventKind::kIgnored);
    CHECK(gate.feed("Execute!").kind == EventKind::kIgnored);
    CHECK(gate.state().buffer.empty());
  }
  SUBCASE("without buffering") {
    CommandGate strict(GateConfig{false});
    CHECK(strict.feed("move the arm").kind == EventKind::kIgnored);
    CHECK(strict.feed("to home, execute").text == "to home");
  }
}

TEST_CASE("recorded voice script replays to the golden log") {
  std::istringstream script(lam::testing::read_file(lam::testing::data_path("transcripts/voice_script.txt")));
  CommandGate gate;
  std::string line, log;
  int lines = 0, forwards = 0, stops = 0, resumes = 0;
  while (std::getline(script, line)) {
    const GateEvent e = gate.feed(line);
    log += e.to_string() + "\n";
    ++lines;
    forwards += e.kind == EventKind::kForward;
    stops += e.kind == EventKind::kEmergencyStop;
    resumes += e.kind == EventKind::kResume;
  }
  CHECK(lines == 29);
  CHECK(forwards == 27);
  CHECK(stops == 1);
  CHECK(resumes == 1);
  CHECK(log == lam::testing::read_file(std::string(LAM_GOLDEN_DIR) + "/gate_voice_script.log"));
}

TEST_CASE("fuzzed transcript streams") {
  const std::vector<std::string> words = {"pick", "up", "the", "red", "cube", "STOP", "stop.", "Stop", "okay",
                                          "OKAY.", "execute", "execute.", "unstoppable", "nonstop", "move",
                                          ",", "home", "Execute", "stopped", "okayish", "  "};
  std::mt19937_64 rng(2024);
  int stop_lines = 0;
  for (int stream = 0; stream < 400; ++stream) {
    CommandGate gate(GateConfig{stream % 2 == 0});
    for (int i = 0; i < 30; ++i) {
      std::string line;
      const int n = static_cast<int>(rng() % 6);
      for (int k = 0; k < n; ++k) line += (k ? " " : "") + words[rng() % words.size()];
      const Mode before = gate.state().mode;
      const GateEvent e = gate.feed(line);
      if (contains_word(line, "stop")) {
        ++stop_lines;
        CHECK(e.kind == EventKind::kEmergencyStop);
        CHECK(gate.state().mode == Mode::kStopped);
      }
      if (before == Mode::kStopped) CHECK(e.kind != EventKind::kForward);
      if (e.kind == EventKind::kForward) {
        CHECK_FALSE(contains_word(e.text, "execute"));
        CHECK_FALSE(e.text.empty());
      }
      if (gate.state().mode == Mode::kStopped) CHECK(gate.state().buffer.empty());
    }
  }
  CHECK(stop_lines > 100);
}
