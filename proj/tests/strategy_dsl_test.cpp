// Copyright 2026 The macgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "macgame/builtins.hpp"
#include "macgame/game.hpp"
#include "macgame/strategy.hpp"
#include "oracles.hpp"

namespace macgame {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int CountErrors(const std::vector<Diagnostic>& d) {
  int n = 0;
  for (const auto& x : d) n += x.is_error();
  return n;
}

constexpr const char* kTft0Source = R"(machine tft0
start idle
state idle transmit 0
  on I f=0 -> idle
  on I f=1 -> send
end
state send transmit 1
  on T f=1 -> idle
  on T f=2 -> send
end
)";

TEST_CASE("TFT-0 source plays X[t] = X_opponent[t-1]") {
  const ParseResult parsed = ParseStrategy(kTft0Source);
  REQUIRE(parsed.ok());
  CHECK(*parsed.machine == Builtin("tft0"));

  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const StrategyMachine opponent = oracle::RandomMachine(gen, 4, false);
    const auto transcript =
        PlayGame(*parsed.machine, opponent, 60, RngStream(trial, {0, 0, 0}),
                 RngStream(trial, {0, 0, 1}));
    CHECK(transcript.slots[0].decisions[0] == Action::kIdle);
    for (int t = 1; t < 60; ++t) {
      REQUIRE(transcript.slots[t].decisions[0] ==
              transcript.slots[t - 1].decisions[1]);
    }
  }
}

TEST_CASE("probability outside [0, 1] is a located range error") {
  const ParseResult r = ParseStrategy(
      "machine bad\nstart a\nstate a transmit 1.5\n  on T f=1 -> a\n"
      "  on T f=2 -> a\nend\n");
  REQUIRE_FALSE(r.ok());
  REQUIRE(CountErrors(r.diagnostics) == 1);
  const Diagnostic& d = r.diagnostics[0];
  CHECK(d.message.find("outside [0, 1]") != std::string::npos);
  CHECK(d.line == 3);
  CHECK(d.column == 18);
}

TEST_CASE("every builtin round-trips through the text format") {
  for (auto name : BuiltinNames()) {
    const StrategyMachine m = Builtin(name);
    const ParseResult r = ParseStrategy(SerializeStrategy(m));
    INFO(name);
    REQUIRE(r.ok());
    CHECK(*r.machine == m);
  }
}

TEST_CASE("round trip preserves arbitrary probabilities") {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 200; ++i) {
    const StrategyMachine m = oracle::RandomMachine(gen, 1 + i % 6, false);
    const ParseResult r = ParseStrategy(SerializeStrategy(m));
    REQUIRE(r.ok());
    REQUIRE(*r.machine == m);
  }
}

TEST_CASE("strategies/ corpus parses to the programmatic builtins") {
  for (auto name : BuiltinNames()) {
    const std::string path =
        std::string(MACGAME_STRATEGY_DIR) + "/" + std::string(name) + ".strat";
    const ParseResult r = ParseStrategy(ReadFile(path));
    INFO(path);
    REQUIRE(r.ok());
    CHECK(r.diagnostics.empty());
    CHECK(*r.machine == Builtin(name));
  }
}

TEST_CASE("builtins validate without diagnostics") {
  for (auto name : BuiltinNames()) {
    INFO(name);
    CHECK(ValidateMachine(Builtin(name)).empty());
  }
}

TEST_CASE("transition to an undefined state names the state") {
  StrategyMachine m = Builtin("four_state");
  m.states[2].SetTarget(Action::kTransmit, 2, "5");
  const auto d = ValidateMachine(m);
  REQUIRE(CountErrors(d) == 1);
  CHECK(d[0].message.find("'5'") != std::string::npos);
}

TEST_CASE("missing transition in a reachable state is one completeness error") {
  // State "c" lacks 'on I f=1' but is unreachable, so only the gap in "a"
  // counts; "c" gets a warning.
  const ParseResult r = ParseStrategy(R"(machine gaps
start a
state a transmit 0.3
  on T f=1 -> b
  on T f=2 -> a
  on I f=0 -> a
end
state b transmit 1
  on T f=1 -> a
  on T f=2 -> b
end
state c transmit 0
  on I f=0 -> a
end
)");
  REQUIRE_FALSE(r.ok());
  REQUIRE(CountErrors(r.diagnostics) == 1);
  const auto& err = *std::find_if(r.diagnostics.begin(), r.diagnostics.end(),
                                  [](const Diagnostic& d) { return d.is_error(); });
  CHECK(err.message.find("on I f=1") != std::string::npos);
  CHECK(err.line == 3);
  const bool warned = std::any_of(
      r.diagnostics.begin(), r.diagnostics.end(), [](const Diagnostic& d) {
        return !d.is_error() && d.message.find("'c'") != std::string::npos;
      });
  CHECK(warned);
}

TEST_CASE("omitted impossible transitions are accepted") {
  // Deterministic transmitter never observes f=0; an idle player never f=2.
  CHECK(ParseStrategy("machine m\nstart x\nstate x transmit 1\n"
                      "on T f=1 -> x\non T f=2 -> x\nend\n")
            .ok());
}

TEST_CASE("parser reports each structural problem with a location") {
  struct Case {
    const char* text;
    const char* needle;
    int line;
  };
  const Case cases[] = {
      {"machine m\nstart a\nstate a transmit 0\non I f=0 -> a\non I f=1 -> a\n"
       "end\nstate a transmit 0\non I f=0 -> a\non I f=1 -> a\nend\n",
       "duplicate state id 'a'", 7},
      {"machine m\nstart zz\nstate a transmit 0\non I f=0 -> a\n"
       "on I f=1 -> a\nend\n",
       "start state 'zz'", 2},
      {"machine m\nstart a\nstate a transmit 0\non I f=0 -> a\n"
       "on I f=1 -> b\nend\n",
       "undefined state 'b'", 5},
      {"machine m\nstart a\nstate a transmit x\nend\n", "invalid probability",
       3},
      {"machine m\nstart a\nbogus\n", "unknown directive", 3},
      {"machine m\nstart a\non I f=0 -> a\n", "outside a state block", 3},
      {"machine m\nstart a\nstate a transmit 0\non I f=3 -> a\nend\n",
       "expected feedback", 4},
      {"machine m\nstart a\nstate a transmit 0\non I f=0 -> a\n"
       "on I f=0 -> a\nend\n",
       "duplicate transition", 5},
      {"machine m\nstart a\nstate a transmit 0\non I f=0 -> a\n",
       "missing 'end'", 3},
      {"start a\nstate a transmit 0\non I f=0 -> a\non I f=1 -> a\nend\n",
       "missing 'machine", 1},
  };
  for (const auto& c : cases) {
    const ParseResult r = ParseStrategy(c.text);
    INFO(c.text);
    REQUIRE_FALSE(r.ok());
    const bool found = std::any_of(
        r.diagnostics.begin(), r.diagnostics.end(), [&](const Diagnostic& d) {
          return d.is_error() &&
                 d.message.find(c.needle) != std::string::npos &&
                 d.line == c.line && d.column >= 1;
        });
    CHECK_MESSAGE(found, "expected '" << c.needle << "' at line " << c.line);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const ParseResult r = ParseStrategy(
      "# header\n\nmachine   never # trailing\nstart 0\n\tstate 0 transmit 0\n"
      "on I f=0 -> 0 #x\non I f=1 -> 0\nend\n");
  REQUIRE(r.ok());
  CHECK(*r.machine == Builtin("never"));
}

TEST_CASE("is_deterministic") {
  CHECK(IsDeterministic(Builtin("tft0")));
  CHECK(IsDeterministic(Builtin("always")));
  CHECK_FALSE(IsDeterministic(Builtin("three_state")));
}

TEST_CASE("parser never crashes on arbitrary bytes") {
  std::mt19937_64 gen(2026);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> length(0, 400);
  const std::string alphabet = "machine start state transmit on T I f=0 1 2 ->"
                               " end # \n\t.-_0.5 1e9 nan inf";
  for (int i = 0; i < 20000; ++i) {
    std::string text;
    const int n = length(gen);
    for (int k = 0; k < n; ++k) {
      text += i % 2 ? static_cast<char>(byte(gen))
                    : alphabet[gen() % alphabet.size()];
    }
    const ParseResult r = ParseStrategy(text);
    REQUIRE(r.ok() == !HasErrors(r.diagnostics));
  }
  // Mutations of a valid source.
  const std::string base = SerializeStrategy(Builtin("four_state_enhanced"));
  for (int i = 0; i < 20000; ++i) {
    std::string text = base;
    const int edits = 1 + static_cast<int>(gen() % 4);
    for (int e = 0; e < edits; ++e) {
      const std::size_t pos = gen() % text.size();
      switch (gen() % 3) {
        case 0: text[pos] = static_cast<char>(byte(gen)); break;
        case 1: text.erase(pos, 1 + gen() % 8); break;
        default: text.insert(pos, 1, static_cast<char>(byte(gen)));
      }
      if (text.empty()) text = " ";
    }
    const ParseResult r = ParseStrategy(text);
    REQUIRE(r.ok() == !HasErrors(r.diagnostics));
    if (r.ok()) REQUIRE(ParseStrategy(SerializeStrategy(*r.machine)).ok());
  }
}

}  // namespace
}  // namespace macgame
