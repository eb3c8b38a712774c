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

#include "macgame/builtins.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace macgame {
namespace {

constexpr Action T = Action::kTransmit;
constexpr Action I = Action::kIdle;

StateSpec State(std::string id, double prob) {
  StateSpec s;
  s.id = std::move(id);
  s.transmit_prob = prob;
  return s;
}

StrategyMachine Constant(std::string name, double prob) {
  StrategyMachine m{std::move(name), "0", {State("0", prob)}};
  StateSpec& s = m.states[0];
  if (prob > 0) {
    s.SetTarget(T, 1, "0");
    s.SetTarget(T, 2, "0");
  }
  if (prob < 1) {
    s.SetTarget(I, 0, "0");
    s.SetTarget(I, 1, "0");
  }
  return m;
}

// State "idle" copies an idle opponent, "send" a transmitting one.
StrategyMachine TitForTat(std::string name, bool first_transmit) {
  StateSpec idle = State("idle", 0.0);
  idle.SetTarget(I, 0, "idle");
  idle.SetTarget(I, 1, "send");
  StateSpec send = State("send", 1.0);
  send.SetTarget(T, 1, "idle");
  send.SetTarget(T, 2, "send");
  return {std::move(name), first_transmit ? "send" : "idle",
          {std::move(idle), std::move(send)}};
}

// 1: contend with probability 1/2 until someone scores.
// 2: own score just happened; yield one slot to the opponent.
// 3: our turn; transmit until we score.
StrategyMachine ThreeState() {
  StateSpec s1 = State("1", 0.5);
  s1.SetTarget(T, 1, "2");
  s1.SetTarget(T, 2, "1");
  s1.SetTarget(I, 0, "1");
  s1.SetTarget(I, 1, "3");
  StateSpec s2 = State("2", 0.0);
  s2.SetTarget(I, 0, "3");
  s2.SetTarget(I, 1, "3");
  StateSpec s3 = State("3", 1.0);
  s3.SetTarget(T, 1, "2");
  s3.SetTarget(T, 2, "3");
  return {"three_state", "1", {std::move(s1), std::move(s2), std::move(s3)}};
}

// As 3-State, except an opponent that skips its turn in state 2 sends us to
// state 4, which keeps the channel until a collision hands the turn back.
StrategyMachine FourState() {
  StrategyMachine m = ThreeState();
  m.name = "four_state";
  m.states[1].SetTarget(I, 0, "4");
  StateSpec s4 = State("4", 1.0);
  s4.SetTarget(T, 1, "4");
  s4.SetTarget(T, 2, "2");
  m.states.push_back(std::move(s4));
  return m;
}

constexpr std::array<std::string_view, 7> kNames = {
    "never",        "always",     "tft0",
    "tft1",         "three_state", "four_state",
    "four_state_enhanced"};

}  // namespace

std::span<const std::string_view> BuiltinNames() { return kNames; }

StrategyMachine Builtin(std::string_view name) {
  if (name == "never") return Constant("never", 0.0);
  if (name == "always") return Constant("always", 1.0);
  if (name == "tft0") return TitForTat("tft0", false);
  if (name == "tft1") return TitForTat("tft1", true);
  if (name == "three_state") return ThreeState();
  if (name == "four_state") return FourState();
  if (name == "four_state_enhanced") {
    StrategyMachine m = FourState();
    m.name = "four_state_enhanced";
    m.last_slot = LastSlotOverride::kOnForeignBehavior;
    return m;
  }
  throw std::invalid_argument("unknown builtin strategy '" + std::string(name) +
                              "'");
}

}  // namespace macgame
