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

#include "macgame/game.hpp"

#include <stdexcept>
#include <string>

namespace macgame {
namespace {

void CheckHorizon(int horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("game horizon must be >= 1, got " +
                                std::to_string(horizon));
  }
}

std::optional<int> Scorer(Action a, Action b) {
  if (a == Action::kTransmit && b == Action::kIdle) return 0;
  if (b == Action::kTransmit && a == Action::kIdle) return 1;
  return std::nullopt;
}

template <typename AgentA, typename AgentB, typename OnSlot>
std::array<int, 2> Run(AgentA& a, AgentB& b, int horizon, RngStream& rng_a,
                       RngStream& rng_b, OnSlot&& on_slot) {
  std::array<int, 2> scores{};
  for (int t = 1; t <= horizon; ++t) {
    const Action xa = a.Decide(t, horizon, rng_a);
    const Action xb = b.Decide(t, horizon, rng_b);
    const int feedback = ToInt(xa) + ToInt(xb);
    const auto scorer = Scorer(xa, xb);
    if (scorer) ++scores[*scorer];
    a.Observe(xa, feedback);
    b.Observe(xb, feedback);
    on_slot(SlotRecord{t, {xa, xb}, feedback, scorer});
  }
  return scores;
}

}  // namespace

GameTranscript PlayGame(Agent& a, Agent& b, int horizon, RngStream rng_a,
                        RngStream rng_b) {
  CheckHorizon(horizon);
  GameTranscript transcript;
  transcript.horizon = horizon;
  transcript.slots.reserve(horizon);
  transcript.scores =
      Run(a, b, horizon, rng_a, rng_b,
          [&](const SlotRecord& r) { transcript.slots.push_back(r); });
  return transcript;
}

GameTranscript PlayGame(const CompiledStrategy& a, const CompiledStrategy& b,
                        int horizon, RngStream rng_a, RngStream rng_b) {
  MachineAgent agent_a(a);
  MachineAgent agent_b(b);
  return PlayGame(agent_a, agent_b, horizon, rng_a, rng_b);
}

GameTranscript PlayGame(const StrategyMachine& a, const StrategyMachine& b,
                        int horizon, RngStream rng_a, RngStream rng_b) {
  CheckHorizon(horizon);
  const CompiledStrategy ca(a);
  const CompiledStrategy cb(b);
  return PlayGame(ca, cb, horizon, rng_a, rng_b);
}

std::array<int, 2> PlayScores(const CompiledStrategy& a,
                              const CompiledStrategy& b, int horizon,
                              RngStream rng_a, RngStream rng_b) {
  CheckHorizon(horizon);
  MachineAgent agent_a(a);
  MachineAgent agent_b(b);
  return Run(agent_a, agent_b, horizon, rng_a, rng_b,
             [](const SlotRecord&) {});
}

CaptureOutcome PlayCaptureEpisode(const CapturePolicy& policy, int users,
                                  std::span<RngStream> streams,
                                  std::int64_t max_slots) {
  if (users < 1) throw std::invalid_argument("capture episode needs >= 1 user");
  if (static_cast<int>(streams.size()) < users) {
    throw std::invalid_argument("capture episode needs one stream per user");
  }
  if (max_slots < 1) throw std::invalid_argument("max_slots must be >= 1");

  // active[u]: user u is still in the group that is allowed to transmit.
  std::vector<char> active(users, 1);
  std::vector<char> sent(users, 0);
  int group = users;
  for (std::int64_t t = 1; t <= max_slots; ++t) {
    const double p = policy.TransmitProbability(group);
    int transmitters = 0;
    for (int u = 0; u < users; ++u) {
      sent[u] = active[u] && streams[u].Bernoulli(p);
      transmitters += sent[u];
    }
    if (transmitters == 1) return {t, false};

    switch (policy.Step(group, transmitters)) {
      case GroupStep::kRepeat:
        break;
      case GroupStep::kKeepTransmitters:
        for (int u = 0; u < users; ++u) active[u] = active[u] && sent[u];
        group = transmitters;
        break;
      case GroupStep::kKeepSilent:
        for (int u = 0; u < users; ++u) active[u] = active[u] && !sent[u];
        group -= transmitters;
        break;
    }
  }
  return {max_slots, true};
}

}  // namespace macgame
