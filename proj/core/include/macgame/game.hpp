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

#ifndef MACGAME_GAME_HPP_
#define MACGAME_GAME_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "macgame/rng.hpp"
#include "macgame/strategy.hpp"

namespace macgame {

// One slot of a 2-player game. Slots are numbered from 1.
struct SlotRecord {
  int t = 0;
  std::array<Action, 2> decisions{};
  int feedback = 0;  // number of transmitters
  std::optional<int> scorer;

  friend bool operator==(const SlotRecord&, const SlotRecord&) = default;
};

struct GameTranscript {
  int horizon = 0;
  std::vector<SlotRecord> slots;
  std::array<int, 2> scores{};

  friend bool operator==(const GameTranscript&,
                         const GameTranscript&) = default;
};

// Programmatic strategy interface. An agent holds the per-game state of one
// player; Decide for slot t is called only after Observe for slots 1..t-1.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual Action Decide(int t, int horizon, RngStream& rng) = 0;
  virtual void Observe(Action own, int feedback) = 0;
};

// Runs a CompiledStrategy for one game.
class MachineAgent final : public Agent {
 public:
  explicit MachineAgent(const CompiledStrategy& strategy)
      : strategy_(&strategy), state_(strategy.start()) {}

  Action Decide(int t, int horizon, RngStream& rng) override {
    if (triggered_ && t == horizon) return Action::kTransmit;
    return rng.Bernoulli(strategy_->transmit_prob(state_)) ? Action::kTransmit
                                                            : Action::kIdle;
  }

  void Observe(Action own, int feedback) override {
    if (strategy_->has_last_slot_override() &&
        strategy_->IsForeign(state_, own, feedback)) {
      triggered_ = true;
    }
    state_ = strategy_->Next(state_, own, feedback);
  }

  int state() const { return state_; }
  bool triggered() const { return triggered_; }

 private:
  const CompiledStrategy* strategy_;
  int state_;
  bool triggered_ = false;
};

// Plays a `horizon`-slot game. Throws std::invalid_argument if horizon < 1.
GameTranscript PlayGame(Agent& a, Agent& b, int horizon, RngStream rng_a,
                        RngStream rng_b);
GameTranscript PlayGame(const CompiledStrategy& a, const CompiledStrategy& b,
                        int horizon, RngStream rng_a, RngStream rng_b);
// Validates both machines first; throws InvalidStrategyError before slot 1.
GameTranscript PlayGame(const StrategyMachine& a, const StrategyMachine& b,
                        int horizon, RngStream rng_a, RngStream rng_b);

// Same game as PlayGame without recording the transcript.
std::array<int, 2> PlayScores(const CompiledStrategy& a,
                              const CompiledStrategy& b, int horizon,
                              RngStream rng_a, RngStream rng_b);

// ---------------------------------------------------------------------------
// n-user capture episodes.

// What an active group does after a slot with `transmitters` senders.
enum class GroupStep : std::uint8_t {
  kRepeat,            // no information: same group tries again
  kKeepTransmitters,  // continue with the users who sent
  kKeepSilent,        // continue with the users who did not send
};

// Symmetric policy run identically by every user. Users know only the size
// of the group they are in and the feedback history.
class CapturePolicy {
 public:
  virtual ~CapturePolicy() = default;
  virtual double TransmitProbability(int group_size) const = 0;
  // Called only with 0 <= transmitters <= group_size, transmitters != 1.
  virtual GroupStep Step(int group_size, int transmitters) const = 0;
};

struct CaptureOutcome {
  std::int64_t slots = 0;  // capture time Z, or max_slots if censored
  bool censored = false;
};

inline constexpr std::int64_t kDefaultMaxCaptureSlots = 10'000;

// Runs one episode with one stream per user. Returns the first slot on which
// exactly one user transmitted.
CaptureOutcome PlayCaptureEpisode(const CapturePolicy& policy, int users,
                                  std::span<RngStream> streams,
                                  std::int64_t max_slots =
                                      kDefaultMaxCaptureSlots);

}  // namespace macgame

#endif  // MACGAME_GAME_HPP_
