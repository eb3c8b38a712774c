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

#ifndef MACGAME_STRATEGY_HPP_
#define MACGAME_STRATEGY_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace macgame {

// Per-slot binary decision of one player.
enum class Action : std::uint8_t { kIdle = 0, kTransmit = 1 };

inline int ToInt(Action a) { return static_cast<int>(a); }

// Largest transmitter count a 2-player slot can report.
inline constexpr int kMaxTwoPlayerFeedback = 2;

enum class LastSlotOverride : std::uint8_t {
  kNone,
  // Transmit surely on slot T once any observation occurred that the
  // machine could not have produced when playing an independent copy of
  // itself.
  kOnForeignBehavior,
};

// One state of a probabilistic finite-state strategy. Transitions are keyed
// by (own action, transmitter count observed on that slot).
struct StateSpec {
  std::string id;
  double transmit_prob = 0.0;
  std::array<std::array<std::optional<std::string>, kMaxTwoPlayerFeedback + 1>,
             2>
      on;

  const std::optional<std::string>& Target(Action own, int feedback) const {
    return on[ToInt(own)][feedback];
  }
  void SetTarget(Action own, int feedback, std::string target) {
    on[ToInt(own)][feedback] = std::move(target);
  }

  friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

// Declarative strategy. Targets are state ids, so a machine can be built in
// an invalid form; ValidateMachine reports what is wrong with it.
struct StrategyMachine {
  std::string name;
  std::string start;
  std::vector<StateSpec> states;
  LastSlotOverride last_slot = LastSlotOverride::kNone;

  const StateSpec* FindState(std::string_view id) const;

  friend bool operator==(const StrategyMachine&,
                         const StrategyMachine&) = default;
};

struct Diagnostic {
  enum class Severity : std::uint8_t { kError, kWarning };

  Severity severity = Severity::kError;
  std::string message;
  // 1-based source position; 0 when the machine was not parsed from text.
  int line = 0;
  int column = 0;

  bool is_error() const { return severity == Severity::kError; }
  std::string ToString() const;
};

bool HasErrors(const std::vector<Diagnostic>& diagnostics);

// Empty (or warnings only) iff the machine can be compiled. Unreachable
// states produce warnings.
std::vector<Diagnostic> ValidateMachine(const StrategyMachine& machine);

// True iff every transmit probability is exactly 0 or 1.
bool IsDeterministic(const StrategyMachine& machine);

// True iff no state reachable from the start state ever transmits.
bool NeverTransmits(const StrategyMachine& machine);

class InvalidStrategyError : public std::invalid_argument {
 public:
  InvalidStrategyError(const std::string& name,
                       std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Validated, index-based form of a StrategyMachine used by the game engine.
// Immutable and safe to share between concurrent games.
class CompiledStrategy {
 public:
  // Throws InvalidStrategyError if ValidateMachine reports an error.
  explicit CompiledStrategy(const StrategyMachine& machine);

  const std::string& name() const { return name_; }
  int start() const { return start_; }
  int num_states() const { return static_cast<int>(prob_.size()); }
  double transmit_prob(int state) const { return prob_[state]; }
  // Next state, or -1 for an (action, feedback) pair the machine omits
  // because it cannot occur.
  int Next(int state, Action own, int feedback) const {
    return next_[Index(state, own, feedback)];
  }
  bool has_last_slot_override() const { return override_; }
  // Observation that independent self-play of this machine never produces.
  bool IsForeign(int state, Action own, int feedback) const {
    return foreign_[Index(state, own, feedback)] != 0;
  }

 private:
  static int Index(int state, Action own, int feedback) {
    return state * 6 + ToInt(own) * 3 + feedback;
  }

  std::string name_;
  int start_ = 0;
  bool override_ = false;
  std::vector<double> prob_;
  std::vector<int> next_;
  std::vector<std::uint8_t> foreign_;
};

// ---------------------------------------------------------------------------
// Text format
//
//   machine <name>
//   start <state-id>
//   lastslot-override on-foreign-behavior        # optional
//   state <state-id> transmit <prob>
//     on T f=<0|1|2> -> <state-id>
//     on I f=<0|1|2> -> <state-id>
//   end
//
// '#' starts a comment. Transitions that cannot occur (T with f=0, I with
// f=2) may be omitted.

struct ParseResult {
  std::optional<StrategyMachine> machine;  // set iff no errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return machine.has_value(); }
};

ParseResult ParseStrategy(std::string_view text);
std::string SerializeStrategy(const StrategyMachine& machine);

}  // namespace macgame

#endif  // MACGAME_STRATEGY_HPP_
