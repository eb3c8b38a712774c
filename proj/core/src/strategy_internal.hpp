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

#ifndef MACGAME_SRC_STRATEGY_INTERNAL_HPP_
#define MACGAME_SRC_STRATEGY_INTERNAL_HPP_

#include <array>
#include <string_view>
#include <vector>

#include "macgame/strategy.hpp"

namespace macgame::internal {

struct Location {
  int line = 0;
  int column = 0;
};

// Where each element of a parsed machine came from, parallel to
// StrategyMachine::states.
struct SourceMap {
  Location machine;
  Location start;
  std::vector<Location> state_decl;
  std::vector<Location> state_prob;
  std::vector<std::array<std::array<Location, kMaxTwoPlayerFeedback + 1>, 2>>
      transition;
};

std::vector<Diagnostic> ValidateMachine(const StrategyMachine& machine,
                                        const SourceMap* source);

bool IsValidIdentifier(std::string_view id);

}  // namespace macgame::internal

#endif  // MACGAME_SRC_STRATEGY_INTERNAL_HPP_
