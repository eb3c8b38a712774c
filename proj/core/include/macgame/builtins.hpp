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

#ifndef MACGAME_BUILTINS_HPP_
#define MACGAME_BUILTINS_HPP_

#include <span>
#include <string_view>

#include "macgame/strategy.hpp"

namespace macgame {

// Names accepted by Builtin(): never, always, tft0, tft1, three_state,
// four_state, four_state_enhanced.
std::span<const std::string_view> BuiltinNames();

// Throws std::invalid_argument for an unknown name.
StrategyMachine Builtin(std::string_view name);

}  // namespace macgame

#endif  // MACGAME_BUILTINS_HPP_
