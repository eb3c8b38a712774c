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

#include "macgame/strategy.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "strategy_internal.hpp"

namespace macgame {
namespace {

constexpr std::array<Action, 2> kActions = {Action::kIdle, Action::kTransmit};

char ActionLetter(Action a) { return a == Action::kTransmit ? 'T' : 'I'; }

// Feedback values a 2-player slot can report given our own action.
bool FeedbackPossible(Action own, int feedback) {
  return own == Action::kTransmit ? feedback >= 1 : feedback <= 1;
}

bool ActionPossible(double prob, Action a) {
  return a == Action::kTransmit ? prob > 0.0 : prob < 1.0;
}

internal::Location At(const internal::SourceMap* source,
                      internal::Location internal::SourceMap::*field) {
  return source ? source->*field : internal::Location{};
}

Diagnostic MakeError(std::string message, internal::Location where) {
  return {Diagnostic::Severity::kError, std::move(message), where.line,
          where.column};
}

Diagnostic MakeWarning(std::string message, internal::Location where) {
  return {Diagnostic::Severity::kWarning, std::move(message), where.line,
          where.column};
}

// Indices of states reachable from `start` using only transitions that can
// actually fire. Unresolvable targets are skipped.
std::vector<bool> Reachable(
    const StrategyMachine& machine,
    const std::unordered_map<std::string_view, int>& index, int start) {
  std::vector<bool> seen(machine.states.size(), false);
  std::vector<int> stack = {start};
  seen[start] = true;
  while (!stack.empty()) {
    const StateSpec& s = machine.states[stack.back()];
    stack.pop_back();
    for (Action a : kActions) {
      if (!ActionPossible(s.transmit_prob, a)) continue;
      for (int f = 0; f <= kMaxTwoPlayerFeedback; ++f) {
        if (!FeedbackPossible(a, f)) continue;
        const auto& target = s.Target(a, f);
        if (!target) continue;
        auto it = index.find(*target);
        if (it == index.end() || seen[it->second]) continue;
        seen[it->second] = true;
        stack.push_back(it->second);
      }
    }
  }
  return seen;
}

}  // namespace

const StateSpec* StrategyMachine::FindState(std::string_view id) const {
  for (const auto& s : states) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::string Diagnostic::ToString() const {
  std::ostringstream out;
  if (line > 0) out << line << ':' << column << ": ";
  out << (is_error() ? "error: " : "warning: ") << message;
  return out.str();
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.is_error()) return true;
  }
  return false;
}

namespace internal {

bool IsValidIdentifier(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-' ||
                    c == '.';
    if (!ok) return false;
  }
  return true;
}

std::vector<Diagnostic> ValidateMachine(const StrategyMachine& machine,
                                        const SourceMap* source) {
  std::vector<Diagnostic> out;
  auto state_loc = [&](std::size_t i) {
    return source ? source->state_decl[i] : Location{};
  };
  auto prob_loc = [&](std::size_t i) {
    return source ? source->state_prob[i] : Location{};
  };
  auto transition_loc = [&](std::size_t i, Action a, int f) {
    return source ? source->transition[i][ToInt(a)][f] : Location{};
  };

  if (!IsValidIdentifier(machine.name)) {
    out.push_back(MakeError("invalid machine name '" + machine.name + "'",
                            At(source, &SourceMap::machine)));
  }
  if (machine.states.empty()) {
    out.push_back(MakeError("machine '" + machine.name + "' has no states",
                            At(source, &SourceMap::machine)));
    return out;
  }

  std::unordered_map<std::string_view, int> index;
  for (std::size_t i = 0; i < machine.states.size(); ++i) {
    const StateSpec& s = machine.states[i];
    if (!IsValidIdentifier(s.id)) {
      out.push_back(MakeError("invalid state id '" + s.id + "'", state_loc(i)));
    }
    if (!index.emplace(s.id, static_cast<int>(i)).second) {
      out.push_back(MakeError("duplicate state id '" + s.id + "'", state_loc(i)));
    }
    if (!(s.transmit_prob >= 0.0 && s.transmit_prob <= 1.0)) {
      std::ostringstream msg;
      msg << "transmit probability " << s.transmit_prob << " of state '"
          << s.id << "' is outside [0, 1]";
      out.push_back(MakeError(msg.str(), prob_loc(i)));
    }
  }

  for (std::size_t i = 0; i < machine.states.size(); ++i) {
    const StateSpec& s = machine.states[i];
    for (Action a : kActions) {
      for (int f = 0; f <= kMaxTwoPlayerFeedback; ++f) {
        const auto& target = s.Target(a, f);
        if (target && !index.contains(*target)) {
          out.push_back(MakeError("transition 'on " +
                                      std::string(1, ActionLetter(a)) +
                                      " f=" + std::to_string(f) +
                                      "' of state '" + s.id +
                                      "' targets undefined state '" + *target +
                                      "'",
                                  transition_loc(i, a, f)));
        }
      }
    }
  }

  auto start_it = index.find(machine.start);
  if (start_it == index.end()) {
    out.push_back(MakeError("start state '" + machine.start + "' is not defined",
                            At(source, &SourceMap::start)));
    return out;
  }

  const std::vector<bool> reachable =
      Reachable(machine, index, start_it->second);
  for (std::size_t i = 0; i < machine.states.size(); ++i) {
    const StateSpec& s = machine.states[i];
    if (!reachable[i]) {
      if (index.at(s.id) == static_cast<int>(i)) {
        out.push_back(MakeWarning("state '" + s.id + "' is unreachable",
                                  state_loc(i)));
      }
      continue;
    }
    for (Action a : kActions) {
      if (!ActionPossible(s.transmit_prob, a)) continue;
      for (int f = 0; f <= kMaxTwoPlayerFeedback; ++f) {
        if (!FeedbackPossible(a, f) || s.Target(a, f)) continue;
        out.push_back(MakeError("state '" + s.id +
                                    "' has no transition for 'on " +
                                    std::string(1, ActionLetter(a)) +
                                    " f=" + std::to_string(f) + "'",
                                state_loc(i)));
      }
    }
  }
  return out;
}

}  // namespace internal

std::vector<Diagnostic> ValidateMachine(const StrategyMachine& machine) {
  return internal::ValidateMachine(machine, nullptr);
}

bool IsDeterministic(const StrategyMachine& machine) {
  for (const auto& s : machine.states) {
    if (s.transmit_prob != 0.0 && s.transmit_prob != 1.0) return false;
  }
  return true;
}

bool NeverTransmits(const StrategyMachine& machine) {
  std::unordered_map<std::string_view, int> index;
  for (std::size_t i = 0; i < machine.states.size(); ++i) {
    index.emplace(machine.states[i].id, static_cast<int>(i));
  }
  auto start = index.find(machine.start);
  if (start == index.end()) return false;
  const auto reachable = Reachable(machine, index, start->second);
  for (std::size_t i = 0; i < machine.states.size(); ++i) {
    if (reachable[i] && machine.states[i].transmit_prob > 0.0) return false;
  }
  return true;
}

InvalidStrategyError::InvalidStrategyError(const std::string& name,
                                           std::vector<Diagnostic> diagnostics)
    : std::invalid_argument([&] {
        std::string msg = "invalid strategy '" + name + "'";
        for (const auto& d : diagnostics) {
          if (d.is_error()) msg += "\n  " + d.ToString();
        }
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

CompiledStrategy::CompiledStrategy(const StrategyMachine& machine)
    : name_(machine.name),
      override_(machine.last_slot == LastSlotOverride::kOnForeignBehavior) {
  auto diagnostics = ValidateMachine(machine);
  if (HasErrors(diagnostics)) {
    throw InvalidStrategyError(machine.name, std::move(diagnostics));
  }

  const int n = static_cast<int>(machine.states.size());
  std::unordered_map<std::string_view, int> index;
  for (int i = 0; i < n; ++i) index.emplace(machine.states[i].id, i);
  start_ = index.at(machine.start);
  prob_.resize(n);
  next_.assign(static_cast<std::size_t>(n) * 6, -1);
  for (int i = 0; i < n; ++i) {
    const StateSpec& s = machine.states[i];
    prob_[i] = s.transmit_prob;
    for (Action a : kActions) {
      for (int f = 0; f <= kMaxTwoPlayerFeedback; ++f) {
        if (const auto& t = s.Target(a, f)) next_[Index(i, a, f)] = index.at(*t);
      }
    }
  }

  // Explore the joint automaton of two independent copies. Every
  // (state, action, feedback) seen from either seat is consistent with a
  // self-play opponent; everything else is foreign.
  foreign_.assign(next_.size(), 1);
  std::vector<bool> visited(static_cast<std::size_t>(n) * n, false);
  std::vector<std::pair<int, int>> stack = {{start_, start_}};
  visited[static_cast<std::size_t>(start_) * n + start_] = true;
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    for (Action ax : kActions) {
      if (!ActionPossible(prob_[x], ax)) continue;
      for (Action ay : kActions) {
        if (!ActionPossible(prob_[y], ay)) continue;
        const int f = ToInt(ax) + ToInt(ay);
        foreign_[Index(x, ax, f)] = 0;
        foreign_[Index(y, ay, f)] = 0;
        const int nx = Next(x, ax, f);
        const int ny = Next(y, ay, f);
        const std::size_t key = static_cast<std::size_t>(nx) * n + ny;
        if (!visited[key]) {
          visited[key] = true;
          stack.emplace_back(nx, ny);
        }
      }
    }
  }
}

}  // namespace macgame
