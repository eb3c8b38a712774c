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

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "macgame/strategy.hpp"
#include "strategy_internal.hpp"

namespace macgame {
namespace {

using internal::Location;

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

// Splits one line on blanks, dropping everything from '#' on.
std::vector<Token> Tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r' && line[j] != '\v' && line[j] != '\f' &&
           line[j] != '#') {
      ++j;
    }
    tokens.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return tokens;
}

std::string Quote(std::string_view s) {
  std::string out = "'";
  for (char c : s.substr(0, 40)) {
    out += (static_cast<unsigned char>(c) < 0x20 ||
            static_cast<unsigned char>(c) >= 0x7f)
               ? '?'
               : c;
  }
  if (s.size() > 40) out += "...";
  return out + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult Run() {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t eol = text_.find('\n', pos);
      if (eol == std::string_view::npos) eol = text_.size();
      ++line_no;
      ParseLine(line_no, Tokenize(text_.substr(pos, eol - pos)));
      pos = eol + 1;
    }
    if (in_state_) {
      Error("state '" + machine_.states.back().id + "' is missing 'end'",
            source_.state_decl.back());
    }
    if (!seen_machine_) Error("missing 'machine <name>' line", {1, 1});
    if (!seen_start_) Error("missing 'start <state-id>' line", {1, 1});

    if (!has_error_) {
      for (auto& d : internal::ValidateMachine(machine_, &source_)) {
        has_error_ = has_error_ || d.is_error();
        result_.diagnostics.push_back(std::move(d));
      }
    }
    if (!has_error_) result_.machine = std::move(machine_);
    return std::move(result_);
  }

 private:
  void Error(std::string message, Location where) {
    has_error_ = true;
    result_.diagnostics.push_back({Diagnostic::Severity::kError,
                                   std::move(message), where.line,
                                   where.column});
  }

  void ExpectCount(const std::vector<Token>& t, std::size_t n, int line,
                   std::string_view usage, bool& ok) {
    if (t.size() != n) {
      Error("expected '" + std::string(usage) + "'", {line, t[0].column});
      ok = false;
    }
  }

  bool Identifier(const Token& t, int line, std::string_view what) {
    if (internal::IsValidIdentifier(t.text)) return true;
    Error("invalid " + std::string(what) + " " + Quote(t.text) +
              " (allowed: letters, digits, '_', '-', '.')",
          {line, t.column});
    return false;
  }

  void ParseLine(int line, const std::vector<Token>& t) {
    if (t.empty()) return;
    const std::string_view head = t[0].text;
    bool ok = true;

    if (head == "machine") {
      ExpectCount(t, 2, line, "machine <name>", ok);
      if (!ok) return;
      if (seen_machine_) {
        Error("duplicate 'machine' line", {line, t[0].column});
        return;
      }
      seen_machine_ = true;
      source_.machine = {line, t[1].column};
      if (Identifier(t[1], line, "machine name")) {
        machine_.name = std::string(t[1].text);
      }
    } else if (head == "start") {
      ExpectCount(t, 2, line, "start <state-id>", ok);
      if (!ok) return;
      if (seen_start_) {
        Error("duplicate 'start' line", {line, t[0].column});
        return;
      }
      seen_start_ = true;
      source_.start = {line, t[1].column};
      if (Identifier(t[1], line, "state id")) {
        machine_.start = std::string(t[1].text);
      }
    } else if (head == "lastslot-override") {
      ExpectCount(t, 2, line, "lastslot-override on-foreign-behavior", ok);
      if (!ok) return;
      if (t[1].text != "on-foreign-behavior") {
        Error("unknown last-slot override " + Quote(t[1].text),
              {line, t[1].column});
        return;
      }
      machine_.last_slot = LastSlotOverride::kOnForeignBehavior;
    } else if (head == "state") {
      ParseState(line, t);
    } else if (head == "on") {
      ParseTransition(line, t);
    } else if (head == "end") {
      ExpectCount(t, 1, line, "end", ok);
      if (!in_state_) {
        Error("'end' without an open state block", {line, t[0].column});
        return;
      }
      in_state_ = false;
    } else {
      Error("unknown directive " + Quote(head), {line, t[0].column});
    }
  }

  void ParseState(int line, const std::vector<Token>& t) {
    if (in_state_) {
      Error("state '" + machine_.states.back().id +
                "' is missing 'end' before the next state",
            {line, t[0].column});
      in_state_ = false;
    }
    if (t.size() != 4 || t[2].text != "transmit") {
      Error("expected 'state <state-id> transmit <prob>'", {line, t[0].column});
      return;
    }
    StateSpec spec;
    if (!Identifier(t[1], line, "state id")) return;
    spec.id = std::string(t[1].text);

    double prob = 0.0;
    const char* first = t[3].text.data();
    const char* last = first + t[3].text.size();
    auto [ptr, ec] = std::from_chars(first, last, prob);
    if (ec != std::errc() || ptr != last || !std::isfinite(prob)) {
      Error("invalid probability " + Quote(t[3].text), {line, t[3].column});
      return;
    }
    spec.transmit_prob = prob;

    machine_.states.push_back(std::move(spec));
    source_.state_decl.push_back({line, t[1].column});
    source_.state_prob.push_back({line, t[3].column});
    source_.transition.emplace_back();
    in_state_ = true;
  }

  void ParseTransition(int line, const std::vector<Token>& t) {
    if (!in_state_) {
      Error("'on' outside a state block", {line, t[0].column});
      return;
    }
    if (t.size() != 5 || t[3].text != "->") {
      Error("expected 'on <T|I> f=<0|1|2> -> <state-id>'",
            {line, t[0].column});
      return;
    }
    Action action;
    if (t[1].text == "T") {
      action = Action::kTransmit;
    } else if (t[1].text == "I") {
      action = Action::kIdle;
    } else {
      Error("expected action 'T' or 'I', got " + Quote(t[1].text),
            {line, t[1].column});
      return;
    }
    const std::string_view fb = t[2].text;
    if (fb.size() != 3 || fb.substr(0, 2) != "f=" || fb[2] < '0' ||
        fb[2] > '0' + kMaxTwoPlayerFeedback) {
      Error("expected feedback 'f=0', 'f=1' or 'f=2', got " + Quote(fb),
            {line, t[2].column});
      return;
    }
    const int feedback = fb[2] - '0';
    if (!Identifier(t[4], line, "state id")) return;

    StateSpec& spec = machine_.states.back();
    if (spec.Target(action, feedback)) {
      Error("duplicate transition 'on " + std::string(t[1].text) + " " +
                std::string(fb) + "' in state '" + spec.id + "'",
            {line, t[0].column});
      return;
    }
    spec.SetTarget(action, feedback, std::string(t[4].text));
    source_.transition.back()[ToInt(action)][feedback] = {line, t[4].column};
  }

  std::string_view text_;
  StrategyMachine machine_;
  internal::SourceMap source_;
  ParseResult result_;
  bool seen_machine_ = false;
  bool seen_start_ = false;
  bool in_state_ = false;
  bool has_error_ = false;
};

std::string FormatProbability(double p) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(p);
}

}  // namespace

ParseResult ParseStrategy(std::string_view text) { return Parser(text).Run(); }

std::string SerializeStrategy(const StrategyMachine& machine) {
  std::string out;
  out += "machine " + machine.name + "\n";
  out += "start " + machine.start + "\n";
  if (machine.last_slot == LastSlotOverride::kOnForeignBehavior) {
    out += "lastslot-override on-foreign-behavior\n";
  }
  for (const auto& s : machine.states) {
    out += "state " + s.id + " transmit " + FormatProbability(s.transmit_prob) +
           "\n";
    for (Action a : {Action::kTransmit, Action::kIdle}) {
      for (int f = 0; f <= kMaxTwoPlayerFeedback; ++f) {
        if (const auto& target = s.Target(a, f)) {
          out += "  on ";
          out += a == Action::kTransmit ? 'T' : 'I';
          out += " f=" + std::to_string(f) + " -> " + *target + "\n";
        }
      }
    }
    out += "end\n";
  }
  return out;
}

}  // namespace macgame
