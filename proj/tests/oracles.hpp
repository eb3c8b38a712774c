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

#ifndef MACGAME_TESTS_ORACLES_HPP_
#define MACGAME_TESTS_ORACLES_HPP_

// Test-only reference computations. These work directly on the declarative
// StrategyMachine / formula inputs and share no code with the engine paths
// they check.

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "macgame/strategy.hpp"

namespace macgame::oracle {

struct ExactScores {
  long double a = 0;
  long double b = 0;
  // Expected number of leading slots without a success (T if none).
  long double idle_span = 0;
  std::int64_t paths = 0;
};

// Enumerates every randomization outcome of a T-slot game between two
// machines and returns exact expected scores. Probabilities are dyadic for
// the built-in machines, so long double sums are exact for small T.
inline ExactScores EnumerateGame(const StrategyMachine& a,
                                 const StrategyMachine& b, int horizon) {
  ExactScores out;
  std::function<void(const std::string&, const std::string&, int, int, int,
                     bool, int, long double)>
      walk = [&](const std::string& sa, const std::string& sb, int t,
                 int score_a, int score_b, bool scored, int idle,
                 long double weight) {
        if (t > horizon) {
          out.a += weight * score_a;
          out.b += weight * score_b;
          out.idle_span += weight * idle;
          ++out.paths;
          return;
        }
        const StateSpec* xa = a.FindState(sa);
        const StateSpec* xb = b.FindState(sb);
        for (int da = 0; da <= 1; ++da) {
          const long double pa = da ? xa->transmit_prob : 1 - xa->transmit_prob;
          if (pa == 0) continue;
          for (int db = 0; db <= 1; ++db) {
            const long double pb =
                db ? xb->transmit_prob : 1 - xb->transmit_prob;
            if (pb == 0) continue;
            const int f = da + db;
            const bool success = f == 1;
            const auto& na = xa->Target(da ? Action::kTransmit : Action::kIdle, f);
            const auto& nb = xb->Target(db ? Action::kTransmit : Action::kIdle, f);
            walk(*na, *nb, t + 1, score_a + (success && da),
                 score_b + (success && db), scored || success,
                 idle + (!scored && !success ? 1 : 0), weight * pa * pb);
          }
        }
      };
  walk(a.start, b.start, 1, 0, 0, false, 0, 1.0L);
  return out;
}

// Exact (beta, theta) of 3 users on m channels who each draw a subset from
// `subset_probs`, by enumerating all (2^m)^3 joint choices.
struct ExactBetaTheta {
  double beta = 0;
  double theta = 0;
  double success = 0;
};

inline ExactBetaTheta EnumerateThreeUsers(int channels,
                                          const std::vector<double>& probs) {
  ExactBetaTheta out;
  const unsigned n = 1u << channels;
  for (unsigned s0 = 0; s0 < n; ++s0) {
    for (unsigned s1 = 0; s1 < n; ++s1) {
      for (unsigned s2 = 0; s2 < n; ++s2) {
        const double w = probs[s0] * probs[s1] * probs[s2];
        bool any_one = false;
        bool any_two = false;
        for (int ch = 0; ch < channels; ++ch) {
          const int c = ((s0 >> ch) & 1) + ((s1 >> ch) & 1) + ((s2 >> ch) & 1);
          any_one |= c == 1;
          any_two |= c == 2;
        }
        if (s0 == s1 && s1 == s2) out.beta += w;
        if (!any_one && any_two) out.theta += w;
        if (any_one) out.success += w;
      }
    }
  }
  return out;
}

// Random machine with `states` states and complete transitions. When
// `deterministic`, every transmit probability is 0 or 1.
inline StrategyMachine RandomMachine(std::mt19937_64& gen, int states,
                                     bool deterministic,
                                     const std::string& name = "random") {
  std::uniform_int_distribution<int> pick(0, states - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StrategyMachine m;
  m.name = name;
  m.start = "s" + std::to_string(pick(gen));
  for (int i = 0; i < states; ++i) {
    StateSpec s;
    s.id = "s" + std::to_string(i);
    if (deterministic) {
      s.transmit_prob = static_cast<double>(gen() & 1);
    } else {
      const double u = unit(gen);
      s.transmit_prob = u < 0.2 ? 0.0 : u > 0.8 ? 1.0 : unit(gen);
    }
    for (int a = 0; a <= 1; ++a) {
      for (int f = 0; f <= 2; ++f) {
        s.on[a][f] = "s" + std::to_string(pick(gen));
      }
    }
    m.states.push_back(std::move(s));
  }
  return m;
}

}  // namespace macgame::oracle

#endif  // MACGAME_TESTS_ORACLES_HPP_
