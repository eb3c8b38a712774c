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

#include <cmath>
#include <random>

#include "doctest.h"
#include "macgame/analytics.hpp"
#include "macgame/game.hpp"
#include "oracles.hpp"

namespace macgame {
namespace {

// Wraps a MachineAgent and records the state entered after every slot.
class RecordingAgent final : public Agent {
 public:
  explicit RecordingAgent(const CompiledStrategy& s) : inner_(s) {
    states.push_back(inner_.state());
  }
  Action Decide(int t, int horizon, RngStream& rng) override {
    return inner_.Decide(t, horizon, rng);
  }
  void Observe(Action own, int feedback) override {
    inner_.Observe(own, feedback);
    states.push_back(inner_.state());
  }
  bool triggered() const { return inner_.triggered(); }

  std::vector<int> states;

 private:
  MachineAgent inner_;
};

struct Sample {
  double mean;
  double std_error;
};

Sample MeanScore(const StrategyMachine& a, const StrategyMachine& b,
                 int horizon, int games, std::uint64_t seed) {
  const CompiledStrategy ca(a);
  const CompiledStrategy cb(b);
  const bool self = a == b;
  double sum = 0, sum_sq = 0;
  for (int g = 0; g < games; ++g) {
    const auto s = PlayScores(ca, cb, horizon,
                              RngStream(seed, {0, static_cast<std::uint32_t>(g), 0}),
                              RngStream(seed, {0, static_cast<std::uint32_t>(g), 1}));
    const double x = self ? 0.5 * (s[0] + s[1]) : s[0];
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / games;
  const double var = (sum_sq - games * mean * mean) / (games - 1);
  return {mean, std::sqrt(var / games)};
}

TEST_CASE("unknown builtin name is rejected") {
  CHECK_THROWS_AS(Builtin("five_state"), std::invalid_argument);
}

TEST_CASE("TFT-1 vs NeverTransmit scores exactly 1 in every game") {
  for (std::uint32_t g = 0; g < 20; ++g) {
    const auto t = PlayGame(Builtin("tft1"), Builtin("never"), 100,
                            RngStream(g, {}), RngStream(g, {0, 0, 1}));
    CHECK(t.scores[0] == 1);
  }
}

TEST_CASE("4-State self-play mean matches the optimal self-competition score") {
  const Sample s = MeanScore(Builtin("four_state"), Builtin("four_state"), 100,
                             100000, 21);
  CHECK(std::abs(s.mean - AlphaOptimal(100).ToDouble()) < 4 * s.std_error + 1e-12);
}

TEST_CASE("4-State vs NeverTransmit approaches T - 2") {
  const Sample s =
      MeanScore(Builtin("four_state"), Builtin("never"), 100, 100000, 22);
  CHECK(std::abs(s.mean - Beta4(100).ToDouble()) < 4 * s.std_error);
  CHECK(s.mean == doctest::Approx(98.0).epsilon(0.001));
}

TEST_CASE("3-State self-play: leading idle span is geometric") {
  // P[Y = i] = (1/2)^(i+1) for i < T. Chi-square over Y = 0..9 and Y >= 10.
  constexpr int kGames = 1000000;
  constexpr int kHorizon = 20;
  const CompiledStrategy c(Builtin("three_state"));
  std::array<double, 11> counts{};
  for (int g = 0; g < kGames; ++g) {
    const auto t = PlayGame(c, c, kHorizon,
                            RngStream(31, {0, static_cast<std::uint32_t>(g), 0}),
                            RngStream(31, {0, static_cast<std::uint32_t>(g), 1}));
    int y = 0;
    while (y < kHorizon && !t.slots[y].scorer) ++y;
    ++counts[std::min(y, 10)];
  }
  double chi2 = 0;
  for (int i = 0; i <= 10; ++i) {
    const double p = i < 10 ? std::ldexp(1.0, -(i + 1)) : std::ldexp(1.0, -10);
    const double expected = p * kGames;
    chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
  }
  // 10 degrees of freedom; 29.59 is the 0.999 quantile.
  CHECK(chi2 < 29.59);
}

TEST_CASE("4-State never visits state 4 in self-play") {
  const CompiledStrategy c(Builtin("four_state"));
  const int state4 = 3;
  for (std::uint32_t g = 0; g < 5000; ++g) {
    RecordingAgent a(c), b(c);
    PlayGame(a, b, 100, RngStream(41, {0, g, 0}), RngStream(41, {0, g, 1}));
    for (int s : a.states) REQUIRE(s != state4);
    for (int s : b.states) REQUIRE(s != state4);
  }
}

TEST_CASE("after the first success exactly one player scores every slot") {
  for (const char* name : {"three_state", "four_state", "four_state_enhanced"}) {
    const CompiledStrategy c(Builtin(name));
    for (std::uint32_t g = 0; g < 3000; ++g) {
      const auto t =
          PlayGame(c, c, 100, RngStream(51, {0, g, 0}), RngStream(51, {0, g, 1}));
      bool started = false;
      for (const auto& s : t.slots) {
        if (started) REQUIRE(s.scorer.has_value());
        started = started || s.scorer.has_value();
      }
      REQUIRE(t.scores[0] + t.scores[1] ==
              100 - static_cast<int>(std::count_if(
                        t.slots.begin(), t.slots.end(),
                        [](const SlotRecord& s) { return !s.scorer; })));
    }
  }
}

TEST_CASE("3-State and 4-State never lose by more than one point") {
  std::mt19937_64 gen(61);
  std::vector<StrategyMachine> opponents;
  for (auto name : BuiltinNames()) opponents.push_back(Builtin(name));
  for (int i = 0; i < 300; ++i) {
    opponents.push_back(oracle::RandomMachine(gen, 1 + i % 6, i % 3 == 0));
  }
  for (const char* name : {"three_state", "four_state", "four_state_enhanced"}) {
    const CompiledStrategy self(Builtin(name));
    for (std::size_t o = 0; o < opponents.size(); ++o) {
      const CompiledStrategy opp(opponents[o]);
      for (std::uint32_t g = 0; g < 100; ++g) {
        for (int horizon : {1, 2, 5, 100}) {
          const auto s = PlayScores(self, opp, horizon,
                                    RngStream(g, {static_cast<std::uint32_t>(o), 0, 0}),
                                    RngStream(g, {static_cast<std::uint32_t>(o), 0, 1}));
          INFO(name << " vs opponent " << o << " T=" << horizon);
          REQUIRE(s[1] - s[0] <= 1);
        }
      }
    }
  }
}

TEST_CASE("enhanced 4-State flags exactly the observations self-play never makes") {
  const CompiledStrategy c(Builtin("four_state_enhanced"));
  constexpr Action T = Action::kTransmit;
  constexpr Action I = Action::kIdle;
  // States are indexed in declaration order: 1, 2, 3, 4.
  CHECK_FALSE(c.IsForeign(0, T, 1));
  CHECK_FALSE(c.IsForeign(0, T, 2));
  CHECK_FALSE(c.IsForeign(0, I, 0));
  CHECK_FALSE(c.IsForeign(0, I, 1));
  CHECK_FALSE(c.IsForeign(1, I, 1));
  CHECK(c.IsForeign(1, I, 0));  // opponent skipped its turn
  CHECK_FALSE(c.IsForeign(2, T, 1));
  CHECK(c.IsForeign(2, T, 2));  // opponent transmitted on our turn
  CHECK(c.IsForeign(3, T, 1));
  CHECK(c.IsForeign(3, T, 2));
}

TEST_CASE("enhanced 4-State never triggers in self-play") {
  const CompiledStrategy c(Builtin("four_state_enhanced"));
  for (std::uint32_t g = 0; g < 5000; ++g) {
    RecordingAgent a(c), b(c);
    PlayGame(a, b, 100, RngStream(71, {0, g, 0}), RngStream(71, {0, g, 1}));
    REQUIRE_FALSE(a.triggered());
    REQUIRE_FALSE(b.triggered());
  }
}

TEST_CASE("enhanced 4-State differs from 4-State only by sending on slot T") {
  std::mt19937_64 gen(81);
  const CompiledStrategy plain(Builtin("four_state"));
  const CompiledStrategy enhanced(Builtin("four_state_enhanced"));
  int extra_last_slot_sends = 0;
  for (int o = 0; o < 200; ++o) {
    const CompiledStrategy opp(oracle::RandomMachine(gen, 1 + o % 5, false));
    for (std::uint32_t g = 0; g < 20; ++g) {
      const auto seed = static_cast<std::uint64_t>(o);
      MachineAgent pa(plain), ea(enhanced), pb(opp), eb(opp);
      const auto p = PlayGame(pa, pb, 30, RngStream(seed, {0, g, 0}),
                              RngStream(seed, {0, g, 1}));
      const auto e = PlayGame(ea, eb, 30, RngStream(seed, {0, g, 0}),
                              RngStream(seed, {0, g, 1}));
      for (int t = 0; t < 29; ++t) REQUIRE(p.slots[t] == e.slots[t]);
      if (ea.triggered()) {
        REQUIRE(e.slots[29].decisions[0] == Action::kTransmit);
        extra_last_slot_sends += p.slots[29].decisions[0] == Action::kIdle;
      } else {
        REQUIRE(p.slots[29] == e.slots[29]);
      }
    }
  }
  CHECK(extra_last_slot_sends > 0);
}

}  // namespace
}  // namespace macgame
