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


#include <cstdint>

#include "benchmark/benchmark.h"
#include "macgame/builtins.hpp"
#include "macgame/capture.hpp"
#include "macgame/game.hpp"
#include "macgame/multichannel.hpp"
#include "macgame/rng.hpp"
#include "macgame/tournament.hpp"

namespace macgame {
namespace {

void BM_PlayScoresSelfPlay(benchmark::State& state) {
  const CompiledStrategy four(Builtin("four_state"));
  const int horizon = static_cast<int>(state.range(0));
  std::uint32_t run = 0;
  for (auto _ : state) {
    auto s = PlayScores(four, four, horizon, RngStream(1, {0, run, 0}),
                        RngStream(1, {0, run, 1}));
    benchmark::DoNotOptimize(s);
    ++run;
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_PlayScoresSelfPlay)->Arg(100)->Arg(1000);

void BM_Tournament(benchmark::State& state) {
  TournamentConfig config;
  for (const char* n : {"four_state", "three_state", "tft0", "tft1", "always",
                        "never"}) {
    config.entrants.push_back({n, Builtin(n)});
  }
  config.runs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunTournament(config, 1));
  }
}
BENCHMARK(BM_Tournament)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SolveCaptureTable(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveCaptureTable(n_max));
  }
}
BENCHMARK(BM_SolveCaptureTable)->Arg(7)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_SimulateCapture(benchmark::State& state) {
  const CaptureTable table = SolveCaptureTable(16);
  const int users = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SimulateCapture(users, table, 100000, 3, 1));
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SimulateCapture)->Arg(3)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_OptimizeFullFamily(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(OptimizeFullFamily());
  }
}
BENCHMARK(BM_OptimizeFullFamily)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace macgame

BENCHMARK_MAIN();
