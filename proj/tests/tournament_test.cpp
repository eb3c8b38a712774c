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

#include "macgame/tournament.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "macgame/analytics.hpp"
#include "macgame/builtins.hpp"

namespace macgame {
namespace {

TournamentConfig Config(std::initializer_list<const char*> names, int runs,
                        std::uint64_t seed = 7) {
  TournamentConfig config;
  for (const char* n : names) config.entrants.push_back({n, Builtin(n)});
  config.runs = runs;
  config.seed = seed;
  return config;
}

int IndexOf(const ScoreMatrix& m, const std::string& name) {
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    if (m.names[i] == name) return static_cast<int>(i);
  }
  FAIL("missing entrant " << name);
  return -1;
}

TEST_CASE("config validation") {
  TournamentConfig empty;
  CHECK_THROWS_AS(ValidateConfig(empty), std::invalid_argument);
  auto dup = Config({"never", "never"}, 10);
  CHECK_THROWS_AS(ValidateConfig(dup), std::invalid_argument);
  auto runs = Config({"never"}, 0);
  CHECK_THROWS_AS(ValidateConfig(runs), std::invalid_argument);
  auto horizon = Config({"never"}, 1);
  horizon.horizon = 0;
  CHECK_THROWS_AS(ValidateConfig(horizon), std::invalid_argument);
  auto bad = Config({"never"}, 1);
  bad.entrants[0].machine.start = "nowhere";
  CHECK_THROWS_AS(ValidateConfig(bad), InvalidStrategyError);
}

TEST_CASE("score matrix is independent of the worker count") {
  const auto config = Config({"four_state", "three_state", "tft1", "always",
                              "never"},
                             5000);
  const ScoreMatrix one = RunTournament(config, 1);
  const ScoreMatrix four = RunTournament(config, 4);
  CHECK(ScoreMatrixCsv(one) == ScoreMatrixCsv(four));
  for (std::size_t i = 0; i < one.names.size(); ++i) {
    for (std::size_t j = 0; j < one.names.size(); ++j) {
      CHECK(one.entries[i][j].mean == four.entries[i][j].mean);
      CHECK(one.entries[i][j].std_error == four.entries[i][j].std_error);
    }
  }
}

TEST_CASE("structural cells: AlwaysTransmit column, deterministic diagonal") {
  const auto config = Config({"four_state", "three_state", "tft0", "tft1",
                              "always", "never"},
                             2000);
  const ScoreMatrix m = RunTournament(config, 2);
  const int always = IndexOf(m, "always");
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    CHECK(m.entries[i][always].mean == 0.0);
    double row = 0;
    for (const auto& cell : m.entries[i]) {
      CHECK(cell.mean >= 0.0);
      CHECK(cell.mean <= 100.0);
      row += cell.mean;
    }
    CHECK(m.totals[i] == row);
  }
  for (const char* det : {"tft0", "tft1", "always", "never"}) {
    const int i = IndexOf(m, det);
    CHECK(m.entries[i][i].mean == 0.0);
  }
}

TEST_CASE("merit report: alpha, beta and gamma") {
  const auto config = Config({"four_state", "three_state", "tft0", "tft1",
                              "always", "never"},
                             20000);
  const ScoreMatrix m = RunTournament(config);
  const MeritReport report = ComputeMerit(m);
  REQUIRE(report.beta_defined);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    CHECK(report.rows[i].gamma == m.totals[i] / m.names.size());
  }
  const auto& tft0 = report.rows[IndexOf(m, "tft0")];
  CHECK(tft0.alpha == 0.0);
  CHECK(*tft0.beta == 0.0);
  CHECK(*report.rows[IndexOf(m, "tft1")].beta == 1.0);
  CHECK(*report.rows[IndexOf(m, "always")].beta == 100.0);

  const int four = IndexOf(m, "four_state");
  const int three = IndexOf(m, "three_state");
  const int never = *m.never_index;
  CHECK(std::abs(m.entries[four][four].mean - AlphaOptimal(100).ToDouble()) <
        4 * m.entries[four][four].std_error);
  CHECK(std::abs(m.entries[three][three].mean - AlphaOptimal(100).ToDouble()) <
        4 * m.entries[three][three].std_error);
  CHECK(std::abs(m.entries[four][never].mean - Beta4(100).ToDouble()) <
        4 * m.entries[four][never].std_error);
  CHECK(std::abs(m.entries[three][never].mean - Beta3(100).ToDouble()) <
        4 * m.entries[three][never].std_error);
}

TEST_CASE("beta is undefined without a NeverTransmit entrant") {
  const ScoreMatrix m = RunTournament(Config({"four_state", "always"}, 100));
  const MeritReport report = ComputeMerit(m);
  CHECK_FALSE(report.beta_defined);
  for (const auto& row : report.rows) CHECK_FALSE(row.beta.has_value());
}

TEST_CASE("TFT-1 learns to share with 4-State") {
  const ScoreMatrix m = RunTournament(Config({"tft1", "four_state"}, 20000));
  CHECK(m.entries[0][1].mean == doctest::Approx(49.7).epsilon(0.01));
}

TEST_CASE("CSV layout") {
  const ScoreMatrix m = RunTournament(Config({"always", "never"}, 10));
  const std::string csv = ScoreMatrixCsv(m);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "entrant,always,never,total");
  std::getline(in, line);
  CHECK(line == "always,0.000000±0.000000,100.000000±0.000000,100.000000");
  CHECK(ScoreMatrixTidyCsv(m).find("always,never,100.000000,0.000000") !=
        std::string::npos);
}

TEST_CASE("transcript dump replays the tournament streams") {
  auto config = Config({"tft1", "never"}, 3);
  config.horizon = 4;
  const std::string dump = DumpPairingTranscripts(config, 0, 1, 2);
  CHECK(dump.rfind("game,t,x_tft1,x_never,feedback,scorer\n", 0) == 0);
  CHECK(dump.find("1,1,1,0,1,tft1\n") != std::string::npos);
  CHECK(dump.find("2,4,0,0,0,\n") != std::string::npos);
  const std::string swapped = DumpPairingTranscripts(config, 1, 0, 1);
  CHECK(swapped.find("1,1,0,1,1,tft1\n") != std::string::npos);
}

}  // namespace
}  // namespace macgame
