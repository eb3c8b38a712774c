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

#ifndef MACGAME_TOURNAMENT_HPP_
#define MACGAME_TOURNAMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "macgame/strategy.hpp"

namespace macgame {

struct Entrant {
  std::string name;
  StrategyMachine machine;
};

struct TournamentConfig {
  std::vector<Entrant> entrants;
  int horizon = 100;
  int runs = 1000;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument (or InvalidStrategyError) on an empty entrant
// list, duplicate names, horizon < 1, runs < 1 or an invalid machine.
void ValidateConfig(const TournamentConfig& config);

struct ScoreCell {
  double mean = 0.0;
  double std_error = 0.0;
};

// entries[i][j] is the mean score of entrant i in games against entrant j.
// The diagonal averages both seats of the self-play games.
struct ScoreMatrix {
  int horizon = 0;
  int runs = 0;
  std::vector<std::string> names;
  std::vector<std::vector<ScoreCell>> entries;
  std::vector<double> totals;  // row sums of entries[i][j].mean
  // Entrant that never transmits, used as the No-Competition opponent.
  std::optional<int> never_index;
};

// Round robin over all unordered pairs (i <= j). Game r of pairing p seats
// entrant i on stream (p, r, 0) and entrant j on (p, r, 1), so the matrix is
// a function of the config alone, independent of `jobs`.
ScoreMatrix RunTournament(const TournamentConfig& config, int jobs = 0);

struct Merit {
  std::string name;
  double alpha = 0.0;            // self-competition: diagonal entry
  std::optional<double> beta;    // no-competition: entry against NeverTransmit
  double gamma = 0.0;            // mean score over all pairings
};

struct MeritReport {
  std::vector<Merit> rows;
  bool beta_defined = false;
};

MeritReport ComputeMerit(const ScoreMatrix& matrix);

// Rows and columns are entrant names, cells are "mean±stderr".
std::string ScoreMatrixCsv(const ScoreMatrix& matrix);
// Long format: row,column,mean,stderr.
std::string ScoreMatrixTidyCsv(const ScoreMatrix& matrix);

// Per-slot record of the first `games` games of pairing (row, col), using the
// same streams as RunTournament.
std::string DumpPairingTranscripts(const TournamentConfig& config, int row,
                                   int col, int games);

}  // namespace macgame

#endif  // MACGAME_TOURNAMENT_HPP_
