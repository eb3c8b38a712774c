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
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "macgame/game.hpp"
#include "macgame/parallel.hpp"
#include "macgame/rng.hpp"

namespace macgame {
namespace {

constexpr int kRunsPerTask = 2048;

struct Pairing {
  int row;
  int col;
};

std::vector<Pairing> Pairings(int k) {
  std::vector<Pairing> out;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) out.push_back({i, j});
  }
  return out;
}

std::pair<RngStream, RngStream> GameStreams(std::uint64_t seed, int pairing,
                                            int run) {
  const auto p = static_cast<std::uint32_t>(pairing);
  const auto r = static_cast<std::uint32_t>(run);
  return {RngStream(seed, {p, r, 0}), RngStream(seed, {p, r, 1})};
}

ScoreCell Cell(const IntMoments& m, double scale) {
  const double n = static_cast<double>(m.count);
  const double mean = static_cast<double>(m.sum) / n;
  double var = 0.0;
  if (m.count > 1) {
    var = (static_cast<double>(m.sum_sq) - n * mean * mean) / (n - 1.0);
    var = std::max(var, 0.0);
  }
  return {mean * scale, std::sqrt(var / n) * scale};
}

std::string FormatNumber(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void ValidateConfig(const TournamentConfig& config) {
  if (config.entrants.empty()) {
    throw std::invalid_argument("tournament needs at least one entrant");
  }
  if (config.horizon < 1) {
    throw std::invalid_argument("tournament horizon must be >= 1");
  }
  if (config.runs < 1) {
    throw std::invalid_argument("tournament runs must be >= 1");
  }
  std::set<std::string> names;
  for (const auto& e : config.entrants) {
    if (e.name.empty()) throw std::invalid_argument("entrant with empty name");
    if (!names.insert(e.name).second) {
      throw std::invalid_argument("duplicate entrant name '" + e.name + "'");
    }
    auto diagnostics = ValidateMachine(e.machine);
    if (HasErrors(diagnostics)) {
      throw InvalidStrategyError(e.name, std::move(diagnostics));
    }
  }
}

ScoreMatrix RunTournament(const TournamentConfig& config, int jobs) {
  ValidateConfig(config);
  const int k = static_cast<int>(config.entrants.size());

  std::vector<CompiledStrategy> compiled;
  compiled.reserve(k);
  for (const auto& e : config.entrants) compiled.emplace_back(e.machine);

  const std::vector<Pairing> pairings = Pairings(k);
  const int chunks = (config.runs + kRunsPerTask - 1) / kRunsPerTask;

  // For off-diagonal pairings, row/col moments hold each seat's score; on the
  // diagonal, row holds the per-game sum of both seats.
  struct Partial {
    IntMoments row;
    IntMoments col;
  };
  std::vector<Partial> partials(pairings.size() * chunks);

  ParallelFor(partials.size(), jobs, [&](std::size_t task) {
    const int p = static_cast<int>(task / chunks);
    const int chunk = static_cast<int>(task % chunks);
    const auto [i, j] = pairings[p];
    const int first = chunk * kRunsPerTask;
    const int last = std::min(config.runs, first + kRunsPerTask);
    Partial& out = partials[task];
    for (int r = first; r < last; ++r) {
      auto [rng_a, rng_b] = GameStreams(config.seed, p, r);
      const auto s = PlayScores(compiled[i], compiled[j], config.horizon,
                                rng_a, rng_b);
      if (i == j) {
        out.row.Add(s[0] + s[1]);
      } else {
        out.row.Add(s[0]);
        out.col.Add(s[1]);
      }
    }
  });

  ScoreMatrix m;
  m.horizon = config.horizon;
  m.runs = config.runs;
  for (const auto& e : config.entrants) m.names.push_back(e.name);
  m.entries.assign(k, std::vector<ScoreCell>(k));
  for (std::size_t p = 0; p < pairings.size(); ++p) {
    Partial total;
    for (int c = 0; c < chunks; ++c) {
      total.row.Merge(partials[p * chunks + c].row);
      total.col.Merge(partials[p * chunks + c].col);
    }
    const auto [i, j] = pairings[p];
    if (i == j) {
      m.entries[i][i] = Cell(total.row, 0.5);
    } else {
      m.entries[i][j] = Cell(total.row, 1.0);
      m.entries[j][i] = Cell(total.col, 1.0);
    }
  }
  m.totals.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m.totals[i] += m.entries[i][j].mean;
  }
  for (int i = 0; i < k; ++i) {
    if (NeverTransmits(config.entrants[i].machine)) {
      m.never_index = i;
      break;
    }
  }
  return m;
}

MeritReport ComputeMerit(const ScoreMatrix& matrix) {
  MeritReport report;
  report.beta_defined = matrix.never_index.has_value();
  const int k = static_cast<int>(matrix.names.size());
  for (int i = 0; i < k; ++i) {
    Merit merit;
    merit.name = matrix.names[i];
    merit.alpha = matrix.entries[i][i].mean;
    if (matrix.never_index) {
      merit.beta = matrix.entries[i][*matrix.never_index].mean;
    }
    merit.gamma = matrix.totals[i] / k;
    report.rows.push_back(std::move(merit));
  }
  return report;
}

std::string ScoreMatrixCsv(const ScoreMatrix& matrix) {
  std::ostringstream out;
  out << "entrant";
  for (const auto& name : matrix.names) out << ',' << CsvField(name);
  out << ",total\n";
  for (std::size_t i = 0; i < matrix.names.size(); ++i) {
    out << CsvField(matrix.names[i]);
    for (const auto& cell : matrix.entries[i]) {
      out << ',' << FormatNumber(cell.mean) << "±"
          << FormatNumber(cell.std_error);
    }
    out << ',' << FormatNumber(matrix.totals[i]) << '\n';
  }
  return out.str();
}

std::string ScoreMatrixTidyCsv(const ScoreMatrix& matrix) {
  std::ostringstream out;
  out << "row,column,mean,stderr\n";
  for (std::size_t i = 0; i < matrix.names.size(); ++i) {
    for (std::size_t j = 0; j < matrix.names.size(); ++j) {
      out << CsvField(matrix.names[i]) << ',' << CsvField(matrix.names[j])
          << ',' << FormatNumber(matrix.entries[i][j].mean) << ','
          << FormatNumber(matrix.entries[i][j].std_error) << '\n';
    }
  }
  return out.str();
}

std::string DumpPairingTranscripts(const TournamentConfig& config, int row,
                                   int col, int games) {
  ValidateConfig(config);
  const int k = static_cast<int>(config.entrants.size());
  if (row < 0 || row >= k || col < 0 || col >= k) {
    throw std::out_of_range("pairing index out of range");
  }
  const bool swapped = row > col;
  const int i = std::min(row, col);
  const int j = std::max(row, col);
  int pairing = 0;
  for (const auto& p : Pairings(k)) {
    if (p.row == i && p.col == j) break;
    ++pairing;
  }
  const CompiledStrategy a(config.entrants[i].machine);
  const CompiledStrategy b(config.entrants[j].machine);

  std::ostringstream out;
  out << "game,t,x_" << CsvField(config.entrants[row].name) << ",x_"
      << CsvField(config.entrants[col].name) << ",feedback,scorer\n";
  for (int r = 0; r < std::min(games, config.runs); ++r) {
    auto [rng_a, rng_b] = GameStreams(config.seed, pairing, r);
    const auto transcript = PlayGame(a, b, config.horizon, rng_a, rng_b);
    for (const auto& s : transcript.slots) {
      const int x_row = ToInt(s.decisions[swapped ? 1 : 0]);
      const int x_col = ToInt(s.decisions[swapped ? 0 : 1]);
      std::string scorer;
      if (s.scorer) {
        const bool row_scored = (*s.scorer == 0) != swapped;
        scorer = config.entrants[row_scored ? row : col].name;
      }
      out << r + 1 << ',' << s.t << ',' << x_row << ',' << x_col << ','
          << s.feedback << ',' << CsvField(scorer) << '\n';
    }
  }
  return out.str();
}

}  // namespace macgame
