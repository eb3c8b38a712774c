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


#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "macgame/analytics.hpp"
#include "macgame/builtins.hpp"
#include "macgame/capture.hpp"
#include "macgame/multichannel.hpp"
#include "macgame/strategy.hpp"
#include "macgame/tournament.hpp"

namespace macgame::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

#ifndef MACGAME_VERSION
#define MACGAME_VERSION "unknown"
#endif

// Raised for user errors; Run() prints the message and exits with status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path.string() + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw UsageError("failed writing '" + path.string() + "'");
}

std::string FormatDiagnostics(const std::string& file,
                              const std::vector<Diagnostic>& diagnostics) {
  std::string text;
  for (const Diagnostic& d : diagnostics) {
    text += file + ":" + d.ToString() + "\n";
  }
  return text;
}

StrategyMachine LoadStrategyFile(const fs::path& path) {
  ParseResult result = ParseStrategy(ReadFile(path));
  if (!result.ok()) {
    throw UsageError("invalid strategy file\n" +
                     FormatDiagnostics(path.string(), result.diagnostics));
  }
  return *std::move(result.machine);
}

std::vector<fs::path> StrategyFilesIn(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw UsageError("'" + dir.string() + "' is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".strat") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::uint64_t ParseSeed(const std::string& text, const std::string& origin) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw UsageError(origin + ": seed must be a non-negative integer, got '" +
                     text + "'");
  }
  return value;
}

// Flag beats environment beats config file beats default.
std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag,
                          const std::optional<std::uint64_t>& config) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env) {
    return ParseSeed(env, kSeedEnvVar);
  }
  return config.value_or(0);
}

std::string DumpJson(const json& j) { return j.dump(2) + "\n"; }

json NullableNumber(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

// ---------------------------------------------------------------------------
// Executors. Each takes a resolved config and returns its artifacts.

TournamentConfig TournamentFromJson(const json& config) {
  TournamentConfig tc;
  tc.horizon = config.at("horizon").get<int>();
  tc.runs = config.at("runs").get<int>();
  tc.seed = config.at("seed").get<std::uint64_t>();
  for (const json& e : config.at("entrants")) {
    const std::string name = e.at("name").get<std::string>();
    ParseResult parsed = ParseStrategy(e.at("source").get<std::string>());
    if (!parsed.ok()) {
      throw UsageError("invalid strategy source for entrant '" + name +
                       "'\n" + FormatDiagnostics(name, parsed.diagnostics));
    }
    tc.entrants.push_back({name, *std::move(parsed.machine)});
  }
  ValidateConfig(tc);
  return tc;
}

int EntrantIndex(const TournamentConfig& tc, const std::string& name) {
  for (int i = 0; i < static_cast<int>(tc.entrants.size()); ++i) {
    if (tc.entrants[i].name == name) return i;
  }
  throw UsageError("--dump-pairing: no entrant named '" + name + "'");
}

Artifacts ExecuteTournament(const json& config, int jobs) {
  const TournamentConfig tc = TournamentFromJson(config);
  const ScoreMatrix matrix = RunTournament(tc, jobs);
  const MeritReport merit = ComputeMerit(matrix);

  json report;
  report["horizon"] = matrix.horizon;
  report["runs"] = matrix.runs;
  report["seed"] = tc.seed;
  report["beta_defined"] = merit.beta_defined;
  report["entrants"] = json::array();
  for (const Merit& m : merit.rows) {
    report["entrants"].push_back({{"name", m.name},
                                  {"alpha", m.alpha},
                                  {"beta", NullableNumber(m.beta)},
                                  {"gamma", m.gamma}});
  }

  Artifacts out;
  out["scores.csv"] = ScoreMatrixCsv(matrix);
  out["merit.json"] = DumpJson(report);
  if (config.value("emit_plot_data", false)) {
    out["scores_tidy.csv"] = ScoreMatrixTidyCsv(matrix);
  }
  if (const auto it = config.find("dump_pairing");
      it != config.end() && !it->is_null()) {
    const int row = EntrantIndex(tc, it->at("row").get<std::string>());
    const int col = EntrantIndex(tc, it->at("col").get<std::string>());
    out["transcripts.csv"] =
        DumpPairingTranscripts(tc, row, col, it->at("games").get<int>());
  }
  return out;
}

Artifacts ExecuteAnalytics(const json& config) {
  return {{"analytics.csv",
           AnalyticsTableCsv(config.at("first").get<int>(),
                             config.at("last").get<int>(),
                             config.at("digits").get<int>())}};
}

Artifacts ExecuteCaptureSolve(const json& config) {
  const CaptureTable table = SolveCaptureTable(
      config.at("n_max").get<int>(), config.at("tol").get<double>());
  return {{"capture_table.csv",
           CaptureTableCsv(table, config.at("digits").get<int>())}};
}

json EstimateJson(std::int64_t episodes, double mean, double std_error,
                  std::int64_t censored) {
  return {{"episodes", episodes},
          {"mean", mean},
          {"stderr", std_error},
          {"censored", censored}};
}

Artifacts ExecuteCaptureSimulate(const json& config, int jobs) {
  const int n = config.at("n").get<int>();
  const auto episodes = config.at("episodes").get<std::int64_t>();
  const auto seed = config.at("seed").get<std::uint64_t>();
  const auto max_slots = config.at("max_slots").get<std::int64_t>();
  const double tol = config.at("tol").get<double>();
  if (n < 1) throw UsageError("--n must be at least 1");

  json result;
  result["users"] = n;
  CaptureEstimate est;
  if (config.at("p").is_null()) {
    const CaptureTable table = SolveCaptureTable(std::max(n, 2), tol);
    est = SimulateCapture(RecursiveCapturePolicy(table), n, episodes, seed,
                          jobs, max_slots);
    result["policy"] = "recursive";
    result["expected"] = table.Z(n);
  } else {
    const double p = config.at("p").get<double>();
    est = SimulateCapture(FixedProbabilityPolicy(p), n, episodes, seed, jobs,
                          max_slots);
    result["policy"] = "fixed";
    result["p"] = p;
    result["expected"] = nullptr;
  }
  result.update(EstimateJson(est.episodes, est.mean, est.std_error,
                             est.censored));
  return {{"capture_simulation.json", DumpJson(result)}};
}

Artifacts ExecuteCaptureConverse(const json& config, int jobs) {
  const CaptureTable table = SolveCaptureTable(
      config.at("n_max").get<int>(), config.at("tol").get<double>());
  const ConverseReport report =
      ConverseChecks(table, config.at("episodes").get<std::int64_t>(),
                     config.at("seed").get<std::uint64_t>(), jobs);
  json j;
  const auto& vd = report.virtual_devices;
  j["virtual_devices"] =
      EstimateJson(vd.episodes, vd.mean, vd.std_error, vd.censored);
  j["lambda_minimum"] = {{"a", report.lambda.a},
                         {"c", report.lambda.c},
                         {"value", report.lambda.value},
                         {"z3", report.z3}};
  j["uniform_bounds"] = json::array();
  for (const UniformBoundRow& row : report.uniform_bounds) {
    j["uniform_bounds"].push_back(
        {{"n", row.n}, {"z", row.z}, {"bound", row.bound}});
  }
  j["near_optimal"] = json::array();
  for (std::size_t i = 0; i < report.near_optimal.size(); ++i) {
    j["near_optimal"].push_back({{"n", static_cast<int>(i) + 2},
                                 {"lower", report.near_optimal[i].lower},
                                 {"upper", report.near_optimal[i].upper}});
  }
  return {{"converse.json", DumpJson(j)}};
}

OptimizeSettings SettingsFromJson(const json& config) {
  OptimizeSettings s;
  s.grid_points = config.at("grid_points").get<int>();
  s.tol = config.at("tol").get<double>();
  return s;
}

Artifacts ExecuteMultichannelOptimize(const json& config) {
  const OptimizeSettings settings = SettingsFromJson(config);
  const FullFamilyOptimum full = OptimizeFullFamily(settings);
  const IndependentOptimum ind = OptimizeIndependentFamily(settings);
  json j;
  j["users"] = 3;
  j["channels"] = 2;
  j["full"] = {{"p", full.params.p},
               {"q", full.params.q},
               {"r", full.params.r},
               {"z", full.z}};
  j["independent"] = {{"p", ind.p}, {"z", ind.z}};
  j["two_users"] = json::array();
  for (int m = 1; m <= 4; ++m) {
    j["two_users"].push_back({{"channels", m}, {"z", TwoUserCaptureTime(m)}});
  }
  return {{"multichannel_optimum.json", DumpJson(j)}};
}

Artifacts ExecuteMultichannelSimulate(const json& config, int jobs) {
  const int users = config.at("users").get<int>();
  const std::string family = config.at("family").get<std::string>();
  std::optional<SubsetPolicy> policy;
  std::optional<double> expected;
  json j;
  if (family == "independent") {
    const int m = config.at("channels").get<int>();
    const double p = config.at("p").get<double>();
    policy = SubsetPolicy::Independent(m, p);
    j["p"] = p;
    if (users == 3 && m == 2) {
      expected = RenewalValue(BetaThetaIndependent(p));
    }
  } else if (family == "full") {
    const ChannelPolicyParams params{config.at("p").get<double>(),
                                     config.at("q").get<double>(),
                                     config.at("r").get<double>()};
    policy = SubsetPolicy::FromParams(params);
    j["p"] = params.p;
    j["q"] = params.q;
    j["r"] = params.r;
    if (users == 3) expected = RenewalValue(BetaThetaFull(params));
  } else {
    throw UsageError("unknown policy family '" + family +
                     "' (expected 'independent' or 'full')");
  }
  if (users == 2) expected = TwoUserCaptureTime(policy->probabilities());
  const MultichannelEstimate est = SimulateMultichannel(
      *policy, users, config.at("episodes").get<std::int64_t>(),
      config.at("seed").get<std::uint64_t>(), jobs,
      config.at("max_slots").get<std::int64_t>());
  j["family"] = family;
  j["users"] = est.users;
  j["channels"] = est.channels;
  j["expected"] = NullableNumber(expected);
  j.update(EstimateJson(est.episodes, est.mean, est.std_error, est.censored));
  return {{"multichannel_simulation.json", DumpJson(j)}};
}

Artifacts ExecuteMultichannelSweep(const json& config) {
  return {{"multichannel_sweep.csv",
           MultichannelSweepCsv(config.at("family").get<std::string>(),
                                config.at("grid_points").get<int>())}};
}

// ---------------------------------------------------------------------------
// Tournament entrant resolution.

std::vector<std::pair<std::string, StrategyMachine>> LoadDirectory(
    const fs::path& dir) {
  std::vector<std::pair<std::string, StrategyMachine>> machines;
  for (const fs::path& file : StrategyFilesIn(dir)) {
    StrategyMachine m = LoadStrategyFile(file);
    for (const auto& [name, _] : machines) {
      if (name == m.name) {
        throw UsageError("machine name '" + m.name + "' appears twice in '" +
                         dir.string() + "'");
      }
    }
    machines.emplace_back(m.name, std::move(m));
  }
  return machines;
}

// A spec is a strategy file path, a machine name from the directory, or a
// builtin name, tried in that order.
StrategyMachine ResolveEntrant(
    const std::string& spec, const fs::path& base,
    const std::vector<std::pair<std::string, StrategyMachine>>& dir) {
  const fs::path as_path = base / spec;
  if (fs::is_regular_file(as_path)) return LoadStrategyFile(as_path);
  for (const auto& [name, machine] : dir) {
    if (name == spec) return machine;
  }
  for (std::string_view b : BuiltinNames()) {
    if (b == spec) return Builtin(spec);
  }
  throw UsageError("unknown entrant '" + spec +
                   "': not a file, not in --dir, not a builtin");
}

// ---------------------------------------------------------------------------

struct Outputs {
  std::string out_dir;
};

void Emit(const std::string& subcommand, const json& config, int jobs,
          const Outputs& outputs, std::ostream& out) {
  const std::string config_text = config.dump();
  const Artifacts artifacts = Execute(subcommand, config_text, jobs);
  if (outputs.out_dir.empty()) {
    for (const auto& [name, text] : artifacts) {
      if (artifacts.size() > 1) out << "# " << name << "\n";
      out << text;
    }
    return;
  }
  const fs::path dir(outputs.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw UsageError("cannot create '" + dir.string() + "': " + ec.message());
  }
  for (const auto& [name, text] : artifacts) {
    WriteFile(dir / name, text);
    out << "wrote " << (dir / name).string() << "\n";
  }
  WriteFile(dir / kManifestFile, ManifestJson(subcommand, config_text, artifacts));
  out << "wrote " << (dir / kManifestFile).string() << "\n";
}

}  // namespace

Artifacts Execute(const std::string& subcommand, const std::string& config_json,
                  int jobs) {
  const json config = json::parse(config_json);
  if (subcommand == "tournament") return ExecuteTournament(config, jobs);
  if (subcommand == "analytics") return ExecuteAnalytics(config);
  if (subcommand == "capture solve") return ExecuteCaptureSolve(config);
  if (subcommand == "capture simulate") {
    return ExecuteCaptureSimulate(config, jobs);
  }
  if (subcommand == "capture converse") {
    return ExecuteCaptureConverse(config, jobs);
  }
  if (subcommand == "multichannel optimize") {
    return ExecuteMultichannelOptimize(config);
  }
  if (subcommand == "multichannel simulate") {
    return ExecuteMultichannelSimulate(config, jobs);
  }
  if (subcommand == "multichannel sweep") {
    return ExecuteMultichannelSweep(config);
  }
  throw UsageError("unknown subcommand '" + subcommand + "'");
}

std::string ManifestJson(const std::string& subcommand,
                         const std::string& config_json,
                         const Artifacts& artifacts) {
  const json config = json::parse(config_json);
  json j;
  j["tool"] = "macgame";
  j["version"] = MACGAME_VERSION;
  j["subcommand"] = subcommand;
  j["seed"] = config.contains("seed") ? config["seed"] : json(nullptr);
  j["config"] = config;
  j["outputs"] = json::array();
  for (const auto& [name, _] : artifacts) j["outputs"].push_back(name);
  return DumpJson(j);
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Multiple-access game toolkit", "macgame"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MACGAME_VERSION);
  int jobs = 0;
  app.add_option("--jobs,-j", jobs,
                 "Worker threads; 0 uses all available cores. Results do not "
                 "depend on this value.")
      ->check(CLI::NonNegativeNumber);

  Outputs outputs;
  auto add_out_dir = [&](CLI::App* sub) {
    sub->add_option("--out-dir", outputs.out_dir,
                    "Write outputs and manifest.json here instead of stdout");
  };
  std::optional<std::uint64_t> seed_flag;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_flag,
                    std::string("Master seed (overrides $") + kSeedEnvVar + ")");
  };

  // tournament
  auto* tour = app.add_subcommand("tournament", "Round-robin tournament");
  std::string tour_dir, tour_config;
  std::vector<std::string> tour_entrants;
  std::optional<int> tour_horizon, tour_runs;
  std::vector<std::string> dump_pairing;
  int dump_games = 10;
  bool emit_plot_data = false;
  tour->add_option("--dir", tour_dir, "Directory of .strat files");
  tour->add_option("--config", tour_config,
                   "JSON config with dir, entrants, T, runs, seed");
  tour->add_option("--entrant", tour_entrants,
                   "Entrant: file path, machine name in --dir, or builtin");
  tour->add_option("--T", tour_horizon, "Slots per game")
      ->check(CLI::PositiveNumber);
  tour->add_option("--runs", tour_runs, "Games per pairing")
      ->check(CLI::PositiveNumber);
  tour->add_option("--dump-pairing", dump_pairing,
                   "Write transcripts for ROW COL")
      ->expected(2);
  tour->add_option("--dump-games", dump_games, "Games in the transcript dump")
      ->check(CLI::PositiveNumber);
  tour->add_flag("--emit-plot-data", emit_plot_data,
                 "Also write a tidy row,column,mean,stderr CSV");
  add_seed(tour);
  add_out_dir(tour);

  // analytics
  auto* ana = app.add_subcommand("analytics", "Closed-form score table");
  int ana_first = 1, ana_last = 100, ana_digits = 20;
  ana->add_option("--T-min", ana_first, "First horizon")
      ->check(CLI::PositiveNumber);
  ana->add_option("--T-max", ana_last, "Last horizon")
      ->check(CLI::PositiveNumber);
  ana->add_option("--digits", ana_digits, "Digits after the decimal point")
      ->check(CLI::Range(0, 70));
  add_out_dir(ana);

  // capture
  auto* cap = app.add_subcommand("capture", "n-user capture problem");
  cap->require_subcommand(1);
  auto* cap_solve = cap->add_subcommand("solve", "Solve the p_n / z_n table");
  int solve_n_max = 7, solve_digits = 6;
  double cap_tol = 1e-9;
  cap_solve->add_option("--n-max", solve_n_max, "Largest group size")
      ->check(CLI::Range(2, 100000));
  cap_solve->add_option("--tol", cap_tol, "Optimizer tolerance")
      ->check(CLI::PositiveNumber);
  cap_solve->add_option("--digits", solve_digits, "Digits in the CSV")
      ->check(CLI::Range(1, 17));
  add_out_dir(cap_solve);

  auto* cap_sim = cap->add_subcommand("simulate", "Simulate capture episodes");
  int sim_n = 3;
  std::int64_t sim_episodes = 100000, sim_max_slots = kDefaultMaxCaptureSlots;
  std::optional<double> sim_p;
  cap_sim->add_option("--n", sim_n, "Users")->check(CLI::PositiveNumber);
  cap_sim->add_option("--episodes", sim_episodes, "Episodes")
      ->check(CLI::PositiveNumber);
  cap_sim->add_option("--p", sim_p,
                      "Fixed transmit probability instead of the recursive "
                      "policy")
      ->check(CLI::Range(0.0, 1.0));
  cap_sim->add_option("--max-slots", sim_max_slots, "Censoring limit")
      ->check(CLI::PositiveNumber);
  cap_sim->add_option("--tol", cap_tol, "Table solver tolerance")
      ->check(CLI::PositiveNumber);
  add_seed(cap_sim);
  add_out_dir(cap_sim);

  auto* cap_conv = cap->add_subcommand("converse", "Lower-bound checks");
  int conv_n_max = 7;
  std::int64_t conv_episodes = 1000000;
  cap_conv->add_option("--n-max", conv_n_max, "Largest group size")
      ->check(CLI::Range(3, 100000));
  cap_conv->add_option("--episodes", conv_episodes, "Virtual-device episodes")
      ->check(CLI::PositiveNumber);
  cap_conv->add_option("--tol", cap_tol, "Table solver tolerance")
      ->check(CLI::PositiveNumber);
  add_seed(cap_conv);
  add_out_dir(cap_conv);

  // multichannel
  auto* mc = app.add_subcommand("multichannel", "Multi-channel capture");
  mc->require_subcommand(1);
  auto* mc_opt = mc->add_subcommand("optimize", "Optimize slot-1 policies");
  OptimizeSettings mc_settings;
  mc_opt->add_option("--grid-points", mc_settings.grid_points,
                     "Grid points per axis")
      ->check(CLI::Range(2, 100000));
  mc_opt->add_option("--tol", mc_settings.tol, "Refinement tolerance")
      ->check(CLI::PositiveNumber);
  add_out_dir(mc_opt);

  auto* mc_sim = mc->add_subcommand("simulate", "Simulate a slot-1 policy");
  int mc_users = 3, mc_channels = 2;
  std::string mc_family = "full";
  double mc_p = 0.5, mc_q = 0.0, mc_r = 1.0;
  std::int64_t mc_episodes = 1000000, mc_max_slots = kDefaultMaxCaptureSlots;
  mc_sim->add_option("--users", mc_users, "2 or 3")->check(CLI::Range(2, 3));
  mc_sim->add_option("--channels", mc_channels,
                     "Channels (independent family)")
      ->check(CLI::Range(1, 16));
  mc_sim->add_option("--family", mc_family, "independent or full")
      ->check(CLI::IsMember({"independent", "full"}));
  mc_sim->add_option("--p", mc_p, "p")->check(CLI::Range(0.0, 1.0));
  mc_sim->add_option("--q", mc_q, "q (full family)")
      ->check(CLI::Range(0.0, 1.0));
  mc_sim->add_option("--r", mc_r, "r (full family)")
      ->check(CLI::Range(0.0, 1.0));
  mc_sim->add_option("--episodes", mc_episodes, "Episodes")
      ->check(CLI::PositiveNumber);
  mc_sim->add_option("--max-slots", mc_max_slots, "Censoring limit")
      ->check(CLI::PositiveNumber);
  add_seed(mc_sim);
  add_out_dir(mc_sim);

  auto* mc_sweep = mc->add_subcommand("sweep", "Grid of z values as CSV");
  std::string sweep_family = "independent";
  int sweep_points = 101;
  mc_sweep->add_option("--family", sweep_family, "independent or full")
      ->check(CLI::IsMember({"independent", "full"}));
  mc_sweep->add_option("--grid-points", sweep_points, "Points per axis")
      ->check(CLI::Range(2, 100000));
  add_out_dir(mc_sweep);

  // validate
  auto* val = app.add_subcommand("validate", "Check strategy files");
  std::vector<std::string> val_files;
  val->add_option("files", val_files, "Strategy files or directories")
      ->required();

  // replay
  auto* rep = app.add_subcommand("replay", "Re-run a manifest");
  std::string rep_manifest;
  rep->add_option("manifest", rep_manifest, "manifest.json")->required();
  add_out_dir(rep);

  std::vector<const char*> argv = {"macgame"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*tour) {
      json file_config = json::object();
      fs::path base = fs::current_path();
      if (!tour_config.empty()) {
        try {
          file_config = json::parse(ReadFile(tour_config));
        } catch (const json::parse_error& e) {
          throw UsageError("--config '" + tour_config + "': " + e.what());
        }
        base = fs::absolute(tour_config).parent_path();
      }
      std::optional<std::uint64_t> config_seed;
      if (file_config.contains("seed")) {
        config_seed = file_config["seed"].get<std::uint64_t>();
      }
      std::vector<std::pair<std::string, StrategyMachine>> dir_machines;
      if (!tour_dir.empty()) {
        dir_machines = LoadDirectory(tour_dir);
      } else if (file_config.contains("dir")) {
        dir_machines =
            LoadDirectory(base / file_config["dir"].get<std::string>());
      }
      std::vector<std::string> specs = tour_entrants;
      fs::path spec_base = fs::current_path();
      if (specs.empty() && file_config.contains("entrants")) {
        specs = file_config["entrants"].get<std::vector<std::string>>();
        spec_base = base;
      }
      json entrants = json::array();
      if (specs.empty()) {
        for (const auto& [name, machine] : dir_machines) {
          entrants.push_back({{"name", name},
                              {"source", SerializeStrategy(machine)}});
        }
      } else {
        for (const std::string& spec : specs) {
          const StrategyMachine m = ResolveEntrant(spec, spec_base, dir_machines);
          entrants.push_back(
              {{"name", m.name}, {"source", SerializeStrategy(m)}});
        }
      }
      if (entrants.empty()) {
        throw UsageError("no entrants: pass --dir, --entrant or --config");
      }
      json config;
      config["horizon"] =
          tour_horizon.value_or(file_config.value("T", 100));
      config["runs"] = tour_runs.value_or(file_config.value("runs", 1000));
      config["seed"] = ResolveSeed(seed_flag, config_seed);
      config["entrants"] = entrants;
      config["emit_plot_data"] = emit_plot_data;
      config["dump_pairing"] = nullptr;
      if (!dump_pairing.empty()) {
        config["dump_pairing"] = {{"row", dump_pairing[0]},
                                  {"col", dump_pairing[1]},
                                  {"games", dump_games}};
      }
      Emit("tournament", config, jobs, outputs, out);
    } else if (*ana) {
      if (ana_last < ana_first) throw UsageError("--T-max is below --T-min");
      Emit("analytics",
           {{"first", ana_first}, {"last", ana_last}, {"digits", ana_digits}},
           jobs, outputs, out);
    } else if (*cap_solve) {
      Emit("capture solve",
           {{"n_max", solve_n_max}, {"tol", cap_tol}, {"digits", solve_digits}},
           jobs, outputs, out);
    } else if (*cap_sim) {
      Emit("capture simulate",
           {{"n", sim_n},
            {"episodes", sim_episodes},
            {"seed", ResolveSeed(seed_flag, std::nullopt)},
            {"max_slots", sim_max_slots},
            {"p", NullableNumber(sim_p)},
            {"tol", cap_tol}},
           jobs, outputs, out);
    } else if (*cap_conv) {
      Emit("capture converse",
           {{"n_max", conv_n_max},
            {"episodes", conv_episodes},
            {"seed", ResolveSeed(seed_flag, std::nullopt)},
            {"tol", cap_tol}},
           jobs, outputs, out);
    } else if (*mc_opt) {
      Emit("multichannel optimize",
           {{"grid_points", mc_settings.grid_points}, {"tol", mc_settings.tol}},
           jobs, outputs, out);
    } else if (*mc_sim) {
      json config = {{"users", mc_users},
                     {"family", mc_family},
                     {"p", mc_p},
                     {"episodes", mc_episodes},
                     {"seed", ResolveSeed(seed_flag, std::nullopt)},
                     {"max_slots", mc_max_slots}};
      if (mc_family == "full") {
        config["q"] = mc_q;
        config["r"] = mc_r;
      } else {
        config["channels"] = mc_channels;
      }
      Emit("multichannel simulate", config, jobs, outputs, out);
    } else if (*mc_sweep) {
      Emit("multichannel sweep",
           {{"family", sweep_family}, {"grid_points", sweep_points}}, jobs,
           outputs, out);
    } else if (*val) {
      bool ok = true;
      std::vector<fs::path> files;
      for (const std::string& f : val_files) {
        if (fs::is_directory(f)) {
          for (const fs::path& p : StrategyFilesIn(f)) files.push_back(p);
        } else {
          files.emplace_back(f);
        }
      }
      for (const fs::path& file : files) {
        std::string text;
        try {
          text = ReadFile(file);
        } catch (const UsageError& e) {
          err << "error: " << e.what() << "\n";
          ok = false;
          continue;
        }
        const ParseResult result = ParseStrategy(text);
        err << FormatDiagnostics(file.string(), result.diagnostics);
        if (!result.ok()) ok = false;
      }
      return ok ? 0 : 1;
    } else if (*rep) {
      json manifest;
      try {
        manifest = json::parse(ReadFile(rep_manifest));
      } catch (const json::parse_error& e) {
        throw UsageError("manifest '" + rep_manifest + "': " + e.what());
      }
      if (manifest.value("tool", "") != "macgame" ||
          !manifest.contains("subcommand") || !manifest.contains("config")) {
        throw UsageError("'" + rep_manifest + "' is not a macgame manifest");
      }
      if (manifest.value("version", "") != MACGAME_VERSION) {
        err << "warning: manifest written by version "
            << manifest.value("version", "?") << ", replaying with "
            << MACGAME_VERSION << "\n";
      }
      if (outputs.out_dir.empty()) {
        outputs.out_dir = fs::absolute(rep_manifest).parent_path().string();
      }
      Emit(manifest["subcommand"].get<std::string>(), manifest["config"], jobs,
           outputs, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "error: malformed config: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace macgame::cli
