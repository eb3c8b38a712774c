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

#include "macgame/capture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "macgame/optimize.hpp"
#include "macgame/parallel.hpp"

namespace macgame {
namespace {

constexpr std::uint32_t kCaptureTag = 0x43500000;
constexpr std::uint32_t kVirtualDeviceTag = 0x56440000;

double Binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Feasible interval of x in [0, span] with x^3 + (span - x)^3 <= budget, or
// false when empty. The left side is convex in x with its minimum at span/2.
bool CubicInterval(double span, double budget, double& lo, double& hi) {
  auto g = [&](double x) { return x * x * x + (span - x) * (span - x) * (span - x); };
  const double mid = span / 2;
  if (g(mid) > budget) return false;
  auto edge = [&](double inside, double outside) {
    if (g(outside) <= budget) return outside;
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (inside + outside);
      (g(m) <= budget ? inside : outside) = m;
    }
    return inside;
  };
  lo = edge(mid, 0.0);
  hi = edge(mid, span);
  return true;
}

}  // namespace

double CaptureObjective(int n, double p, std::span<const double> z_prefix) {
  if (n < 2) throw std::invalid_argument("capture objective needs n >= 2");
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("capture objective needs p in (0, 1)");
  }
  if (static_cast<int>(z_prefix.size()) < n - 1) {
    throw std::invalid_argument("capture objective needs z_1..z_{n-1}");
  }
  double numerator = 1.0;
  for (int i = 2; i <= n - 1; ++i) {
    const double keep = std::min(z_prefix[i - 1], z_prefix[n - i - 1]);
    numerator += keep * Binomial(n, i) * std::pow(p, i) * std::pow(1 - p, n - i);
  }
  return numerator / (1.0 - std::pow(p, n) - std::pow(1 - p, n));
}

CaptureTable SolveCaptureTable(int n_max, double tol) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  CaptureTable table;
  table.n_max = n_max;
  table.p.push_back(1.0);
  table.z.push_back(1.0);
  for (int n = 2; n <= n_max; ++n) {
    const std::span<const double> prefix(table.z);
    const Minimum1D best = ScanThenRefine(
        [&](double p) { return CaptureObjective(n, p, prefix); }, 0.001, 0.999,
        999, tol);
    table.p.push_back(best.x);
    table.z.push_back(best.value);
  }
  return table;
}

std::string CaptureTableCsv(const CaptureTable& table, int digits) {
  std::ostringstream out;
  out << "n,p,z\n";
  char buf[128];
  for (int n = 1; n <= table.n_max; ++n) {
    std::snprintf(buf, sizeof(buf), "%d,%.*f,%.*f\n", n, digits, table.P(n),
                  digits, table.Z(n));
    out << buf;
  }
  return out.str();
}

RecursiveCapturePolicy::RecursiveCapturePolicy(CaptureTable table)
    : table_(std::move(table)) {
  if (table_.n_max < 1 || static_cast<int>(table_.p.size()) != table_.n_max ||
      static_cast<int>(table_.z.size()) != table_.n_max) {
    throw std::invalid_argument("malformed capture table");
  }
}

double RecursiveCapturePolicy::TransmitProbability(int group_size) const {
  return table_.P(group_size);
}

GroupStep RecursiveCapturePolicy::Step(int group_size, int transmitters) const {
  if (transmitters == 0 || transmitters == group_size) return GroupStep::kRepeat;
  if (group_size == 3 && transmitters == 2) return GroupStep::kKeepSilent;
  const int silent = group_size - transmitters;
  return table_.Z(transmitters) <= table_.Z(silent)
             ? GroupStep::kKeepTransmitters
             : GroupStep::kKeepSilent;
}

FixedProbabilityPolicy::FixedProbabilityPolicy(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("transmit probability must be in [0, 1]");
  }
}

CaptureEstimate SimulateCapture(const CapturePolicy& policy, int users,
                                std::int64_t episodes, std::uint64_t seed,
                                int jobs, std::int64_t max_slots) {
  if (users < 1) throw std::invalid_argument("users must be >= 1");
  if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  const auto tag = kCaptureTag | static_cast<std::uint32_t>(users);
  const EpisodeStats stats = RunEpisodes(episodes, jobs, [&](std::int64_t e) {
    std::vector<RngStream> streams;
    streams.reserve(users);
    for (int u = 0; u < users; ++u) {
      streams.emplace_back(seed, StreamId{tag, static_cast<std::uint32_t>(e),
                                          static_cast<std::uint32_t>(u)});
    }
    const CaptureOutcome o =
        PlayCaptureEpisode(policy, users, streams, max_slots);
    return std::pair{o.slots, o.censored};
  });
  const auto [mean, se] = MeanAndStdError(stats.lengths);
  return {users, episodes, mean, se, stats.censored};
}

CaptureEstimate SimulateCapture(int users, const CaptureTable& table,
                                std::int64_t episodes, std::uint64_t seed,
                                int jobs) {
  if (users > table.n_max) {
    throw std::invalid_argument("capture table too small for " +
                                std::to_string(users) + " users");
  }
  const RecursiveCapturePolicy policy(table);
  return SimulateCapture(policy, users, episodes, seed, jobs);
}

ProbabilityInterval NearOptimalInterval(int n) {
  if (n < 2) throw std::invalid_argument("interval defined for n >= 2");
  const double upper =
      std::pow(1.0 - 1.0 / (2.0 * std::numbers::e), 1.0 / n);
  return {1.0 - upper, upper};
}

double UniformCaptureTime(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n == 1) return 1.0;
  return 1.0 / std::pow(1.0 - 1.0 / n, n - 1);
}

double LambdaObjective(double a, double c) {
  const double b = 1.0 - a - c;
  return 1.0 + (1.0 - 3.0 * b * a * a) / (1.0 - a * a * a - b * b * b - c * c * c);
}

bool InLambda(double a, double c) {
  const double b = 1.0 - a - c;
  return a >= 0.0 && c >= 0.0 && b >= 0.0 && a * a * a + b * b * b + c * c * c <= 0.75;
}

Minimum2D MinimizeOverLambda(int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid needs >= 2 points");
  const double step = 1.0 / (grid_points - 1);
  Minimum2D best{0, 0, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < grid_points; ++i) {
    for (int k = 0; i + k < grid_points; ++k) {
      const double a = i * step;
      const double c = k * step;
      if (!InLambda(a, c)) continue;
      const double v = LambdaObjective(a, c);
      if (v < best.value) best = {a, c, v};
    }
  }
  if (!std::isfinite(best.value)) throw std::runtime_error("empty region");

  // For fixed c, a ranges over {a^3 + (1-c-a)^3 <= 3/4 - c^3}; for fixed a,
  // c ranges over {c^3 + (1-a-c)^3 <= 3/4 - a^3}.
  for (int round = 0; round < 100; ++round) {
    const double before = best.value;
    double lo, hi;
    if (CubicInterval(1.0 - best.c, 0.75 - best.c * best.c * best.c, lo, hi)) {
      const double c = best.c;
      const auto m = GoldenSectionMinimize(
          [&](double a) { return LambdaObjective(a, c); }, lo, hi, 1e-13);
      if (m.value < best.value && InLambda(m.x, c)) best = {m.x, c, m.value};
    }
    if (CubicInterval(1.0 - best.a, 0.75 - best.a * best.a * best.a, lo, hi)) {
      const double a = best.a;
      const auto m = GoldenSectionMinimize(
          [&](double c) { return LambdaObjective(a, c); }, lo, hi, 1e-13);
      if (m.value < best.value && InLambda(a, m.x)) best = {a, m.x, m.value};
    }
    if (before - best.value < 1e-15) break;
  }
  return best;
}

VirtualDeviceEstimate SimulateVirtualDevices(std::int64_t episodes,
                                             std::uint64_t seed, int jobs) {
  if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  constexpr std::int64_t kMaxSlots = kDefaultMaxCaptureSlots;
  const EpisodeStats stats = RunEpisodes(episodes, jobs, [&](std::int64_t e) {
    const auto run = static_cast<std::uint32_t>(e);
    RngStream first(seed, {kVirtualDeviceTag, run, 0});
    RngStream second(seed, {kVirtualDeviceTag, run, 1});
    for (std::int64_t t = 1; t <= kMaxSlots; ++t) {
      const int packets = (first.Bernoulli(0.5) ? 1 : 0) +
                          (second.Bernoulli(0.5) ? 1 : 0);
      if (packets == 1) return std::pair{t, false};
    }
    return std::pair{kMaxSlots, true};
  });
  const auto [mean, se] = MeanAndStdError(stats.lengths);
  return {episodes, mean, se, stats.censored};
}

ConverseReport ConverseChecks(const CaptureTable& table, std::int64_t episodes,
                              std::uint64_t seed, int jobs) {
  if (table.n_max < 3) {
    throw std::invalid_argument("converse checks need z_3 (n_max >= 3)");
  }
  ConverseReport report;
  report.virtual_devices = SimulateVirtualDevices(episodes, seed, jobs);
  report.lambda = MinimizeOverLambda();
  report.z3 = table.Z(3);
  for (int n = 1; n <= table.n_max; ++n) {
    report.uniform_bounds.push_back({n, table.Z(n), UniformCaptureTime(n)});
    if (n >= 2) report.near_optimal.push_back(NearOptimalInterval(n));
  }
  return report;
}

}  // namespace macgame
