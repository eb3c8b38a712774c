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

#ifndef MACGAME_CAPTURE_HPP_
#define MACGAME_CAPTURE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "macgame/game.hpp"

namespace macgame {

// First-slot transmit probabilities p_n and expected capture times z_n of the
// group-splitting protocol, for n = 1..n_max.
struct CaptureTable {
  int n_max = 0;
  std::vector<double> p;  // p[n - 1]
  std::vector<double> z;  // z[n - 1]

  double P(int n) const { return p.at(n - 1); }
  double Z(int n) const { return z.at(n - 1); }
};

// Expected capture time of n users that transmit with probability p on the
// first slot and then continue with the better of the two groups:
//
//   1 + sum_{i=2}^{n-1} min(z_i, z_{n-i}) C(n,i) p^i (1-p)^(n-i)
//   ------------------------------------------------------------
//                     1 - p^n - (1-p)^n
//
// z_prefix[i - 1] = z_i for i = 1..n-1. Throws std::invalid_argument if
// p is not in (0, 1), n < 2 or the prefix is too short.
double CaptureObjective(int n, double p, std::span<const double> z_prefix);

// Minimizes CaptureObjective for each n in turn: a scan over
// p = 0.001, 0.002, ..., 0.999 followed by golden-section refinement to `tol`.
CaptureTable SolveCaptureTable(int n_max, double tol = 1e-9);

// CSV n,p,z with `digits` decimals.
std::string CaptureTableCsv(const CaptureTable& table, int digits = 6);

// The group-splitting protocol driven by a solved table. After a collision
// of i out of m users the group with the smaller z continues; ties keep the
// transmitters. With m = 3 and two transmitters the silent user sends alone
// on the next slot.
class RecursiveCapturePolicy final : public CapturePolicy {
 public:
  explicit RecursiveCapturePolicy(CaptureTable table);

  double TransmitProbability(int group_size) const override;
  GroupStep Step(int group_size, int transmitters) const override;

 private:
  CaptureTable table_;
};

// Every user transmits with the same probability on every slot.
class FixedProbabilityPolicy final : public CapturePolicy {
 public:
  explicit FixedProbabilityPolicy(double p);

  double TransmitProbability(int) const override { return p_; }
  GroupStep Step(int, int) const override { return GroupStep::kRepeat; }

 private:
  double p_;
};

struct CaptureEstimate {
  int users = 0;
  std::int64_t episodes = 0;
  double mean = 0.0;       // over uncensored episodes
  double std_error = 0.0;
  std::int64_t censored = 0;
};

// Monte Carlo estimate of E[Z]. Episode e uses streams (tag, e, user); the
// result does not depend on `jobs`.
CaptureEstimate SimulateCapture(const CapturePolicy& policy, int users,
                                std::int64_t episodes, std::uint64_t seed,
                                int jobs = 0,
                                std::int64_t max_slots =
                                    kDefaultMaxCaptureSlots);
// Runs RecursiveCapturePolicy(table). Requires users <= table.n_max.
CaptureEstimate SimulateCapture(int users, const CaptureTable& table,
                                std::int64_t episodes, std::uint64_t seed,
                                int jobs = 0);

// [1 - (1 - 1/(2e))^(1/n), (1 - 1/(2e))^(1/n)]: where the first-slot
// probability of any near-optimal n-user algorithm must lie. Reported only.
struct ProbabilityInterval {
  double lower = 0.0;
  double upper = 0.0;
};
ProbabilityInterval NearOptimalInterval(int n);

// 1 / (1 - 1/n)^(n-1): capture time when all n users send w.p. 1/n.
double UniformCaptureTime(int n);

// Objective over the region
//   {a, c >= 0, a + c <= 1, a^3 + (1-a-c)^3 + c^3 <= 3/4}
// that lower-bounds the 6-user, two-groups-of-three continuation.
double LambdaObjective(double a, double c);
bool InLambda(double a, double c);

struct Minimum2D {
  double a = 0.0;
  double c = 0.0;
  double value = 0.0;
};
// Grid scan with `grid_points` per axis, then coordinate-wise golden-section
// refinement inside the region.
Minimum2D MinimizeOverLambda(int grid_points = 1001);

struct VirtualDeviceEstimate {
  std::int64_t episodes = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t censored = 0;
};
// Two virtual devices that each send 0 or 1 packets with equal probability;
// a slot succeeds when exactly one packet is sent in total.
VirtualDeviceEstimate SimulateVirtualDevices(std::int64_t episodes,
                                             std::uint64_t seed, int jobs = 0);

struct UniformBoundRow {
  int n = 0;
  double z = 0.0;
  double bound = 0.0;  // UniformCaptureTime(n)
};

struct ConverseReport {
  VirtualDeviceEstimate virtual_devices;
  Minimum2D lambda;
  double z3 = 0.0;
  std::vector<UniformBoundRow> uniform_bounds;
  std::vector<ProbabilityInterval> near_optimal;  // index n - 2, n >= 2
};

// Requires table.n_max >= 3.
ConverseReport ConverseChecks(const CaptureTable& table, std::int64_t episodes,
                              std::uint64_t seed, int jobs = 0);

}  // namespace macgame

#endif  // MACGAME_CAPTURE_HPP_
