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

#ifndef MACGAME_MULTICHANNEL_HPP_
#define MACGAME_MULTICHANNEL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "macgame/game.hpp"
#include "macgame/rng.hpp"

namespace macgame {

// Optimal expected capture time for 2 users on m channels: each user sends
// on each channel independently with probability 1/2, giving
// 1 / (1 - 2^-m).
double TwoUserCaptureTime(int channels);

// 2-user capture time when both users draw their channel subset from
// `subset_probs` (2^m entries) on every slot: 1 / (1 - sum q_i^2).
double TwoUserCaptureTime(std::span<const double> subset_probs);

// Slot-1 behavior of 3 users on 2 channels: send on channel 1 w.p. p; send
// on channel 2 w.p. q if we sent on channel 1, else w.p. r.
struct ChannelPolicyParams {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
};

// beta: all three users picked the same subset.
// theta: no channel has exactly one sender but some channel has exactly two.
struct BetaTheta {
  double beta = 0.0;
  double theta = 0.0;
};

BetaTheta BetaThetaFull(const ChannelPolicyParams& params);
// Both channels used independently with the same probability p.
BetaTheta BetaThetaIndependent(double p);

// (1 + theta) / (1 - beta); +inf when beta = 1.
double RenewalValue(const BetaTheta& bt);

struct OptimizeSettings {
  int grid_points = 101;  // per axis
  double tol = 1e-10;
  int max_rounds = 100;
};

struct FullFamilyOptimum {
  ChannelPolicyParams params;
  double z = 0.0;
};
struct IndependentOptimum {
  double p = 0.0;
  double z = 0.0;
};

// Grid scan over [0,1]^3 then coordinate-wise golden-section refinement.
FullFamilyOptimum OptimizeFullFamily(const OptimizeSettings& settings = {});
IndependentOptimum OptimizeIndependentFamily(
    const OptimizeSettings& settings = {});

// Distribution over the 2^m channel subsets a user sends on in one slot.
// Bit k of a subset index is channel k + 1.
class SubsetPolicy {
 public:
  static SubsetPolicy Independent(int channels, double p);
  static SubsetPolicy FromParams(const ChannelPolicyParams& params);
  static SubsetPolicy FromDistribution(int channels, std::vector<double> probs);

  int channels() const { return channels_; }
  const std::vector<double>& probabilities() const { return probs_; }
  unsigned Sample(RngStream& rng) const;

 private:
  SubsetPolicy(int channels, std::vector<double> probs);

  int channels_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

struct MultichannelEstimate {
  int users = 0;
  int channels = 0;
  std::int64_t episodes = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t censored = 0;
};

// Monte Carlo capture time for 2 or 3 users that draw subsets from `policy`
// every slot until some channel carries exactly one sender. When all users
// chose the same subset the slot is repeated. With 3 users, a slot where two
// users collide on a channel the third avoided (or the third sent alone on
// it) singles that user out, and it sends alone on the next slot.
MultichannelEstimate SimulateMultichannel(
    const SubsetPolicy& policy, int users, std::int64_t episodes,
    std::uint64_t seed, int jobs = 0,
    std::int64_t max_slots = kDefaultMaxCaptureSlots);

// CSV of beta, theta and z over an evenly spaced grid. "independent" sweeps
// p; "full" sweeps (p, q, r).
std::string MultichannelSweepCsv(const std::string& family, int grid_points);

}  // namespace macgame

#endif  // MACGAME_MULTICHANNEL_HPP_
