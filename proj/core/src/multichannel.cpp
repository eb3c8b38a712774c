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

#include "macgame/multichannel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "macgame/optimize.hpp"
#include "macgame/parallel.hpp"

namespace macgame {
namespace {

constexpr std::uint32_t kMultichannelTag = 0x4d430000;
constexpr int kMaxChannels = 16;

double Cube(double x) { return x * x * x; }

void CheckUnit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must be in [0, 1]");
  }
}

}  // namespace

double TwoUserCaptureTime(int channels) {
  if (channels < 1) throw std::invalid_argument("channels must be >= 1");
  return 1.0 / (1.0 - std::ldexp(1.0, -channels));
}

double TwoUserCaptureTime(std::span<const double> subset_probs) {
  double collide = 0.0;
  for (double q : subset_probs) collide += q * q;
  if (collide >= 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (1.0 - collide);
}

BetaTheta BetaThetaFull(const ChannelPolicyParams& params) {
  const auto [p, q, r] = params;
  CheckUnit(p, "p");
  CheckUnit(q, "q");
  CheckUnit(r, "r");
  const double beta =
      Cube(p) * (Cube(q) + Cube(1 - q)) + Cube(1 - p) * (Cube(r) + Cube(1 - r));
  const double theta =
      Cube(p) * 3 * q * q * (1 - q) + Cube(1 - p) * 3 * r * r * (1 - r) +
      3 * p * p * (1 - p) *
          (1 - 2 * q * (1 - q) * (1 - r) - r * (1 - q) * (1 - q));
  return {beta, theta};
}

BetaTheta BetaThetaIndependent(double p) {
  CheckUnit(p, "p");
  const double same = Cube(p) + Cube(1 - p);
  const double pair = 3 * p * p * (1 - p);
  return {same * same, same * pair + pair * (1 - 3 * p * (1 - p) * (1 - p))};
}

double RenewalValue(const BetaTheta& bt) {
  if (bt.beta >= 1.0) return std::numeric_limits<double>::infinity();
  return (1.0 + bt.theta) / (1.0 - bt.beta);
}

FullFamilyOptimum OptimizeFullFamily(const OptimizeSettings& settings) {
  const int g = settings.grid_points;
  if (g < 2) throw std::invalid_argument("grid needs >= 2 points");
  auto z = [](double p, double q, double r) {
    return RenewalValue(BetaThetaFull({p, q, r}));
  };
  FullFamilyOptimum best{{}, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      for (int k = 0; k < g; ++k) {
        const double p = static_cast<double>(i) / (g - 1);
        const double q = static_cast<double>(j) / (g - 1);
        const double r = static_cast<double>(k) / (g - 1);
        const double v = z(p, q, r);
        if (v < best.z) best = {{p, q, r}, v};
      }
    }
  }
  for (int round = 0; round < settings.max_rounds; ++round) {
    const double before = best.z;
    for (int axis = 0; axis < 3; ++axis) {
      ChannelPolicyParams x = best.params;
      double* coord = axis == 0 ? &x.p : axis == 1 ? &x.q : &x.r;
      const auto m = GoldenSectionMinimize(
          [&](double v) {
            *coord = v;
            return z(x.p, x.q, x.r);
          },
          0.0, 1.0, settings.tol);
      *coord = m.x;
      if (m.value < best.z) best = {x, m.value};
    }
    if (before - best.z < 1e-15) break;
  }
  return best;
}

IndependentOptimum OptimizeIndependentFamily(const OptimizeSettings& settings) {
  const int g = std::max(settings.grid_points, 2);
  const auto m = ScanThenRefine(
      [](double p) { return RenewalValue(BetaThetaIndependent(p)); }, 0.0, 1.0,
      (g - 1) * 10 + 1, settings.tol);
  return {m.x, m.value};
}

SubsetPolicy::SubsetPolicy(int channels, std::vector<double> probs)
    : channels_(channels), probs_(std::move(probs)) {
  if (channels < 1 || channels > kMaxChannels) {
    throw std::invalid_argument("channels must be in [1, 16]");
  }
  if (probs_.size() != (std::size_t{1} << channels)) {
    throw std::invalid_argument("subset distribution needs 2^m entries");
  }
  double total = 0.0;
  for (double q : probs_) {
    CheckUnit(q, "subset probability");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("subset probabilities must sum to 1");
  }
  cumulative_.resize(probs_.size());
  std::partial_sum(probs_.begin(), probs_.end(), cumulative_.begin());
}

SubsetPolicy SubsetPolicy::Independent(int channels, double p) {
  CheckUnit(p, "p");
  if (channels < 1 || channels > kMaxChannels) {
    throw std::invalid_argument("channels must be in [1, 16]");
  }
  std::vector<double> probs(std::size_t{1} << channels);
  for (std::size_t s = 0; s < probs.size(); ++s) {
    const int on = std::popcount(static_cast<unsigned>(s));
    probs[s] = std::pow(p, on) * std::pow(1 - p, channels - on);
  }
  return SubsetPolicy(channels, std::move(probs));
}

SubsetPolicy SubsetPolicy::FromParams(const ChannelPolicyParams& params) {
  const auto [p, q, r] = params;
  CheckUnit(p, "p");
  CheckUnit(q, "q");
  CheckUnit(r, "r");
  // Index bit 0 = channel 1, bit 1 = channel 2.
  return SubsetPolicy(2, {(1 - p) * (1 - r), p * (1 - q), (1 - p) * r, p * q});
}

SubsetPolicy SubsetPolicy::FromDistribution(int channels,
                                            std::vector<double> probs) {
  return SubsetPolicy(channels, std::move(probs));
}

unsigned SubsetPolicy::Sample(RngStream& rng) const {
  const double u = rng.Uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  auto index = static_cast<std::size_t>(it - cumulative_.begin());
  index = std::min(index, probs_.size() - 1);
  // Never return a zero-probability subset at a cumulative plateau.
  while (probs_[index] == 0.0 && index > 0) --index;
  return static_cast<unsigned>(index);
}

MultichannelEstimate SimulateMultichannel(const SubsetPolicy& policy,
                                          int users, std::int64_t episodes,
                                          std::uint64_t seed, int jobs,
                                          std::int64_t max_slots) {
  if (users != 2 && users != 3) {
    throw std::invalid_argument("multichannel simulation supports 2 or 3 users");
  }
  if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  if (max_slots < 1) throw std::invalid_argument("max_slots must be >= 1");
  const int m = policy.channels();
  const auto tag = kMultichannelTag |
                   static_cast<std::uint32_t>(users << 8 | m);

  const EpisodeStats stats = RunEpisodes(episodes, jobs, [&](std::int64_t e) {
    std::array<RngStream, 3> rng = {
        RngStream(seed, {tag, static_cast<std::uint32_t>(e), 0}),
        RngStream(seed, {tag, static_cast<std::uint32_t>(e), 1}),
        RngStream(seed, {tag, static_cast<std::uint32_t>(e), 2})};
    std::array<unsigned, 3> subset{};
    for (std::int64_t t = 1; t <= max_slots; ++t) {
      for (int u = 0; u < users; ++u) subset[u] = policy.Sample(rng[u]);
      bool success = false;
      for (int ch = 0; ch < m && !success; ++ch) {
        int senders = 0;
        for (int u = 0; u < users; ++u) senders += (subset[u] >> ch) & 1u;
        success = senders == 1;
      }
      if (success) return std::pair{t, false};
      const bool identical = std::all_of(
          subset.begin(), subset.begin() + users,
          [&](unsigned s) { return s == subset[0]; });
      if (identical) continue;
      // Some channel carried exactly two senders; the third user is now
      // distinguishable and sends alone.
      return t + 1 <= max_slots ? std::pair{t + 1, false}
                                : std::pair{max_slots, true};
    }
    return std::pair{max_slots, true};
  });
  const auto [mean, se] = MeanAndStdError(stats.lengths);
  return {users, m, episodes, mean, se, stats.censored};
}

std::string MultichannelSweepCsv(const std::string& family, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid needs >= 2 points");
  std::ostringstream out;
  char buf[256];
  const double step = 1.0 / (grid_points - 1);
  if (family == "independent") {
    out << "p,beta,theta,z\n";
    for (int i = 0; i < grid_points; ++i) {
      const double p = i * step;
      const BetaTheta bt = BetaThetaIndependent(p);
      std::snprintf(buf, sizeof(buf), "%.6f,%.9f,%.9f,%.9f\n", p, bt.beta,
                    bt.theta, RenewalValue(bt));
      out << buf;
    }
  } else if (family == "full") {
    out << "p,q,r,beta,theta,z\n";
    for (int i = 0; i < grid_points; ++i) {
      for (int j = 0; j < grid_points; ++j) {
        for (int k = 0; k < grid_points; ++k) {
          const ChannelPolicyParams x{i * step, j * step, k * step};
          const BetaTheta bt = BetaThetaFull(x);
          std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.9f,%.9f,%.9f\n",
                        x.p, x.q, x.r, bt.beta, bt.theta, RenewalValue(bt));
          out << buf;
        }
      }
    }
  } else {
    throw std::invalid_argument("unknown policy family '" + family +
                                "' (expected 'independent' or 'full')");
  }
  return out.str();
}

}  // namespace macgame
