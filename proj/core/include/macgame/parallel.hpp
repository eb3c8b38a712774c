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

#ifndef MACGAME_PARALLEL_HPP_
#define MACGAME_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace macgame {

// Worker count for `jobs`; non-positive means one per hardware thread.
inline int ResolveJobs(int jobs) {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls fn(i) for every i in [0, count) on up to `jobs` threads. Work items
// must write to disjoint outputs; the first exception is rethrown.
template <typename Fn>
void ParallelFor(std::size_t count, int jobs, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(ResolveJobs(jobs)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> threads;
  threads.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(worker);
  worker();
  threads.clear();
  if (error) std::rethrow_exception(error);
}

// Integer accumulator for sample mean and standard error. Addition is exact,
// so the result does not depend on how samples were split across threads.
struct IntMoments {
  std::int64_t count = 0;
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;

  void Add(std::int64_t x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  void Merge(const IntMoments& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
};

// Uncensored episode lengths plus the number of censored episodes.
struct EpisodeStats {
  IntMoments lengths;
  std::int64_t censored = 0;
};

// Runs episode(e) for e in [0, episodes) in fixed-size chunks. `episode`
// returns {length, censored}. Chunk results are merged in chunk order.
template <typename Fn>
EpisodeStats RunEpisodes(std::int64_t episodes, int jobs, Fn&& episode) {
  constexpr std::int64_t kChunk = 8192;
  const std::int64_t chunks = (episodes + kChunk - 1) / kChunk;
  std::vector<EpisodeStats> partial(static_cast<std::size_t>(chunks));
  ParallelFor(partial.size(), jobs, [&](std::size_t c) {
    const std::int64_t first = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t last = std::min(episodes, first + kChunk);
    EpisodeStats& out = partial[c];
    for (std::int64_t e = first; e < last; ++e) {
      const auto [length, censored] = episode(e);
      if (censored) {
        ++out.censored;
      } else {
        out.lengths.Add(length);
      }
    }
  });
  EpisodeStats total;
  for (const auto& p : partial) {
    total.lengths.Merge(p.lengths);
    total.censored += p.censored;
  }
  return total;
}

// Sample mean and standard error of the mean.
inline std::pair<double, double> MeanAndStdError(const IntMoments& m) {
  if (m.count == 0) return {0.0, 0.0};
  const double n = static_cast<double>(m.count);
  const double mean = static_cast<double>(m.sum) / n;
  if (m.count == 1) return {mean, 0.0};
  const double var = std::max(
      0.0, (static_cast<double>(m.sum_sq) - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

}  // namespace macgame

#endif  // MACGAME_PARALLEL_HPP_
