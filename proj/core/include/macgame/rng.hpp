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

#ifndef MACGAME_RNG_HPP_
#define MACGAME_RNG_HPP_

#include <array>
#include <cstdint>

namespace macgame {

// Philox4x32-10 (Salmon et al., SC'11). Pure function of (counter, key).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter Philox4x32(PhiloxCounter counter, PhiloxKey key);

// Identifies one independent stream under a master seed. The meaning of the
// fields is up to the caller: tournaments use (pairing, run, player), capture
// simulations use (experiment, episode, user).
struct StreamId {
  std::uint32_t pairing = 0;
  std::uint32_t run = 0;
  std::uint32_t player = 0;

  friend bool operator==(const StreamId&, const StreamId&) = default;
};

// Counter-based random stream. Two streams with the same (seed, id) produce
// identical sequences; streams with different ids share no counter values.
// Each stream can produce 2^34 32-bit words before wrapping.
class RngStream {
 public:
  RngStream(std::uint64_t seed, StreamId id);

  std::uint32_t NextU32();
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // True with probability p. Consumes no randomness when p <= 0 or p >= 1, so
  // deterministic strategies leave the stream untouched.
  bool Bernoulli(double p);

  std::uint64_t seed() const { return seed_; }
  const StreamId& id() const { return id_; }

 private:
  void Refill();

  std::uint64_t seed_;
  StreamId id_;
  PhiloxKey key_;
  std::uint32_t block_ = 0;
  PhiloxCounter buffer_{};
  int next_ = 4;
};

}  // namespace macgame

#endif  // MACGAME_RNG_HPP_
