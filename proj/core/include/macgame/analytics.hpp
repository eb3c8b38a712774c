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

#ifndef MACGAME_ANALYTICS_HPP_
#define MACGAME_ANALYTICS_HPP_

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace macgame {

// 256-bit significand: 2^-T terms next to O(T) values stay exact for
// T <= kMaxExactHorizon.
using HighPrecision = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<
        256, boost::multiprecision::digit_base_2>>;

inline constexpr int kMaxExactHorizon = 200;

struct ClosedForm {
  HighPrecision value;
  // Set for T > kMaxExactHorizon, where the 2^-T term is dropped.
  bool limiting = false;

  double ToDouble() const { return value.convert_to<double>(); }
  std::string ToString(int digits) const;
};

// Best possible Self-Competition score, (T-1)/2 + 2^-(T+1); attained by
// 3-State and 4-State.
ClosedForm AlphaOptimal(int horizon);
// No-Competition score of 4-State: T - 2 + 3 * 2^-T.
ClosedForm Beta4(int horizon);
// No-Competition score of 3-State:
//   T/2 - 1/3 + (1/3) 2^-T  (T even)
//   T/2 - 1/6 + (1/3) 2^-T  (T odd)
ClosedForm Beta3(int horizon);
// Expected number of leading slots without a success in 4-State self-play,
// 1 - 2^-T.
ClosedForm ExpectedIdleSpan(int horizon);

// CSV with columns T,alpha,beta4,beta3,expected_y,limiting for T in
// [first, last].
std::string AnalyticsTableCsv(int first, int last, int digits = 20);

}  // namespace macgame

#endif  // MACGAME_ANALYTICS_HPP_
