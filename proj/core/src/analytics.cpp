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

#include "macgame/analytics.hpp"

#include <sstream>
#include <stdexcept>

namespace macgame {
namespace {

void CheckHorizon(int horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("horizon must be >= 1, got " +
                                std::to_string(horizon));
  }
}

// 2^-exponent, or 0 when past the exact range.
HighPrecision InversePow2(int exponent, int horizon) {
  if (horizon > kMaxExactHorizon) return HighPrecision(0);
  return boost::multiprecision::ldexp(HighPrecision(1), -exponent);
}

}  // namespace

std::string ClosedForm::ToString(int digits) const {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << value;
  return out.str();
}

ClosedForm AlphaOptimal(int horizon) {
  CheckHorizon(horizon);
  HighPrecision t(horizon);
  return {(t - 1) / 2 + InversePow2(horizon + 1, horizon),
          horizon > kMaxExactHorizon};
}

ClosedForm Beta4(int horizon) {
  CheckHorizon(horizon);
  HighPrecision t(horizon);
  return {t - 2 + 3 * InversePow2(horizon, horizon),
          horizon > kMaxExactHorizon};
}

ClosedForm Beta3(int horizon) {
  CheckHorizon(horizon);
  HighPrecision t(horizon);
  const HighPrecision offset =
      horizon % 2 == 0 ? HighPrecision(1) / 3 : HighPrecision(1) / 6;
  return {t / 2 - offset + InversePow2(horizon, horizon) / 3,
          horizon > kMaxExactHorizon};
}

ClosedForm ExpectedIdleSpan(int horizon) {
  CheckHorizon(horizon);
  return {1 - InversePow2(horizon, horizon), horizon > kMaxExactHorizon};
}

std::string AnalyticsTableCsv(int first, int last, int digits) {
  CheckHorizon(first);
  if (last < first) throw std::invalid_argument("empty horizon range");
  std::ostringstream out;
  out << "T,alpha,beta4,beta3,expected_y,limiting\n";
  for (int t = first; t <= last; ++t) {
    const auto alpha = AlphaOptimal(t);
    out << t << ',' << alpha.ToString(digits) << ','
        << Beta4(t).ToString(digits) << ',' << Beta3(t).ToString(digits)
        << ',' << ExpectedIdleSpan(t).ToString(digits) << ','
        << (alpha.limiting ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace macgame
