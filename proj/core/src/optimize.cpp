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

#include "macgame/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace macgame {

Minimum1D GoldenSectionMinimize(const Objective1D& f, double lo, double hi,
                                double tol, int max_iterations) {
  if (!(lo <= hi)) throw std::invalid_argument("golden section: lo > hi");
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && (b - a) > tol; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  Minimum1D best = fc <= fd ? Minimum1D{c, fc} : Minimum1D{d, fd};
  const double mid = 0.5 * (a + b);
  const double fmid = f(mid);
  if (fmid < best.value) best = {mid, fmid};
  return best;
}

Minimum1D ScanThenRefine(const Objective1D& f, double lo, double hi,
                         int grid_points, double tol) {
  if (grid_points < 2) throw std::invalid_argument("scan needs >= 2 points");
  if (!(lo < hi)) throw std::invalid_argument("scan: empty interval");
  const double step = (hi - lo) / (grid_points - 1);
  int best_k = 0;
  double best_value = f(lo);
  for (int k = 1; k < grid_points; ++k) {
    const double v = f(lo + step * k);
    if (v < best_value) {
      best_value = v;
      best_k = k;
    }
  }
  const double left = lo + step * std::max(best_k - 1, 0);
  const double right = best_k + 1 < grid_points ? lo + step * (best_k + 1) : hi;
  Minimum1D refined = GoldenSectionMinimize(f, left, right, tol);
  if (best_value < refined.value) refined = {lo + step * best_k, best_value};
  return refined;
}

}  // namespace macgame
