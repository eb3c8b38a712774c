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

#ifndef MACGAME_OPTIMIZE_HPP_
#define MACGAME_OPTIMIZE_HPP_

#include <functional>

namespace macgame {

struct Minimum1D {
  double x = 0.0;
  double value = 0.0;
};

using Objective1D = std::function<double(double)>;

// Golden-section search for a unimodal function on [lo, hi]. Stops once the
// bracket is narrower than `tol`.
Minimum1D GoldenSectionMinimize(const Objective1D& f, double lo, double hi,
                                double tol = 1e-12, int max_iterations = 400);

// Evaluates f on `grid_points` evenly spaced points of [lo, hi], then refines
// the bracket around the best point with golden-section search. Handles
// objectives that are not known to be unimodal as long as the grid resolves
// the basin of the global minimum.
Minimum1D ScanThenRefine(const Objective1D& f, double lo, double hi,
                         int grid_points, double tol = 1e-12);

}  // namespace macgame

#endif  // MACGAME_OPTIMIZE_HPP_
