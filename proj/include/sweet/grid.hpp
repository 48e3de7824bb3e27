// Copyright 2026 The sweetspot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SWEET_GRID_HPP
#define SWEET_GRID_HPP

#include "sweet/acoustics.hpp"

namespace sweet {

// Atomic discretization of the listening region: weighted point masses.
struct Grid {
  std::vector<Position> atoms;
  std::vector<double> weights;

  int size() const { return static_cast<int>(atoms.size()); }
  double total_weight() const;
};

// Square lattice (including the origin) clipped to the disk of the given
// radius, unit weights. Points closer than `clearance` to any speaker are
// dropped. Throws if the result is empty.
Grid generate_grid(double region_radius, double spacing, const SpeakerArray& array,
                   double clearance = 0.1);

}  // namespace sweet

#endif  // SWEET_GRID_HPP
