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

#include "sweet/grid.hpp"

#include <numeric>
#include <stdexcept>

namespace sweet {

double Grid::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

Grid generate_grid(double region_radius, double spacing, const SpeakerArray& array,
                   double clearance) {
  if (spacing <= 0.0) throw std::invalid_argument("generate_grid: spacing must be > 0");
  if (region_radius <= 0.0) throw std::invalid_argument("generate_grid: radius must be > 0");
  const int n = static_cast<int>(region_radius / spacing);
  const double r2 = region_radius * region_radius;
  Grid grid;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const Position p{i * spacing, j * spacing, 0.0};
      if (p.x * p.x + p.y * p.y > r2) continue;
      bool clear = true;
      for (const auto& s : array.positions) {
        if (distance(p, s) < clearance) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      grid.atoms.push_back(p);
      grid.weights.push_back(1.0);
    }
  }
  if (grid.atoms.empty()) throw std::runtime_error("generate_grid: empty grid");
  return grid;
}

}  // namespace sweet
