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

#include "sweet/layer_cake.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sweet {

double phi_eps(double t, PhiKind which, const LayerCake& cake) {
  const double eps = cake.epsilon;
  if (eps <= 0.0) throw std::invalid_argument("phi_eps: epsilon must be > 0");
  switch (which) {
    case PhiKind::phi:
      return (t >= 0.0 && t <= eps) ? 1.0 / eps : 0.0;
    case PhiKind::Phi:
      return std::clamp(t / eps, 0.0, 1.0);
    case PhiKind::Phi_plus:
      return std::max(t, 0.0) / eps;
    case PhiKind::Phi_minus:
      return std::max(t - eps, 0.0) / eps;
  }
  return 0.0;
}

double weighted_area_surrogate(const std::vector<double>& v, const Grid& grid,
                               const LayerCake& cake) {
  if (static_cast<int>(v.size()) != grid.size())
    throw std::invalid_argument("weighted_area_surrogate: length mismatch");
  double area = 0.0;
  for (int l = 0; l < grid.size(); ++l) area += grid.weights[l] * phi_eps(v[l], PhiKind::Phi, cake);
  return area;
}

double sweet_spot_area(const std::vector<double>& t_d, const Grid& grid) {
  if (static_cast<int>(t_d.size()) != grid.size())
    throw std::invalid_argument("sweet_spot_area: length mismatch");
  double area = 0.0;
  for (int l = 0; l < grid.size(); ++l)
    if (t_d[l] <= 0.0) area += grid.weights[l];
  return area;
}

double subgradient_term(const std::vector<double>& v0, const std::vector<double>& v,
                        const Grid& grid, const LayerCake& cake) {
  if (v0.size() != v.size() || static_cast<int>(v.size()) != grid.size())
    throw std::invalid_argument("subgradient_term: length mismatch");
  double g = 0.0;
  for (int l = 0; l < grid.size(); ++l)
    if (v0[l] > cake.epsilon) g += grid.weights[l] * v[l];
  return g / cake.epsilon;
}

double epsilon_schedule(const std::vector<double>& t_d, double percentile, double epsilon_min) {
  if (percentile <= 0.0 || percentile > 100.0)
    throw std::invalid_argument("epsilon_schedule: percentile must be in (0, 100]");
  std::vector<double> pos;
  for (double t : t_d)
    if (t > 0.0) pos.push_back(t);
  if (pos.empty()) return epsilon_min;
  std::sort(pos.begin(), pos.end());
  const int n = static_cast<int>(pos.size());
  const int rank = std::max(1, static_cast<int>(std::ceil(percentile / 100.0 * n)));
  return std::max(epsilon_min, pos[rank - 1]);
}

}  // namespace sweet
