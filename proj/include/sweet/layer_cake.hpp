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

#ifndef SWEET_LAYER_CAKE_HPP
#define SWEET_LAYER_CAKE_HPP

#include <vector>

#include "sweet/grid.hpp"

namespace sweet {

// Piecewise-linear mollifier family for the smoothed-area surrogate.
// Phi is the ramp clamp(t/eps, 0, 1); Phi_plus and Phi_minus are the two
// rectified linear pieces whose difference is Phi.
struct LayerCake {
  enum class Family { relu };
  double epsilon = 1.0;
  Family family = Family::relu;
};

enum class PhiKind { phi, Phi, Phi_plus, Phi_minus };

double phi_eps(double t, PhiKind which, const LayerCake& cake);

// sum_l w_l Phi_eps(v_l): smoothed weight of the region where v is positive.
double weighted_area_surrogate(const std::vector<double>& v, const Grid& grid,
                               const LayerCake& cake);

// Weight of {t_d <= 0} (boundary included).
double sweet_spot_area(const std::vector<double>& t_d, const Grid& grid);

// Linearization of the concave part at v0:
// g_{v0}(v) = (1/eps) sum_{l: v0_l > eps} w_l v_l.
double subgradient_term(const std::vector<double>& v0, const std::vector<double>& v,
                        const Grid& grid, const LayerCake& cake);

// Nearest-rank percentile of the positive entries, floored at epsilon_min;
// epsilon_min when no entry is positive.
double epsilon_schedule(const std::vector<double>& t_d, double percentile, double epsilon_min);

}  // namespace sweet

#endif  // SWEET_LAYER_CAKE_HPP
