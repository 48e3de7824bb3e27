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

#ifndef SWEET_BASELINES_HPP
#define SWEET_BASELINES_HPP

#include "sweet/acoustics.hpp"
#include "sweet/grid.hpp"

namespace sweet {

struct BaselineSettings {
  double lambda_ridge = 1e-6;  // trace-normalized ridge weight
  int hoa_order = -1;          // -1: floor((n_s - 1) / 2)
  double wfs_ref_distance = 1.0;
};

struct PmmResult {
  DriveCoefficients coeffs;
  bool rank_deficient = false;
  double grad_residual = 0.0;  // relative normal-equation residual
};

// Weighted least-squares pressure match over the grid atoms with a
// trace-normalized ridge term: the effective ridge is
// lambda_ridge * trace(G^H W G) / n_s. With a zero ridge a rank-deficient
// system falls back to the minimum-norm solution.
PmmResult pmm_l2(const SpeakerArray& array, const SourceSpec& source, const Grid& grid,
                 double c_s = kDefaultSpeedOfSound, double lambda_ridge = 1e-6);

// 2.5D point-source driving function with a secondary-source selection
// window, normalized so the synthesized field matches the target at the array
// center. Sources inside the array use the time-reversed (focus) branch.
DriveCoefficients wfs_25d(const SpeakerArray& array, const SourceSpec& source,
                          double c_s = kDefaultSpeedOfSound, const BaselineSettings& settings = {});

// 2.5D modal driving function for a circular equispaced array. Focus sources
// (inside the array) use the raised-cosine angular weighting; exterior
// sources use unit weights. With normalize=true the coefficients are scaled
// so the synthesized field matches the target at the array center.
DriveCoefficients nfc_hoa_25d(const SpeakerArray& array, const SourceSpec& source,
                              double c_s = kDefaultSpeedOfSound,
                              const BaselineSettings& settings = {}, bool normalize = true);

// Angular weighting for focus sources: w_n = (cos(n pi / floor(kd)) + 1) / 2
// for n <= kd, 0 beyond. kd is the dimensionless focus distance (omega/c) d.
double hoa_angular_weight(int n, double kd);

double sph_bessel_j(int n, double z);
double sph_bessel_y(int n, double z);
// h_n^(2)(z) = j_n(z) - i y_n(z)
cplx spherical_hankel2(int n, double z);

}  // namespace sweet

#endif  // SWEET_BASELINES_HPP
