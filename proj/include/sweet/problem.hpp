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

#ifndef SWEET_PROBLEM_HPP
#define SWEET_PROBLEM_HPP

#include <vector>

#include "sweet/acoustics.hpp"
#include "sweet/grid.hpp"
#include "sweet/psycho.hpp"

namespace sweet {

// Precomputed data for one (atom, facing direction) pair: per-speaker ear
// transfers, target ear pressures, and the detectability multipliers that make
// the dissimilarity -1 + kd |h.a - u0|^2 per ear.
struct ProblemTerm {
  std::vector<cplx> h_left, h_right;
  cplx u0_left{0.0, 0.0}, u0_right{0.0, 0.0};
  double kd_left = 0.0, kd_right = 0.0;
};

// The discretized optimization data. Atoms whose transfer evaluation fails
// (for example, a pose inside an emitter's exclusion ball) are flagged invalid
// and carry zero weight; their thresholds report -1.
class BinauralProblem {
 public:
  static BinauralProblem build(const SpeakerArray& array, const SourceSpec& source,
                               const Grid& grid, const HrtfProvider& provider,
                               const DirectionSet& directions, const VanDeParParams& params,
                               const LoudnessModel& loudness);

  int n_atoms() const { return grid_.size(); }
  int n_speakers() const { return n_speakers_; }
  const Grid& grid() const { return grid_; }  // invalid atoms carry zero weight
  const std::vector<char>& valid() const { return valid_; }
  int invalid_count() const { return invalid_count_; }
  double total_weight() const { return total_weight_; }
  double f_star() const { return f_star_; }
  double inv_eta_p() const { return inv_eta_p_; }
  double source_gain_mag() const { return source_gain_mag_; }
  const std::vector<std::vector<ProblemTerm>>& terms() const { return terms_; }

  int n_dirs(int atom) const { return static_cast<int>(terms_[atom].size()); }
  BinauralSample reproduce(const DriveCoefficients& coeffs, int atom, int dir = 0) const;
  BinauralSample target(int atom, int dir = 0) const;

  // Worst-direction dissimilarity per atom; -1 for invalid atoms.
  std::vector<double> t_d(const DriveCoefficients& coeffs) const;
  // Worst-direction worst-ear discomfort per atom; -1 for invalid atoms.
  std::vector<double> t_l(const DriveCoefficients& coeffs) const;
  ThresholdField thresholds(const DriveCoefficients& coeffs) const;

 private:
  Grid grid_;
  std::vector<std::vector<ProblemTerm>> terms_;  // empty for invalid atoms
  std::vector<char> valid_;
  int invalid_count_ = 0;
  int n_speakers_ = 0;
  double total_weight_ = 0.0;
  double f_star_ = 0.0;
  double inv_eta_p_ = 0.0;
  double source_gain_mag_ = 0.0;
};

}  // namespace sweet

#endif  // SWEET_PROBLEM_HPP
