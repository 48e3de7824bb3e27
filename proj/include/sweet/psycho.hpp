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

#ifndef SWEET_PSYCHO_HPP
#define SWEET_PSYCHO_HPP

#include <cmath>
#include <string>
#include <vector>

#include "sweet/acoustics.hpp"
#include "sweet/grid.hpp"
#include "sweet/spline.hpp"

namespace sweet {

// Auditory-filter bandwidth variant. `as_printed` uses the reciprocal form
// 24.7 (1 + 4.37e-3 f)^{-1}; `glasberg_moore` uses the standard product form.
enum class ErbFormula { as_printed, glasberg_moore };

// Parameters of the single-frequency spectral detectability model: outer and
// middle ear weighting (Terhardt), gammatone band weights on an ERB-rate grid,
// and the calibration constants of the closed form.
struct VanDeParParams {
  int n_bands = 100;
  double f_first = 20.0;   // Hz
  double f_last = 1000.0;  // Hz
  double c_a = 4.481;
  double c_psi_prime = 1.555;
  double c_eta0 = 4.69;
  double c_eta1 = 18.2 * std::pow(10.0, 1.4);
  double c_eta2 = 32.5e-7;
  double c_eta3 = 5e-16;
  ErbFormula erb_formula = ErbFormula::as_printed;
  bool erbs_natural_log = false;  // default base-10 rate scale
};

// 10^{c0 - c1 f^{-0.8} - c2 (f - 3300)^2 + c3 f^4}
double terhardt_eta(double f, const VanDeParParams& params);

double erb(double f, const VanDeParParams& params);
double erbs(double f, const VanDeParParams& params);
// n_bands center frequencies uniformly spaced on the ERB-rate scale
// between f_first and f_last.
std::vector<double> erb_centers(const VanDeParParams& params);

// (1 + (945 pi (f - f_j) / (48 ERB(f_j)))^2)^{-2}
double gammatone_weight(double f, double f_j, const VanDeParParams& params);

// |eta(f) gamma_{f_j}(f)|^2
double band_weight(double f, double f_j, const VanDeParParams& params);

// Multiplier K such that the monaural dissimilarity is -1 + K |u - u0|^2
// at fixed reference energy |u0|^2.
double detectability_gain(double u0_sq, double f_star, const VanDeParParams& params);

// -1 + C'_psi sum_j w_j |u - u0|^2 / (C_A + w_j |u0|^2); noticeable at >= 0.
double monaural_dissimilarity(cplx u, cplx u0, double f_star, const VanDeParParams& params);

// Worst-ear rule.
double binaural_dissimilarity(const BinauralSample& s, const BinauralSample& s0, double f_star,
                              const VanDeParParams& params);

// Loudness discomfort level as a natural cubic spline over (frequency, dB SPL)
// knots. The discomfort measure is -1 + |u|^2 / eta_P(f) with
// eta_P = (p_ref 10^{LDL/20})^2.
class LoudnessModel {
 public:
  static LoudnessModel flat_default();  // 100 dB SPL, 8 knots over [20 Hz, 16 kHz]
  static LoudnessModel from_knots(std::vector<double> freq_hz, std::vector<double> ldl_db);
  // CSV with header `freq_hz,ldl_db_spl`.
  static LoudnessModel from_csv(const std::string& path);

  double ldl_db(double f) const { return spline_(f); }
  double eta_p(double f) const;
  double c_pi_prime() const { return 1.0; }
  const std::vector<double>& knot_freqs() const { return freq_; }
  const std::vector<double>& knot_levels() const { return level_; }
  const NaturalCubicSpline& spline() const { return spline_; }

 private:
  std::vector<double> freq_, level_;
  NaturalCubicSpline spline_;
};

double loudness_discomfort(cplx u, double f_star, const LoudnessModel& model);

// Facing directions evaluated at each position.
class DirectionSet {
 public:
  static DirectionSet look_at_source(const Position& src);
  static DirectionSet fixed(std::vector<double> angles);

  std::vector<double> directions(const Position& at) const;

 private:
  bool look_at_source_ = true;
  Position src_;
  std::vector<double> angles_;
};

struct ThresholdField {
  std::vector<double> t_d;
  std::vector<double> t_l;
};

// Worst-direction dissimilarity and worst-direction worst-ear discomfort per
// grid atom. Transfer errors (such as an atom inside the head exclusion ball
// of an emitter) propagate as exceptions.
ThresholdField threshold_maps(const DriveCoefficients& coeffs, const SpeakerArray& array,
                              const SourceSpec& source, const HrtfProvider& provider,
                              const Grid& grid, const DirectionSet& directions,
                              const VanDeParParams& params, const LoudnessModel& loudness);

}  // namespace sweet

#endif  // SWEET_PSYCHO_HPP
