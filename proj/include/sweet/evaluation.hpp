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

#ifndef SWEET_EVALUATION_HPP
#define SWEET_EVALUATION_HPP

#include <string>
#include <vector>

#include "sweet/acoustics.hpp"
#include "sweet/problem.hpp"

namespace sweet {

// `paper_verbatim` keeps the printed 1/c_s factor on the level difference.
enum class IldConvention { conventional, paper_verbatim };

struct CueSample {
  double ild = 0.0;  // positive: right ear louder
  double ipd = 0.0;  // radians, principal branch
  double itd = 0.0;  // seconds, positive: source toward the left
};

CueSample extract_cues(const BinauralSample& s, double f_star,
                       IldConvention convention = IldConvention::conventional,
                       double c_s = kDefaultSpeedOfSound);

// Resolve the phase ambiguity: when the time and level cues disagree in sign
// and the level cue is decisive (above the gate), shift the time cue by one
// period toward the level side. The gate is always in dB.
double unwrap_itd(const CueSample& cue, double f_star, double ild_gate_db = 2.5);

// Monotone (azimuth, itd) table over [-90, 90] degrees, positive azimuths to
// the listener's left, inverted by linear interpolation.
class ItdLookup {
 public:
  ItdLookup(std::vector<double> azimuth_deg, std::vector<double> itd_seconds);

  double angle_for_itd(double itd) const;  // clamped to the table range
  const std::vector<double>& azimuths() const { return az_; }
  const std::vector<double>& itds() const { return itd_; }

 private:
  std::vector<double> az_, itd_;
};

// Far emitters swept over azimuth through the given provider; unwrapped time
// cues cleaned up by isotonic regression.
ItdLookup build_itd_lookup(const HrtfProvider& provider, double f_star, double radius = 100.0,
                           int n_azimuths = 181, double ild_gate_db = 2.5,
                           IldConvention convention = IldConvention::conventional,
                           double c_s = kDefaultSpeedOfSound);

struct EvalThresholds {
  double lss_deg = 5.0;
  double css_db = 1.0;  // coloration-proxy level error bound
  double ild_gate_db = 2.5;
  IldConvention convention = IldConvention::conventional;
};

struct EvalReport {
  std::string method;
  double lss_fraction = 0.0;
  double css_fraction = 0.0;    // worst-ear level error within css_db
  double sweet_fraction = 0.0;  // t_d <= 0
  bool has_dh = false;
  double lss_dh_fraction = 0.0;  // divergent-halfspace restriction (focus sources)
  int invalid_count = 0;
  std::vector<double> az_err_deg, color_db;
  std::vector<char> in_lss, in_css, in_sweet, divergent, valid;
};

// Per-atom cue and level errors against the target, aggregated as weight
// shares over the problem's grid (invalid atoms excluded). The divergent
// halfspace of a focus source is {z : <z - x0, x0 - center> >= 0}.
EvalReport evaluate_method(const DriveCoefficients& coeffs, const BinauralProblem& problem,
                           const SourceSpec& source, const Position& array_center,
                           const ItdLookup& lookup, const EvalThresholds& thresholds,
                           bool focus, const std::string& method_label,
                           double c_s = kDefaultSpeedOfSound);

}  // namespace sweet

#endif  // SWEET_EVALUATION_HPP
