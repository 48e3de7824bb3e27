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

#ifndef SWEET_SCENARIO_HPP
#define SWEET_SCENARIO_HPP

#include <string>
#include <vector>

#include "sweet/acoustics.hpp"
#include "sweet/baselines.hpp"
#include "sweet/evaluation.hpp"
#include "sweet/psycho.hpp"
#include "sweet/solver.hpp"

namespace sweet {

// Single source of truth for a run. JSON-serializable; angles in the file are
// accepted in degrees where noted.
struct ScenarioConfig {
  // array
  double array_radius = 2.5;
  int n_speakers = 20;
  std::vector<Position> speaker_positions;  // overrides the circle when non-empty

  // region
  double region_radius = 2.4975;
  double grid_spacing = 0.25;
  double speaker_clearance = 0.1;

  SourceSpec source{{5.0, 0.0, 0.0}, 68.0, 343.0, 1.0};
  double c_s = kDefaultSpeedOfSound;

  // perceptual
  VanDeParParams vdp;
  std::string loudness_csv;  // empty: flat default table
  IldConvention ild_convention = IldConvention::conventional;

  SolverSettings solver;
  BaselineSettings baselines;

  // hrtf
  std::string hrtf_provider = "free_field";  // or "dataset"
  double ear_distance = kDefaultEarDistance;
  std::string hrir_path;

  // evaluation thresholds
  double lss_deg = 5.0;
  double css_db = 1.0;
  double ild_gate_db = 2.5;

  SpeakerArray make_array() const;
  bool is_focus() const;  // source inside the array circle
  void validate() const;  // throws with a field-path message

  static ScenarioConfig near_field_desk();
  static ScenarioConfig focus_source_desk();
};

std::string serialize_scenario(const ScenarioConfig& config);
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);
void save_scenario(const ScenarioConfig& config, const std::string& path);

}  // namespace sweet

#endif  // SWEET_SCENARIO_HPP
