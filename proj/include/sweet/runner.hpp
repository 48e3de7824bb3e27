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

#ifndef SWEET_RUNNER_HPP
#define SWEET_RUNNER_HPP

#include <memory>
#include <string>
#include <vector>

#include "sweet/scenario.hpp"

namespace sweet {

// Everything derived from a scenario config that is shared by all methods.
struct RunContext {
  ScenarioConfig config;
  SpeakerArray array;
  Position center;
  Grid grid;
  std::shared_ptr<HrtfProvider> provider;
  LoudnessModel loudness;
  BinauralProblem problem;
  ItdLookup lookup;
  bool focus = false;
};

RunContext build_context(const ScenarioConfig& config);

struct RunArtifacts {
  std::string method;
  DriveCoefficients coeffs;
  ThresholdField thresholds;
  EvalReport report;
  std::vector<HistoryRow> history;  // empty for non-iterative methods
};

// Methods: sweet-relu, pmm, wfs, nfc-hoa. sweet-relu warm starts from the
// feasibility-projected pressure-matching solution. Unknown names throw.
RunArtifacts run_method(const RunContext& ctx, const std::string& method);

// coefficients.json, field.csv, thresholds.csv, eval_report.json,
// eval_detail.csv, history.csv inside out_dir (created if missing).
void write_artifacts(const RunContext& ctx, const RunArtifacts& artifacts,
                     const std::string& out_dir);

void run_and_write(const ScenarioConfig& config, const std::string& method,
                   const std::string& out_dir);

// One row per method: comparison.csv and comparison.json inside out_dir.
void compare_methods(const ScenarioConfig& config, const std::vector<std::string>& methods,
                     const std::string& out_dir);

// Shortest round-trip decimal form (%.17g).
std::string fmt_double(double v);

}  // namespace sweet

#endif  // SWEET_RUNNER_HPP
