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

#ifndef SWEET_SOLVER_HPP
#define SWEET_SOLVER_HPP

#include <utility>
#include <vector>

#include "sweet/layer_cake.hpp"
#include "sweet/problem.hpp"

namespace sweet {

struct SolverSettings {
  double gamma_max = 0.0;    // 0: resolved to 50x the source gain magnitude
  double penalty_rho = 100.0;
  double step_c = 0.0;       // 0: resolved to 0.1 * gamma_max
  int max_inner_iters = 5000;
  double tol_rel_obj = 1e-5;
  int n_eps = 5;
  double percentile = 99.0;
  double epsilon_min = 1e-3;
  int n_max = 10;            // greedy outer iterations per epsilon stage
  int log_every = 100;       // history decimation for inner iterations
};

// Fills the zero-valued defaults from the problem scale.
SolverSettings resolve_settings(SolverSettings s, double source_gain_mag);

struct ActiveSet {
  std::vector<char> mask;

  static ActiveSet full(int n) { return {std::vector<char>(n, 1)}; }
  int count() const;
};

struct HistoryRow {
  int stage = 0;
  int outer = 0;
  int inner = 0;
  double objective = 0.0;
  double feasibility = 0.0;
  int active_count = 0;
};

struct InnerResult {
  DriveCoefficients coeffs;
  double objective = 0.0;    // sum of active w (t_d)_+ at the returned iterate
  double feasibility = 0.0;  // max(0, max t_l) at the returned iterate
  int iterations = 0;
  bool converged = false;
};

struct SweetReport {
  DriveCoefficients coefficients;
  std::vector<HistoryRow> history;
  double sweet_fraction = 0.0;
  std::vector<int> active_set_sizes;  // one per (stage, outer) step
  double feasibility = 0.0;
  bool nesting_exact = true;
};

// Positive-part objective restricted to the active set (no penalty term).
double inner_objective(const BinauralProblem& problem, const ActiveSet& active,
                       const DriveCoefficients& coeffs);

// Clamp coefficient magnitudes to gamma_max and uniformly down-scale until
// the discomfort constraint holds.
DriveCoefficients project_feasible(const BinauralProblem& problem, DriveCoefficients coeffs,
                                   double gamma_max);

// Projected subgradient descent on the exact-penalty objective
//   F(a) = sum_{active} w (t_d)_+ + rho sum (t_l)_+
// with per-coefficient magnitude projection, diminishing step lengths
// step_c/sqrt(t), best-iterate tracking, and final feasibility restoration by
// uniform down-scaling. Deterministic.
InnerResult solve_inner_convex(const BinauralProblem& problem, const ActiveSet& active,
                               const DriveCoefficients& warm_start, const SolverSettings& settings,
                               std::vector<HistoryRow>* history = nullptr, int stage = 0,
                               int outer = 0);

// One convex majorization step of the concave part linearized at v0: solves
// the inner problem on {v0 <= eps} and returns the updated coefficients
// together with the updated per-atom surrogate values.
std::pair<DriveCoefficients, std::vector<double>> cccp_surrogate_step(
    const std::vector<double>& v0, const BinauralProblem& problem, const LayerCake& cake,
    const SolverSettings& settings, const DriveCoefficients& warm_start);

// Greedy active-set loop: per epsilon stage, repeatedly intersect the active
// set with {t_d <= eps} and re-solve the inner problem. Warm start defaults
// to zero coefficients.
SweetReport sweet_relu(const BinauralProblem& problem, const SolverSettings& settings,
                       const DriveCoefficients* warm_start = nullptr);

}  // namespace sweet

#endif  // SWEET_SOLVER_HPP
