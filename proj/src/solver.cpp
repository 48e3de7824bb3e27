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

#include "sweet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sweet {

SolverSettings resolve_settings(SolverSettings s, double source_gain_mag) {
  if (s.gamma_max <= 0.0) s.gamma_max = 50.0 * source_gain_mag;
  if (s.step_c <= 0.0) s.step_c = 0.1 * s.gamma_max;
  return s;
}

int ActiveSet::count() const {
  return static_cast<int>(std::count(mask.begin(), mask.end(), char(1)));
}

namespace {

struct Eval {
  double penalized = 0.0;    // objective + rho * discomfort excess
  double objective = 0.0;    // sum of active w (t_d)_+
  double max_tl = -1.0;
  std::vector<cplx> grad;
};

// One pass: exact-penalty value and a subgradient. The subgradient picks the
// first maximizing (direction, ear) pair; the positive-part kink at exactly 0
// contributes nothing.
Eval evaluate(const BinauralProblem& p, const ActiveSet& active, const std::vector<cplx>& a,
              double rho, bool with_grad) {
  const int ns = p.n_speakers();
  Eval ev;
  if (with_grad) ev.grad.assign(ns, cplx{0.0, 0.0});
  for (int l = 0; l < p.n_atoms(); ++l) {
    if (!p.valid()[l]) continue;
    const double w = p.grid().weights[l];
    double td = -std::numeric_limits<double>::infinity();
    double tl = -std::numeric_limits<double>::infinity();
    const ProblemTerm* td_term = nullptr;
    const ProblemTerm* tl_term = nullptr;
    bool td_left = true, tl_left = true;
    cplx td_err, tl_u;
    for (const ProblemTerm& t : p.terms()[l]) {
      cplx ul{0.0, 0.0}, ur{0.0, 0.0};
      for (int k = 0; k < ns; ++k) {
        ul += a[k] * t.h_left[k];
        ur += a[k] * t.h_right[k];
      }
      const cplx el = ul - t.u0_left, er = ur - t.u0_right;
      const double dl = -1.0 + t.kd_left * std::norm(el);
      const double dr = -1.0 + t.kd_right * std::norm(er);
      if (dl > td) { td = dl; td_term = &t; td_left = true; td_err = el; }
      if (dr > td) { td = dr; td_term = &t; td_left = false; td_err = er; }
      const double ll = -1.0 + std::norm(ul) * p.inv_eta_p();
      const double lr = -1.0 + std::norm(ur) * p.inv_eta_p();
      if (ll > tl) { tl = ll; tl_term = &t; tl_left = true; tl_u = ul; }
      if (lr > tl) { tl = lr; tl_term = &t; tl_left = false; tl_u = ur; }
    }
    ev.max_tl = std::max(ev.max_tl, tl);
    if (active.mask[l] && td > 0.0) {
      ev.objective += w * td;
      if (with_grad && td_term) {
        const double kd = td_left ? td_term->kd_left : td_term->kd_right;
        const std::vector<cplx>& h = td_left ? td_term->h_left : td_term->h_right;
        for (int k = 0; k < ns; ++k) ev.grad[k] += w * 2.0 * kd * std::conj(h[k]) * td_err;
      }
    }
    if (tl > 0.0) {
      ev.penalized += rho * tl;
      if (with_grad && tl_term) {
        const std::vector<cplx>& h = tl_left ? tl_term->h_left : tl_term->h_right;
        for (int k = 0; k < ns; ++k)
          ev.grad[k] += rho * 2.0 * p.inv_eta_p() * std::conj(h[k]) * tl_u;
      }
    }
  }
  ev.penalized += ev.objective;
  return ev;
}

void clamp_magnitudes(std::vector<cplx>& a, double gamma_max) {
  for (cplx& c : a) {
    const double m = std::abs(c);
    if (m > gamma_max) c *= gamma_max / m;
  }
}

}  // namespace

double inner_objective(const BinauralProblem& problem, const ActiveSet& active,
                       const DriveCoefficients& coeffs) {
  const auto td = problem.t_d(coeffs);
  double obj = 0.0;
  for (int l = 0; l < problem.n_atoms(); ++l)
    if (active.mask[l] && td[l] > 0.0) obj += problem.grid().weights[l] * td[l];
  return obj;
}

DriveCoefficients project_feasible(const BinauralProblem& problem, DriveCoefficients coeffs,
                                   double gamma_max) {
  clamp_magnitudes(coeffs.amplitudes, gamma_max);
  const auto tl = problem.t_l(coeffs);
  const double worst = *std::max_element(tl.begin(), tl.end());
  if (worst > 0.0) {
    const double s = 1.0 / std::sqrt(1.0 + worst);
    for (cplx& c : coeffs.amplitudes) c *= s;
  }
  return coeffs;
}

InnerResult solve_inner_convex(const BinauralProblem& problem, const ActiveSet& active,
                               const DriveCoefficients& warm_start, const SolverSettings& raw,
                               std::vector<HistoryRow>* history, int stage, int outer) {
  if (static_cast<int>(active.mask.size()) != problem.n_atoms())
    throw std::invalid_argument("solve_inner_convex: active set size mismatch");
  const SolverSettings settings = resolve_settings(raw, problem.source_gain_mag());
  const int active_count = active.count();

  std::vector<cplx> a = warm_start.amplitudes;
  if (static_cast<int>(a.size()) != problem.n_speakers())
    throw std::invalid_argument("solve_inner_convex: warm start size mismatch");
  clamp_magnitudes(a, settings.gamma_max);

  Eval ev = evaluate(problem, active, a, settings.penalty_rho, false);
  std::vector<cplx> best = a;
  double best_f = ev.penalized;
  double checkpoint = best_f;
  const int window = std::max(200, settings.max_inner_iters / 10);
  bool converged = best_f == 0.0;
  int iters = 0;

  for (int t = 1; t <= settings.max_inner_iters && !converged; ++t) {
    iters = t;
    ev = evaluate(problem, active, a, settings.penalty_rho, true);
    double gnorm_sq = 0.0;
    for (const cplx& g : ev.grad) gnorm_sq += std::norm(g);
    if (gnorm_sq == 0.0) {
      if (ev.penalized < best_f) { best_f = ev.penalized; best = a; }
      converged = true;
      break;
    }
    const double step = settings.step_c / std::sqrt(static_cast<double>(t));
    const double scale = step / std::sqrt(gnorm_sq);
    for (int k = 0; k < problem.n_speakers(); ++k) a[k] -= scale * ev.grad[k];
    clamp_magnitudes(a, settings.gamma_max);
    ev = evaluate(problem, active, a, settings.penalty_rho, false);
    if (ev.penalized < best_f) {
      best_f = ev.penalized;
      best = a;
      if (best_f == 0.0) { converged = true; }
    }
    if (history && settings.log_every > 0 && t % settings.log_every == 0)
      history->push_back({stage, outer, t, ev.objective, std::max(0.0, ev.max_tl), active_count});
    if (t % window == 0) {
      if (checkpoint - best_f <= settings.tol_rel_obj * std::max(std::abs(checkpoint), 1.0)) {
        converged = true;
        break;
      }
      checkpoint = best_f;
    }
  }

  DriveCoefficients out{std::move(best)};
  auto tl = problem.t_l(out);
  double worst = *std::max_element(tl.begin(), tl.end());
  if (worst > 1e-6) {
    const double s = 1.0 / std::sqrt(1.0 + worst);
    for (cplx& c : out.amplitudes) c *= s;
    tl = problem.t_l(out);
    worst = *std::max_element(tl.begin(), tl.end());
  }

  InnerResult res;
  res.objective = inner_objective(problem, active, out);
  res.feasibility = std::max(0.0, worst);
  res.iterations = iters;
  res.converged = converged || res.objective == 0.0;
  res.coeffs = std::move(out);
  return res;
}

std::pair<DriveCoefficients, std::vector<double>> cccp_surrogate_step(
    const std::vector<double>& v0, const BinauralProblem& problem, const LayerCake& cake,
    const SolverSettings& settings, const DriveCoefficients& warm_start) {
  if (static_cast<int>(v0.size()) != problem.n_atoms())
    throw std::invalid_argument("cccp_surrogate_step: v0 size mismatch");
  ActiveSet active;
  active.mask.resize(v0.size());
  for (size_t l = 0; l < v0.size(); ++l) active.mask[l] = v0[l] <= cake.epsilon;
  const InnerResult res = solve_inner_convex(problem, active, warm_start, settings);
  const auto td = problem.t_d(res.coeffs);
  std::vector<double> v(v0.size());
  for (size_t l = 0; l < v0.size(); ++l)
    v[l] = active.mask[l] ? td[l] : std::max(cake.epsilon, td[l]);
  return {res.coeffs, std::move(v)};
}

SweetReport sweet_relu(const BinauralProblem& problem, const SolverSettings& raw,
                       const DriveCoefficients* warm_start) {
  const SolverSettings settings = resolve_settings(raw, problem.source_gain_mag());
  SweetReport report;
  DriveCoefficients a = warm_start
                            ? project_feasible(problem, *warm_start, settings.gamma_max)
                            : DriveCoefficients::zeros(problem.n_speakers());

  auto td = problem.t_d(a);
  bool stop = false;
  for (int stage = 1; stage <= settings.n_eps && !stop; ++stage) {
    const double eps = epsilon_schedule(td, settings.percentile, settings.epsilon_min);
    ActiveSet mask = ActiveSet::full(problem.n_atoms());
    double prev_obj = std::numeric_limits<double>::infinity();
    for (int outer = 1; outer <= settings.n_max; ++outer) {
      ActiveSet next = mask;
      for (int l = 0; l < problem.n_atoms(); ++l)
        if (next.mask[l] && td[l] > eps) next.mask[l] = 0;
      for (int l = 0; l < problem.n_atoms(); ++l)
        if (next.mask[l] && !mask.mask[l]) report.nesting_exact = false;
      const int count = next.count();
      report.active_set_sizes.push_back(count);
      if (count == 0) {
        report.history.push_back({stage, outer, 0, 0.0, 0.0, 0});
        stop = true;
        break;
      }
      const InnerResult res =
          solve_inner_convex(problem, next, a, settings, &report.history, stage, outer);
      a = res.coeffs;
      td = problem.t_d(a);
      report.history.push_back(
          {stage, outer, res.iterations, res.objective, res.feasibility, count});
      mask = std::move(next);
      if (std::abs(prev_obj - res.objective) <=
          settings.tol_rel_obj * std::max(std::abs(prev_obj), 1.0))
        break;
      prev_obj = res.objective;
    }
  }

  const auto tl = problem.t_l(a);
  report.feasibility = std::max(0.0, *std::max_element(tl.begin(), tl.end()));
  report.sweet_fraction = sweet_spot_area(td, problem.grid()) / problem.total_weight();
  report.coefficients = std::move(a);
  return report;
}

}  // namespace sweet
