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

#include "sweet/problem.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sweet {

BinauralProblem BinauralProblem::build(const SpeakerArray& array, const SourceSpec& source,
                                       const Grid& grid, const HrtfProvider& provider,
                                       const DirectionSet& directions,
                                       const VanDeParParams& params,
                                       const LoudnessModel& loudness) {
  BinauralProblem p;
  p.grid_ = grid;
  p.n_speakers_ = array.size();
  p.f_star_ = source.f_star;
  p.inv_eta_p_ = 1.0 / loudness.eta_p(source.f_star);
  p.source_gain_mag_ = source_gain(source.level_db_spl);
  p.terms_.resize(grid.size());
  p.valid_.assign(grid.size(), 1);

  for (int l = 0; l < grid.size(); ++l) {
    const Position& z = grid.atoms[l];
    try {
      std::vector<ProblemTerm> atom_terms;
      for (double theta : directions.directions(z)) {
        const ListenerPose pose{z, theta};
        ProblemTerm term;
        term.h_left.resize(array.size());
        term.h_right.resize(array.size());
        for (int k = 0; k < array.size(); ++k) {
          const auto [hl, hr] = provider.ear_transfer(source.f_star, array.positions[k], pose);
          term.h_left[k] = hl;
          term.h_right[k] = hr;
        }
        const BinauralSample u0 = target_binaural(source, provider, pose);
        term.u0_left = u0.left;
        term.u0_right = u0.right;
        term.kd_left = detectability_gain(std::norm(u0.left), source.f_star, params);
        term.kd_right = detectability_gain(std::norm(u0.right), source.f_star, params);
        atom_terms.push_back(std::move(term));
      }
      p.terms_[l] = std::move(atom_terms);
    } catch (const std::exception&) {
      p.valid_[l] = 0;
      p.grid_.weights[l] = 0.0;
      p.terms_[l].clear();
      ++p.invalid_count_;
    }
  }
  p.total_weight_ = p.grid_.total_weight();
  if (p.total_weight_ <= 0.0)
    throw std::runtime_error("BinauralProblem: no valid atom carries weight");
  return p;
}

BinauralSample BinauralProblem::reproduce(const DriveCoefficients& coeffs, int atom,
                                          int dir) const {
  if (!valid_[atom]) throw std::domain_error("BinauralProblem: invalid atom");
  const ProblemTerm& t = terms_[atom][dir];
  BinauralSample s;
  for (int k = 0; k < n_speakers_; ++k) {
    s.left += coeffs.amplitudes[k] * t.h_left[k];
    s.right += coeffs.amplitudes[k] * t.h_right[k];
  }
  return s;
}

BinauralSample BinauralProblem::target(int atom, int dir) const {
  if (!valid_[atom]) throw std::domain_error("BinauralProblem: invalid atom");
  const ProblemTerm& t = terms_[atom][dir];
  return BinauralSample{t.u0_left, t.u0_right};
}

std::vector<double> BinauralProblem::t_d(const DriveCoefficients& coeffs) const {
  std::vector<double> td(n_atoms(), -1.0);
  for (int l = 0; l < n_atoms(); ++l) {
    if (!valid_[l]) continue;
    double worst = -std::numeric_limits<double>::infinity();
    for (const ProblemTerm& t : terms_[l]) {
      cplx el = -t.u0_left, er = -t.u0_right;
      for (int k = 0; k < n_speakers_; ++k) {
        el += coeffs.amplitudes[k] * t.h_left[k];
        er += coeffs.amplitudes[k] * t.h_right[k];
      }
      worst = std::max(worst, std::max(-1.0 + t.kd_left * std::norm(el),
                                       -1.0 + t.kd_right * std::norm(er)));
    }
    td[l] = worst;
  }
  return td;
}

std::vector<double> BinauralProblem::t_l(const DriveCoefficients& coeffs) const {
  std::vector<double> tl(n_atoms(), -1.0);
  for (int l = 0; l < n_atoms(); ++l) {
    if (!valid_[l]) continue;
    double worst = -std::numeric_limits<double>::infinity();
    for (const ProblemTerm& t : terms_[l]) {
      cplx ul{0.0, 0.0}, ur{0.0, 0.0};
      for (int k = 0; k < n_speakers_; ++k) {
        ul += coeffs.amplitudes[k] * t.h_left[k];
        ur += coeffs.amplitudes[k] * t.h_right[k];
      }
      worst = std::max(worst, -1.0 + std::max(std::norm(ul), std::norm(ur)) * inv_eta_p_);
    }
    tl[l] = worst;
  }
  return tl;
}

ThresholdField BinauralProblem::thresholds(const DriveCoefficients& coeffs) const {
  return ThresholdField{t_d(coeffs), t_l(coeffs)};
}

}  // namespace sweet
