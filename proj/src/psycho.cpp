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

#include "sweet/psycho.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sweet {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double terhardt_eta(double f, const VanDeParParams& params) {
  if (f <= 0.0) throw std::invalid_argument("terhardt_eta: f must be > 0");
  const double d = f - 3300.0;
  const double log10_eta = params.c_eta0 - params.c_eta1 * std::pow(f, -0.8) -
                           params.c_eta2 * d * d + params.c_eta3 * f * f * f * f;
  return std::pow(10.0, log10_eta);
}

double erb(double f, const VanDeParParams& params) {
  if (f <= 0.0) throw std::invalid_argument("erb: f must be > 0");
  const double g = 1.0 + 4.37e-3 * f;
  return params.erb_formula == ErbFormula::as_printed ? 24.7 / g : 24.7 * g;
}

double erbs(double f, const VanDeParParams& params) {
  if (f <= 0.0) throw std::invalid_argument("erbs: f must be > 0");
  const double g = 1.0 + 4.37e-3 * f;
  return 21.4 * (params.erbs_natural_log ? std::log(g) : std::log10(g));
}

std::vector<double> erb_centers(const VanDeParParams& params) {
  if (params.n_bands < 1) throw std::invalid_argument("erb_centers: n_bands must be >= 1");
  if (params.n_bands == 1) return {params.f_first};
  const double e0 = erbs(params.f_first, params);
  const double e1 = erbs(params.f_last, params);
  std::vector<double> centers(params.n_bands);
  for (int j = 0; j < params.n_bands; ++j) {
    const double e = e0 + (e1 - e0) * j / (params.n_bands - 1);
    const double g = params.erbs_natural_log ? std::exp(e / 21.4) : std::pow(10.0, e / 21.4);
    centers[j] = (g - 1.0) / 4.37e-3;
  }
  return centers;
}

double gammatone_weight(double f, double f_j, const VanDeParParams& params) {
  const double x = 945.0 * kPi * (f - f_j) / (48.0 * erb(f_j, params));
  const double q = 1.0 + x * x;
  return 1.0 / (q * q);
}

double band_weight(double f, double f_j, const VanDeParParams& params) {
  const double v = terhardt_eta(f, params) * gammatone_weight(f, f_j, params);
  return v * v;
}

double detectability_gain(double u0_sq, double f_star, const VanDeParParams& params) {
  double k = 0.0;
  for (double f_j : erb_centers(params)) {
    const double w = band_weight(f_star, f_j, params);
    k += w / (params.c_a + w * u0_sq);
  }
  return params.c_psi_prime * k;
}

double monaural_dissimilarity(cplx u, cplx u0, double f_star, const VanDeParParams& params) {
  return -1.0 + detectability_gain(std::norm(u0), f_star, params) * std::norm(u - u0);
}

double binaural_dissimilarity(const BinauralSample& s, const BinauralSample& s0, double f_star,
                              const VanDeParParams& params) {
  return std::max(monaural_dissimilarity(s.left, s0.left, f_star, params),
                  monaural_dissimilarity(s.right, s0.right, f_star, params));
}

LoudnessModel LoudnessModel::flat_default() {
  std::vector<double> freq(8), level(8, 100.0);
  const double lo = std::log10(20.0), hi = std::log10(16000.0);
  for (int i = 0; i < 8; ++i) freq[i] = std::pow(10.0, lo + (hi - lo) * i / 7.0);
  return from_knots(std::move(freq), std::move(level));
}

LoudnessModel LoudnessModel::from_knots(std::vector<double> freq_hz, std::vector<double> ldl_db) {
  LoudnessModel m;
  m.freq_ = std::move(freq_hz);
  m.level_ = std::move(ldl_db);
  m.spline_ = NaturalCubicSpline(m.freq_, m.level_);
  return m;
}

LoudnessModel LoudnessModel::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("LoudnessModel: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("LoudnessModel: empty file " + path);
  std::vector<double> freq, level;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      throw std::runtime_error("LoudnessModel: bad row at line " + std::to_string(line_no));
    freq.push_back(std::stod(a));
    level.push_back(std::stod(b));
  }
  return from_knots(std::move(freq), std::move(level));
}

double LoudnessModel::eta_p(double f) const {
  const double p = kReferencePressurePa * std::pow(10.0, ldl_db(f) / 20.0);
  return p * p;
}

double loudness_discomfort(cplx u, double f_star, const LoudnessModel& model) {
  return -1.0 + model.c_pi_prime() * std::norm(u) / model.eta_p(f_star);
}

DirectionSet DirectionSet::look_at_source(const Position& src) {
  DirectionSet d;
  d.look_at_source_ = true;
  d.src_ = src;
  return d;
}

DirectionSet DirectionSet::fixed(std::vector<double> angles) {
  if (angles.empty()) throw std::invalid_argument("DirectionSet::fixed: empty direction list");
  DirectionSet d;
  d.look_at_source_ = false;
  d.angles_ = std::move(angles);
  return d;
}

std::vector<double> DirectionSet::directions(const Position& at) const {
  if (!look_at_source_) return angles_;
  return {std::atan2(src_.y - at.y, src_.x - at.x)};
}

ThresholdField threshold_maps(const DriveCoefficients& coeffs, const SpeakerArray& array,
                              const SourceSpec& source, const HrtfProvider& provider,
                              const Grid& grid, const DirectionSet& directions,
                              const VanDeParParams& params, const LoudnessModel& loudness) {
  ThresholdField field;
  field.t_d.reserve(grid.size());
  field.t_l.reserve(grid.size());
  for (const auto& z : grid.atoms) {
    double td = -std::numeric_limits<double>::infinity();
    double tl = -std::numeric_limits<double>::infinity();
    for (double theta : directions.directions(z)) {
      const ListenerPose pose{z, theta};
      const BinauralSample u = binaural_pressure(coeffs, array, provider, source.f_star, pose);
      const BinauralSample u0 = target_binaural(source, provider, pose);
      td = std::max(td, binaural_dissimilarity(u, u0, source.f_star, params));
      tl = std::max(tl, std::max(loudness_discomfort(u.left, source.f_star, loudness),
                                 loudness_discomfort(u.right, source.f_star, loudness)));
    }
    field.t_d.push_back(td);
    field.t_l.push_back(tl);
  }
  return field;
}

}  // namespace sweet
