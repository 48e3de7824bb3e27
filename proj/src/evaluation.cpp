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

#include "sweet/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sweet {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

CueSample extract_cues(const BinauralSample& s, double f_star, IldConvention convention,
                       double c_s) {
  const double ml = std::abs(s.left), mr = std::abs(s.right);
  if (ml == 0.0 || mr == 0.0) throw std::domain_error("extract_cues: zero ear channel");
  CueSample cue;
  cue.ild = 20.0 * std::log10(mr / ml);
  if (convention == IldConvention::paper_verbatim) cue.ild /= c_s;
  cue.ipd = std::arg(s.left * std::conj(s.right));
  cue.itd = cue.ipd / (2.0 * kPi * f_star);
  return cue;
}

double unwrap_itd(const CueSample& cue, double f_star, double ild_gate_db) {
  const double itd = cue.itd;
  if (std::abs(cue.ild) <= ild_gate_db) return itd;
  // The level cue is in dB regardless of the extraction convention; the sign
  // is all that matters here. Positive ILD means right ear louder, so the
  // source is to the right and the time cue should be negative.
  const bool right_louder = cue.ild > 0.0;
  if (right_louder && itd > 0.0) return itd - 1.0 / f_star;
  if (!right_louder && itd < 0.0) return itd + 1.0 / f_star;
  return itd;
}

ItdLookup::ItdLookup(std::vector<double> azimuth_deg, std::vector<double> itd_seconds)
    : az_(std::move(azimuth_deg)), itd_(std::move(itd_seconds)) {
  if (az_.size() != itd_.size() || az_.size() < 2)
    throw std::invalid_argument("ItdLookup: need >= 2 matching samples");
  for (size_t i = 1; i < itd_.size(); ++i)
    if (itd_[i] <= itd_[i - 1])
      throw std::invalid_argument("ItdLookup: itd samples must be strictly increasing");
}

double ItdLookup::angle_for_itd(double itd) const {
  if (itd <= itd_.front()) return az_.front();
  if (itd >= itd_.back()) return az_.back();
  const auto it = std::upper_bound(itd_.begin(), itd_.end(), itd);
  const size_t i = it - itd_.begin();
  const double t = (itd - itd_[i - 1]) / (itd_[i] - itd_[i - 1]);
  return az_[i - 1] + t * (az_[i] - az_[i - 1]);
}

ItdLookup build_itd_lookup(const HrtfProvider& provider, double f_star, double radius,
                           int n_azimuths, double ild_gate_db, IldConvention convention,
                           double c_s) {
  if (n_azimuths < 3) throw std::invalid_argument("build_itd_lookup: need >= 3 azimuths");
  std::vector<double> az(n_azimuths), itd(n_azimuths);
  const ListenerPose pose{{0.0, 0.0, 0.0}, 0.0};
  for (int i = 0; i < n_azimuths; ++i) {
    az[i] = -90.0 + 180.0 * i / (n_azimuths - 1);
    const double rad = az[i] * kPi / 180.0;
    const Position emitter{radius * std::cos(rad), radius * std::sin(rad), 0.0};
    const auto [hl, hr] = provider.ear_transfer(f_star, emitter, pose);
    const CueSample cue = extract_cues({hl, hr}, f_star, convention, c_s);
    itd[i] = unwrap_itd(cue, f_star, ild_gate_db);
  }

  // Pool-adjacent-violators isotonic fit (weighted means of merged blocks).
  std::vector<double> val, wt;
  std::vector<int> len;
  for (int i = 0; i < n_azimuths; ++i) {
    val.push_back(itd[i]);
    wt.push_back(1.0);
    len.push_back(1);
    while (val.size() > 1 && val[val.size() - 2] >= val.back()) {
      const double w = wt[wt.size() - 2] + wt.back();
      val[val.size() - 2] =
          (val[val.size() - 2] * wt[wt.size() - 2] + val.back() * wt.back()) / w;
      wt[wt.size() - 2] = w;
      len[len.size() - 2] += len.back();
      val.pop_back();
      wt.pop_back();
      len.pop_back();
    }
  }
  std::vector<double> az_out, itd_out;
  int pos = 0;
  for (size_t b = 0; b < val.size(); ++b) {
    double mean_az = 0.0;
    for (int i = 0; i < len[b]; ++i) mean_az += az[pos + i];
    mean_az /= len[b];
    pos += len[b];
    az_out.push_back(mean_az);
    itd_out.push_back(val[b]);
  }
  if (az_out.size() < 2)
    throw std::runtime_error("build_itd_lookup: degenerate table, cue is not monotone");
  return ItdLookup(std::move(az_out), std::move(itd_out));
}

EvalReport evaluate_method(const DriveCoefficients& coeffs, const BinauralProblem& problem,
                           const SourceSpec& source, const Position& array_center,
                           const ItdLookup& lookup, const EvalThresholds& thresholds, bool focus,
                           const std::string& method_label, double c_s) {
  const int n = problem.n_atoms();
  EvalReport rep;
  rep.method = method_label;
  rep.az_err_deg.assign(n, kInf);
  rep.color_db.assign(n, kInf);
  rep.in_lss.assign(n, 0);
  rep.in_css.assign(n, 0);
  rep.in_sweet.assign(n, 0);
  rep.divergent.assign(n, 0);
  rep.valid.assign(n, 0);

  const auto td = problem.t_d(coeffs);
  const double f = source.f_star;
  double w_total = 0.0, w_lss = 0.0, w_css = 0.0, w_sweet = 0.0;
  double w_div = 0.0, w_lss_div = 0.0;

  for (int l = 0; l < n; ++l) {
    const Position& z = problem.grid().atoms[l];
    const double hx = source.position.x - array_center.x;
    const double hy = source.position.y - array_center.y;
    rep.divergent[l] =
        (z.x - source.position.x) * hx + (z.y - source.position.y) * hy >= 0.0;
    if (!problem.valid()[l]) continue;
    const BinauralSample u0 = problem.target(l, 0);
    if (std::abs(u0.left) == 0.0 || std::abs(u0.right) == 0.0) continue;
    rep.valid[l] = 1;
    const double w = problem.grid().weights[l];
    w_total += w;

    const BinauralSample u = problem.reproduce(coeffs, l, 0);
    const double az0 = lookup.angle_for_itd(
        unwrap_itd(extract_cues(u0, f, thresholds.convention, c_s), f, thresholds.ild_gate_db));
    double az_err = kInf, color = kInf;
    if (std::abs(u.left) > 0.0 && std::abs(u.right) > 0.0) {
      const double az = lookup.angle_for_itd(
          unwrap_itd(extract_cues(u, f, thresholds.convention, c_s), f, thresholds.ild_gate_db));
      az_err = std::abs(az - az0);
      color = std::max(std::abs(20.0 * std::log10(std::abs(u.left) / std::abs(u0.left))),
                       std::abs(20.0 * std::log10(std::abs(u.right) / std::abs(u0.right))));
    }
    rep.az_err_deg[l] = az_err;
    rep.color_db[l] = color;
    rep.in_lss[l] = az_err <= thresholds.lss_deg;
    rep.in_css[l] = color <= thresholds.css_db;
    rep.in_sweet[l] = td[l] <= 0.0;
    if (rep.in_lss[l]) w_lss += w;
    if (rep.in_css[l]) w_css += w;
    if (rep.in_sweet[l]) w_sweet += w;
    if (rep.divergent[l]) {
      w_div += w;
      if (rep.in_lss[l]) w_lss_div += w;
    }
  }

  rep.invalid_count = n - static_cast<int>(std::count(rep.valid.begin(), rep.valid.end(), 1));
  if (w_total <= 0.0) throw std::runtime_error("evaluate_method: no valid atoms");
  rep.lss_fraction = w_lss / w_total;
  rep.css_fraction = w_css / w_total;
  rep.sweet_fraction = w_sweet / w_total;
  rep.has_dh = focus;
  if (focus && w_div > 0.0) rep.lss_dh_fraction = w_lss_div / w_div;
  return rep;
}

}  // namespace sweet
