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

#include "sweet/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sweet {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

SpeakerArray SpeakerArray::circle(double radius, int count) {
  if (count < 1) throw std::invalid_argument("SpeakerArray::circle: count must be >= 1");
  SpeakerArray array;
  array.positions.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double a = 2.0 * kPi * k / count;
    array.positions.push_back({radius * std::cos(a), radius * std::sin(a), 0.0});
  }
  return array;
}

double source_gain(double level_db_spl) {
  return 4.0 * kPi * 1.0 * kReferencePressurePa * std::pow(10.0, level_db_spl / 20.0);
}

cplx monopole_pressure(double f, const Position& src, cplx gain, const Position& at, double c_s) {
  if (f < 0.0) throw std::invalid_argument("monopole_pressure: negative frequency");
  const double r = distance(at, src);
  if (r <= 0.0) throw std::domain_error("monopole_pressure: evaluation point coincides with source");
  return gain * std::polar(1.0 / (4.0 * kPi * r), -2.0 * kPi * f * r / c_s);
}

cplx synthesize_field(const DriveCoefficients& coeffs, const SpeakerArray& array, double f,
                      const Position& at, double c_s) {
  if (coeffs.size() != array.size())
    throw std::invalid_argument("synthesize_field: coefficient/speaker count mismatch");
  cplx acc{0.0, 0.0};
  for (int k = 0; k < array.size(); ++k)
    acc += monopole_pressure(f, array.positions[k], coeffs.amplitudes[k], at, c_s);
  return acc;
}

cplx pseudo_sinusoid_spectrum(cplx a, double f_star, double sigma, double f) {
  if (sigma <= 0.0) throw std::invalid_argument("pseudo_sinusoid_spectrum: sigma must be > 0");
  const double d = f - f_star;
  return a * std::exp(-d * d / (2.0 * sigma * sigma));
}

std::pair<cplx, cplx> FreeFieldTwoEar::ear_transfer(double f, const Position& emitter,
                                                    const ListenerPose& pose) const {
  if (distance(emitter, pose.position) < exclusion_radius_)
    throw std::domain_error("FreeFieldTwoEar: emitter inside head exclusion ball");
  // Left ear sits at +90 degrees (counterclockwise) from the facing direction.
  const double lx = -std::sin(pose.facing), ly = std::cos(pose.facing);
  const double h = ear_distance_ / 2.0;
  const Position left{pose.position.x + h * lx, pose.position.y + h * ly, pose.position.z};
  const Position right{pose.position.x - h * lx, pose.position.y - h * ly, pose.position.z};
  return {monopole_pressure(f, emitter, cplx{1.0, 0.0}, left, c_s_),
          monopole_pressure(f, emitter, cplx{1.0, 0.0}, right, c_s_)};
}

std::vector<double> hrir_radial_extrapolate(const std::vector<double>& hrir, double base_radius,
                                            double d, double sample_rate, double c_s) {
  if (d <= 0.0) throw std::invalid_argument("hrir_radial_extrapolate: d must be > 0");
  const double scale = base_radius / d;
  const double delay = (d - base_radius) / c_s * sample_rate;  // samples, can be negative
  const int n = static_cast<int>(hrir.size());
  std::vector<double> out(n, 0.0);
  for (int t = 0; t < n; ++t) {
    const double s = t - delay;
    const int i0 = static_cast<int>(std::floor(s));
    const double frac = s - i0;
    double v = 0.0;
    if (i0 >= 0 && i0 < n) v += (1.0 - frac) * hrir[i0];
    if (i0 + 1 >= 0 && i0 + 1 < n) v += frac * hrir[i0 + 1];
    out[t] = scale * v;
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    // trim whitespace
    const auto b = tok.find_first_not_of(" \t\r");
    const auto e = tok.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : tok.substr(b, e - b + 1));
  }
  return out;
}

cplx dft_bin(const std::vector<double>& h, int bin) {
  const int n = static_cast<int>(h.size());
  cplx acc{0.0, 0.0};
  for (int t = 0; t < n; ++t)
    acc += h[t] * std::polar(1.0, -2.0 * kPi * bin * t / static_cast<double>(n));
  return acc;
}

}  // namespace

HrirDataset HrirDataset::load_csv(const std::string& path, double c_s) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("HrirDataset: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("HrirDataset: empty manifest " + path);
  const auto header = split_csv_line(line);
  int az_col = -1, ch_col = -1, sr_col = -1, rad_col = -1;
  std::vector<int> sample_cols;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    const std::string& name = header[i];
    if (name == "azimuth_deg") az_col = i;
    else if (name == "channel") ch_col = i;
    else if (name == "sample_rate_hz") sr_col = i;
    else if (name == "radius_m") rad_col = i;
    else if (name.rfind("sample_", 0) == 0) sample_cols.push_back(i);
  }
  if (az_col < 0 || ch_col < 0 || sr_col < 0 || rad_col < 0 || sample_cols.empty())
    throw std::runtime_error("HrirDataset: manifest header missing required columns in " + path);

  HrirDataset ds;
  ds.c_s_ = c_s;
  bool meta_set = false;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto row = split_csv_line(line);
    if (static_cast<int>(row.size()) < static_cast<int>(header.size()))
      throw std::runtime_error("HrirDataset: short row at line " + std::to_string(line_no));
    const double az = std::stod(row[az_col]);
    const std::string& ch = row[ch_col];
    std::vector<double> samples(sample_cols.size());
    for (size_t i = 0; i < sample_cols.size(); ++i) samples[i] = std::stod(row[sample_cols[i]]);
    const double sr = std::stod(row[sr_col]);
    const double rad = std::stod(row[rad_col]);
    if (!meta_set) {
      ds.sample_rate_ = sr;
      ds.radius_ = rad;
      meta_set = true;
    }
    auto it = std::find_if(ds.entries_.begin(), ds.entries_.end(),
                           [az](const Entry& e) { return e.azimuth_deg == az; });
    if (it == ds.entries_.end()) {
      ds.entries_.push_back(Entry{az, {}, {}});
      it = std::prev(ds.entries_.end());
    }
    if (ch == "L" || ch == "left") it->left = std::move(samples);
    else if (ch == "R" || ch == "right") it->right = std::move(samples);
    else throw std::runtime_error("HrirDataset: unknown channel '" + ch + "' at line " +
                                  std::to_string(line_no));
  }
  for (const auto& e : ds.entries_)
    if (e.left.empty() || e.right.empty())
      throw std::runtime_error("HrirDataset: incomplete channel pair in " + path);
  std::sort(ds.entries_.begin(), ds.entries_.end(),
            [](const Entry& a, const Entry& b) { return a.azimuth_deg < b.azimuth_deg; });
  if (ds.entries_.empty()) throw std::runtime_error("HrirDataset: no entries in " + path);
  return ds;
}

HrirDataset HrirDataset::from_entries(std::vector<Entry> entries, double sample_rate, double radius,
                                      double c_s) {
  if (entries.empty()) throw std::invalid_argument("HrirDataset: no entries");
  HrirDataset ds;
  ds.entries_ = std::move(entries);
  std::sort(ds.entries_.begin(), ds.entries_.end(),
            [](const Entry& a, const Entry& b) { return a.azimuth_deg < b.azimuth_deg; });
  ds.sample_rate_ = sample_rate;
  ds.radius_ = radius;
  ds.c_s_ = c_s;
  return ds;
}

std::pair<cplx, cplx> HrirDataset::ear_transfer(double f, const Position& emitter,
                                                const ListenerPose& pose) const {
  const double d = distance(emitter, pose.position);
  if (d < exclusion_radius_)
    throw std::domain_error("HrirDataset: emitter inside head exclusion ball");
  double az = std::atan2(emitter.y - pose.position.y, emitter.x - pose.position.x) - pose.facing;
  while (az > kPi) az -= 2.0 * kPi;
  while (az <= -kPi) az += 2.0 * kPi;
  const double az_deg = az * 180.0 / kPi;
  const Entry* best = &entries_.front();
  for (const auto& e : entries_)
    if (std::abs(e.azimuth_deg - az_deg) < std::abs(best->azimuth_deg - az_deg)) best = &e;
  const auto left = hrir_radial_extrapolate(best->left, radius_, d, sample_rate_, c_s_);
  const auto right = hrir_radial_extrapolate(best->right, radius_, d, sample_rate_, c_s_);
  const int n = static_cast<int>(left.size());
  int bin = static_cast<int>(std::lround(f / sample_rate_ * n));
  bin = std::clamp(bin, 0, n - 1);
  return {dft_bin(left, bin), dft_bin(right, bin)};
}

BinauralSample binaural_pressure(const DriveCoefficients& coeffs, const SpeakerArray& array,
                                 const HrtfProvider& provider, double f, const ListenerPose& pose) {
  if (coeffs.size() != array.size())
    throw std::invalid_argument("binaural_pressure: coefficient/speaker count mismatch");
  BinauralSample s;
  for (int k = 0; k < array.size(); ++k) {
    const auto [hl, hr] = provider.ear_transfer(f, array.positions[k], pose);
    s.left += coeffs.amplitudes[k] * hl;
    s.right += coeffs.amplitudes[k] * hr;
  }
  return s;
}

BinauralSample target_binaural(const SourceSpec& source, const HrtfProvider& provider,
                               const ListenerPose& pose) {
  const cplx gain{source_gain(source.level_db_spl), 0.0};
  const auto [hl, hr] = provider.ear_transfer(source.f_star, source.position, pose);
  return BinauralSample{gain * hl, gain * hr};
}

}  // namespace sweet
