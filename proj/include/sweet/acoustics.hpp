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

#ifndef SWEET_ACOUSTICS_HPP
#define SWEET_ACOUSTICS_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace sweet {

using cplx = std::complex<double>;

inline constexpr double kReferencePressurePa = 20e-6;  // 0 dB SPL
inline constexpr double kDefaultSpeedOfSound = 343.0;  // m/s
inline constexpr double kDefaultEarDistance = 0.15;    // m
inline constexpr double kHeadExclusionRadius = 0.2;    // m

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Position& a, const Position& b);

struct SpeakerArray {
  std::vector<Position> positions;

  // Equispaced circular array in the z=0 plane, first speaker at angle 0.
  static SpeakerArray circle(double radius, int count);
  int size() const { return static_cast<int>(positions.size()); }
};

struct SourceSpec {
  Position position;
  double level_db_spl = 68.0;
  double f_star = 343.0;
  double sigma = 1.0;  // spectral localization, Hz
};

struct DriveCoefficients {
  std::vector<cplx> amplitudes;  // Pa*m per speaker

  static DriveCoefficients zeros(int n) { return {std::vector<cplx>(n, cplx{0.0, 0.0})}; }
  int size() const { return static_cast<int>(amplitudes.size()); }
};

struct ListenerPose {
  Position position;
  double facing = 0.0;  // radians, horizontal plane, 0 = +x
};

struct BinauralSample {
  cplx left{0.0, 0.0};
  cplx right{0.0, 0.0};
};

// Source gain magnitude |c0| such that the free-field magnitude at 1 m
// equals level_db_spl re 20 uPa. Units Pa*m, phase 0.
double source_gain(double level_db_spl);

// Free-field monopole, e^{-2 pi i f r / c} / (4 pi r) times gain.
cplx monopole_pressure(double f, const Position& src, cplx gain, const Position& at,
                       double c_s = kDefaultSpeedOfSound);

cplx synthesize_field(const DriveCoefficients& coeffs, const SpeakerArray& array, double f,
                      const Position& at, double c_s = kDefaultSpeedOfSound);

// Gaussian spectrum a * exp(-(f - f_star)^2 / (2 sigma^2)).
cplx pseudo_sinusoid_spectrum(cplx a, double f_star, double sigma, double f);

class HrtfProvider {
 public:
  virtual ~HrtfProvider() = default;
  // (H_left, H_right) for a unit-gain emitter.
  virtual std::pair<cplx, cplx> ear_transfer(double f, const Position& emitter,
                                             const ListenerPose& pose) const = 0;
};

// Two ideal point receivers at +-(ear_distance/2) perpendicular to the facing
// direction. No head shadowing.
class FreeFieldTwoEar : public HrtfProvider {
 public:
  explicit FreeFieldTwoEar(double ear_distance = kDefaultEarDistance,
                           double c_s = kDefaultSpeedOfSound,
                           double exclusion_radius = kHeadExclusionRadius)
      : ear_distance_(ear_distance), c_s_(c_s), exclusion_radius_(exclusion_radius) {}

  std::pair<cplx, cplx> ear_transfer(double f, const Position& emitter,
                                     const ListenerPose& pose) const override;

  double ear_distance() const { return ear_distance_; }

 private:
  double ear_distance_;
  double c_s_;
  double exclusion_radius_;
};

// (base_radius/d) * hrir(t - (d - base_radius)/c_s), fractional-sample delay
// by linear interpolation.
std::vector<double> hrir_radial_extrapolate(const std::vector<double>& hrir, double base_radius,
                                            double d, double sample_rate,
                                            double c_s = kDefaultSpeedOfSound);

// Measured HRIRs from a CSV manifest with columns
//   azimuth_deg, channel, sample_0..sample_{N-1}, sample_rate_hz, radius_m
// channel is L or R; azimuths are relative to the facing direction, positive
// to the listener's left. Transfer values are the DFT of the radially
// extrapolated impulse response at the bin nearest f.
class HrirDataset : public HrtfProvider {
 public:
  struct Entry {
    double azimuth_deg = 0.0;
    std::vector<double> left;
    std::vector<double> right;
  };

  static HrirDataset load_csv(const std::string& path, double c_s = kDefaultSpeedOfSound);
  static HrirDataset from_entries(std::vector<Entry> entries, double sample_rate, double radius,
                                  double c_s = kDefaultSpeedOfSound);

  std::pair<cplx, cplx> ear_transfer(double f, const Position& emitter,
                                     const ListenerPose& pose) const override;

  double sample_rate() const { return sample_rate_; }
  double radius() const { return radius_; }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  HrirDataset() = default;
  std::vector<Entry> entries_;  // sorted by azimuth
  double sample_rate_ = 44100.0;
  double radius_ = 3.0;
  double c_s_ = kDefaultSpeedOfSound;
  double exclusion_radius_ = kHeadExclusionRadius;
};

BinauralSample binaural_pressure(const DriveCoefficients& coeffs, const SpeakerArray& array,
                                 const HrtfProvider& provider, double f, const ListenerPose& pose);

// Target ear signals c0 * H0^s(f_star, pose), phase-0 gain from source_gain.
BinauralSample target_binaural(const SourceSpec& source, const HrtfProvider& provider,
                               const ListenerPose& pose);

}  // namespace sweet

#endif  // SWEET_ACOUSTICS_HPP
