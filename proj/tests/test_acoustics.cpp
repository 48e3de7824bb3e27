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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"

using namespace sweet;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("monopole pressure closed-form values") {
  const Position src{0, 0, 0};
  const cplx one{1.0, 0.0};

  const cplx full_cycle = monopole_pressure(343.0, src, one, {1, 0, 0}, 343.0);
  CHECK(full_cycle.real() == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-12));
  CHECK(full_cycle.imag() == doctest::Approx(0.0).epsilon(1e-12));

  const cplx half_cycle = monopole_pressure(343.0, src, one, {0.5, 0, 0}, 343.0);
  CHECK(half_cycle.real() == doctest::Approx(-1.0 / (2.0 * kPi)).epsilon(1e-12));
  CHECK(std::abs(half_cycle.imag()) < 1e-12);

  const cplx static_case = monopole_pressure(0.0, src, one, {2, 0, 0}, 343.0);
  CHECK(static_case.real() == doctest::Approx(1.0 / (8.0 * kPi)).epsilon(1e-12));

  CHECK_THROWS(monopole_pressure(343.0, src, one, src, 343.0));
  CHECK_THROWS(monopole_pressure(-1.0, src, one, {1, 0, 0}, 343.0));
}

TEST_CASE("monopole magnitude decays as 1/r") {
  const Position src{0.3, -0.2, 0.1};
  for (double r : {0.5, 1.0, 2.0, 7.5}) {
    const cplx u = monopole_pressure(500.0, src, cplx{2.0, 1.0}, {src.x + r, src.y, src.z});
    CHECK(std::abs(u) * r == doctest::Approx(std::abs(cplx{2.0, 1.0}) / (4.0 * kPi)));
  }
}

TEST_CASE("monopole kernel satisfies the Helmholtz equation on a stencil") {
  const double f = 343.0, c = 343.0, h = 1e-3;
  const double k = 2.0 * kPi * f / c;
  const Position src{0, 0, 0};
  const Position at{1.1, 0.3, 0.2};
  auto u = [&](double dx, double dy, double dz) {
    return monopole_pressure(f, src, cplx{1.0, 0.0}, {at.x + dx, at.y + dy, at.z + dz}, c);
  };
  const cplx center = u(0, 0, 0);
  const cplx lap = (u(h, 0, 0) + u(-h, 0, 0) + u(0, h, 0) + u(0, -h, 0) + u(0, 0, h) +
                    u(0, 0, -h) - 6.0 * center) /
                   (h * h);
  const double residual = std::abs(lap + k * k * center);
  CHECK(residual / (k * k * std::abs(center)) < 1e-3);
}

TEST_CASE("field synthesis reductions and linearity") {
  const SpeakerArray array = SpeakerArray::circle(2.0, 5);
  const Position at{0.3, 0.1, 0.0};

  CHECK(synthesize_field(DriveCoefficients::zeros(5), array, 343.0, at) == cplx{0.0, 0.0});

  SpeakerArray single{{array.positions[2]}};
  DriveCoefficients a5 = DriveCoefficients::zeros(5);
  a5.amplitudes[2] = cplx{1.0, 0.0};
  CHECK(std::abs(synthesize_field(a5, array, 343.0, at) -
                 monopole_pressure(343.0, array.positions[2], cplx{1.0, 0.0}, at)) < 1e-15);

  SpeakerArray pair{{{-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}};
  DriveCoefficients ones{{cplx{1.0, 0.5}, cplx{1.0, 0.5}}};
  const cplx sum = synthesize_field(ones, pair, 250.0, {0, 0, 0});
  const cplx one_term = monopole_pressure(250.0, pair.positions[0], cplx{1.0, 0.5}, {0, 0, 0});
  CHECK(std::abs(sum - 2.0 * one_term) < 1e-15);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    DriveCoefficients a = DriveCoefficients::zeros(5), b = DriveCoefficients::zeros(5);
    for (int k = 0; k < 5; ++k) {
      a.amplitudes[k] = {dist(rng), dist(rng)};
      b.amplitudes[k] = {dist(rng), dist(rng)};
    }
    DriveCoefficients ab = DriveCoefficients::zeros(5);
    for (int k = 0; k < 5; ++k) ab.amplitudes[k] = a.amplitudes[k] + b.amplitudes[k];
    const cplx lhs = synthesize_field(ab, array, 343.0, at);
    const cplx rhs = synthesize_field(a, array, 343.0, at) + synthesize_field(b, array, 343.0, at);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("free-field two-ear geometry") {
  const FreeFieldTwoEar head;

  SUBCASE("emitter straight ahead gives identical ears") {
    const auto [hl, hr] = head.ear_transfer(343.0, {2.0, 0.0, 0.0}, {{0, 0, 0}, 0.0});
    CHECK(std::abs(hl - hr) < 1e-15);
  }

  SUBCASE("collapsed head matches the plain field and is bit-identical") {
    const FreeFieldTwoEar point(0.0);
    const SpeakerArray array = SpeakerArray::circle(2.0, 4);
    DriveCoefficients a{{{1, 0.2}, {0.5, -1}, {0, 0.7}, {-0.3, 0}}};
    const BinauralSample s = binaural_pressure(a, array, point, 343.0, {{0.2, -0.1, 0}, 0.4});
    CHECK(s.left == s.right);
    CHECK(std::abs(s.left - synthesize_field(a, array, 343.0, {0.2, -0.1, 0})) < 1e-15);
  }

  SUBCASE("far lateral emitter phase difference equals the two-point path difference") {
    const auto [hl, hr] = head.ear_transfer(343.0, {0.0, 100.0, 0.0}, {{0, 0, 0}, 0.0});
    // Ears at (0, +-0.075): the path difference to (0, 100) is exactly 0.15 m.
    const double ipd = std::arg(hl * std::conj(hr));
    CHECK(ipd == doctest::Approx(2.0 * kPi * 343.0 * 0.15 / 343.0).epsilon(1e-9));
  }

  SUBCASE("left ear leads for a source on the left") {
    const auto [hl, hr] = head.ear_transfer(343.0, {0.0, 100.0, 0.0}, {{0, 0, 0}, 0.0});
    CHECK(std::abs(hl) > std::abs(hr));  // left ear is nearer
  }

  SUBCASE("exclusion ball") {
    CHECK_THROWS(head.ear_transfer(343.0, {0.1, 0.0, 0.0}, {{0, 0, 0}, 0.0}));
  }
}

TEST_CASE("binaural pressure is linear and zero at rest") {
  const FreeFieldTwoEar head;
  const SpeakerArray array = SpeakerArray::circle(2.5, 6);
  const ListenerPose pose{{0.4, 0.2, 0}, 0.9};

  const BinauralSample zero = binaural_pressure(DriveCoefficients::zeros(6), array, head, 343.0,
                                                pose);
  CHECK(zero.left == cplx{0.0, 0.0});
  CHECK(zero.right == cplx{0.0, 0.0});

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DriveCoefficients a = DriveCoefficients::zeros(6), b = DriveCoefficients::zeros(6),
                    ab = DriveCoefficients::zeros(6);
  for (int k = 0; k < 6; ++k) {
    a.amplitudes[k] = {dist(rng), dist(rng)};
    b.amplitudes[k] = {dist(rng), dist(rng)};
    ab.amplitudes[k] = a.amplitudes[k] + b.amplitudes[k];
  }
  const BinauralSample sa = binaural_pressure(a, array, head, 343.0, pose);
  const BinauralSample sb = binaural_pressure(b, array, head, 343.0, pose);
  const BinauralSample sab = binaural_pressure(ab, array, head, 343.0, pose);
  CHECK(std::abs(sab.left - sa.left - sb.left) <= 1e-12 * std::max(1.0, std::abs(sab.left)));
  CHECK(std::abs(sab.right - sa.right - sb.right) <= 1e-12 * std::max(1.0, std::abs(sab.right)));
}

TEST_CASE("target gain convention") {
  CHECK(source_gain(68.0) ==
        doctest::Approx(4.0 * kPi * 20e-6 * std::pow(10.0, 3.4)).epsilon(1e-12));
  CHECK(source_gain(68.0) == doctest::Approx(0.6313).epsilon(1e-3));
  CHECK(source_gain(0.0) == doctest::Approx(2.513e-4).epsilon(1e-3));
  CHECK(source_gain(60.0) == doctest::Approx(0.2513).epsilon(1e-3));

  const FreeFieldTwoEar head;
  const SourceSpec src{{5, 0, 0}, 68.0, 343.0, 1.0};
  const BinauralSample u0 = target_binaural(src, head, {{0, 0, 0}, 0.0});
  const auto [hl, hr] = head.ear_transfer(343.0, {5, 0, 0}, {{0, 0, 0}, 0.0});
  CHECK(std::abs(u0.left - source_gain(68.0) * hl) < 1e-15);
  CHECK(std::abs(u0.right - source_gain(68.0) * hr) < 1e-15);
}

TEST_CASE("impulse response radial extrapolation") {
  std::vector<double> hrir(32, 0.0);
  hrir[10] = 1.0;

  SUBCASE("base radius is the identity") {
    const auto out = hrir_radial_extrapolate(hrir, 3.0, 3.0, 343.0, 343.0);
    for (int t = 0; t < 32; ++t) CHECK(out[t] == doctest::Approx(hrir[t]).epsilon(1e-12));
  }

  SUBCASE("doubled distance halves and delays") {
    // One sample spans 1 m at this rate, so the 3 m extra path is 3 samples.
    const auto out = hrir_radial_extrapolate(hrir, 3.0, 6.0, 343.0, 343.0);
    CHECK(out[13] == doctest::Approx(0.5).epsilon(1e-12));
    double energy = 0.0;
    for (double v : out) energy += v * v;
    CHECK(energy == doctest::Approx(0.25).epsilon(1e-12));
  }

  SUBCASE("halved distance doubles and advances, energy scales as the square") {
    const auto out = hrir_radial_extrapolate(hrir, 3.0, 1.5, 686.0, 343.0);
    CHECK(out[7] == doctest::Approx(2.0).epsilon(1e-12));
    double energy = 0.0;
    for (double v : out) energy += v * v;
    CHECK(energy == doctest::Approx(4.0).epsilon(1e-12));
  }

  CHECK_THROWS(hrir_radial_extrapolate(hrir, 3.0, 0.0, 343.0, 343.0));
}

TEST_CASE("measured-response provider evaluates the Fourier bin nearest f") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  HrirDataset::Entry e;
  e.azimuth_deg = 0.0;
  for (int t = 0; t < 32; ++t) {
    e.left.push_back(dist(rng));
    e.right.push_back(dist(rng));
  }
  const HrirDataset ds = HrirDataset::from_entries({e}, 320.0, 3.0, 343.0);

  const double f = 50.0;  // bin 5 of 32 at 320 Hz
  const auto [hl, hr] = ds.ear_transfer(f, {3.0, 0.0, 0.0}, {{0, 0, 0}, 0.0});
  cplx ref{0.0, 0.0};
  for (int t = 0; t < 32; ++t) ref += e.left[t] * std::polar(1.0, -2.0 * kPi * 5.0 * t / 32.0);
  CHECK(std::abs(hl - ref) < 1e-12);
  cplx ref_r{0.0, 0.0};
  for (int t = 0; t < 32; ++t)
    ref_r += e.right[t] * std::polar(1.0, -2.0 * kPi * 5.0 * t / 32.0);
  CHECK(std::abs(hr - ref_r) < 1e-12);
}

TEST_CASE("measured-response CSV manifest round-trips") {
  const std::string path = "hrir_manifest_test.csv";
  {
    std::ofstream out(path);
    out << "azimuth_deg,channel,sample_0,sample_1,sample_2,sample_3,sample_rate_hz,radius_m\n";
    out << "0,L,0.5,0.25,0,0,44100,3\n";
    out << "0,R,0.5,0.25,0,0,44100,3\n";
    out << "-30,L,0.1,0.2,0.3,0.4,44100,3\n";
    out << "-30,R,0.4,0.3,0.2,0.1,44100,3\n";
  }
  const HrirDataset ds = HrirDataset::load_csv(path);
  std::remove(path.c_str());
  CHECK(ds.entries().size() == 2);
  CHECK(ds.entries()[0].azimuth_deg == -30.0);
  CHECK(ds.entries()[1].left[0] == 0.5);
  CHECK(ds.sample_rate() == 44100.0);
  CHECK(ds.radius() == 3.0);
}

TEST_CASE("pseudo-sinusoid spectrum") {
  const cplx a{0.3, -0.4};
  CHECK(std::abs(pseudo_sinusoid_spectrum(a, 343.0, 1.0, 343.0) - a) < 1e-15);
  CHECK(std::abs(pseudo_sinusoid_spectrum(a, 343.0, 1.0, 344.0) - a * std::exp(-0.5)) < 1e-15);
  CHECK_THROWS(pseudo_sinusoid_spectrum(a, 343.0, 0.0, 343.0));

  // Trapezoid quadrature of the squared magnitude against |a|^2 sigma sqrt(pi).
  const double sigma = 2.0;
  double integral = 0.0;
  const double df = 0.01;
  for (double f = 343.0 - 30.0; f <= 343.0 + 30.0; f += df)
    integral += std::norm(pseudo_sinusoid_spectrum(a, 343.0, sigma, f)) * df;
  CHECK(integral == doctest::Approx(std::norm(a) * sigma * std::sqrt(kPi)).epsilon(1e-6));
}
