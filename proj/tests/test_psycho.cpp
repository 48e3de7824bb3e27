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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"

using namespace sweet;

namespace {

// Unit outer/middle-ear weighting: keeps the band weights at order one so the
// dissimilarity reacts to pressure-scale signals.
VanDeParParams flat_ear_params() {
  VanDeParParams p;
  p.c_eta0 = 0.0;
  p.c_eta1 = 0.0;
  p.c_eta2 = 0.0;
  p.c_eta3 = 0.0;
  return p;
}

}  // namespace

TEST_CASE("outer and middle ear weighting") {
  const VanDeParParams p;

  CHECK(p.c_eta1 == doctest::Approx(18.2 * std::pow(10.0, 1.4)).epsilon(1e-12));

  const double expected_log =
      4.69 - p.c_eta1 * std::pow(3300.0, -0.8) + 5e-16 * std::pow(3300.0, 4.0);
  CHECK(std::log10(terhardt_eta(3300.0, p)) == doctest::Approx(expected_log).epsilon(1e-12));
  CHECK(expected_log == doctest::Approx(4.049).epsilon(1e-3));

  CHECK(terhardt_eta(3300.0, p) > terhardt_eta(100.0, p));
  CHECK_THROWS(terhardt_eta(0.0, p));
}

TEST_CASE("auditory filter bandwidth variants and the rate scale") {
  VanDeParParams p;
  CHECK(erbs(1000.0, p) == doctest::Approx(21.4 * std::log10(5.37)).epsilon(1e-12));
  CHECK(erbs(1000.0, p) == doctest::Approx(15.621).epsilon(1e-3));
  CHECK(erb(1000.0, p) == doctest::Approx(24.7 / 5.37).epsilon(1e-12));
  p.erb_formula = ErbFormula::glasberg_moore;
  CHECK(erb(1000.0, p) == doctest::Approx(24.7 * 5.37).epsilon(1e-12));
}

TEST_CASE("band centers are uniform on the rate scale") {
  VanDeParParams p;
  p.n_bands = 10;
  const auto centers = erb_centers(p);
  REQUIRE(centers.size() == 10);
  CHECK(centers.front() == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(centers.back() == doctest::Approx(1000.0).epsilon(1e-9));
  const double step = erbs(centers[1], p) - erbs(centers[0], p);
  for (size_t j = 1; j < centers.size(); ++j) {
    CHECK(centers[j] > centers[j - 1]);
    CHECK(erbs(centers[j], p) - erbs(centers[j - 1], p) == doctest::Approx(step).epsilon(1e-9));
  }
}

TEST_CASE("gammatone band weighting") {
  const VanDeParParams p;
  CHECK(gammatone_weight(500.0, 500.0, p) == 1.0);

  const double offset = 48.0 * erb(500.0, p) / (945.0 * 3.14159265358979323846);
  CHECK(gammatone_weight(500.0 + offset, 500.0, p) == doctest::Approx(0.25).epsilon(1e-12));

  for (double delta : {1.0, 5.0, 20.0})
    CHECK(gammatone_weight(500.0 + delta, 500.0, p) ==
          doctest::Approx(gammatone_weight(500.0 - delta, 500.0, p)).epsilon(1e-12));

  CHECK(band_weight(500.0, 500.0, p) ==
        doctest::Approx(terhardt_eta(500.0, p) * terhardt_eta(500.0, p)).epsilon(1e-12));
  const double w1 = band_weight(505.0, 500.0, p);
  const double w2 = band_weight(510.0, 500.0, p);
  const double w3 = band_weight(520.0, 500.0, p);
  CHECK(w1 > w2);
  CHECK(w2 > w3);
}

TEST_CASE("monaural dissimilarity closed form") {
  const VanDeParParams p = flat_ear_params();
  const cplx u0{0.4, -0.1};

  CHECK(monaural_dissimilarity(u0, u0, 343.0, p) == -1.0);

  SUBCASE("zero reference is linear in the error energy") {
    const double k = detectability_gain(0.0, 343.0, p);
    for (double m : {0.1, 0.5, 2.0}) {
      const cplx u{m, 0.0};
      CHECK(monaural_dissimilarity(u, {0, 0}, 343.0, p) ==
            doctest::Approx(-1.0 + k * m * m).epsilon(1e-12));
    }
  }

  SUBCASE("just-noticeable error magnitude makes the metric vanish") {
    const double k = detectability_gain(std::norm(u0), 343.0, p);
    const double e = std::sqrt(1.0 / k);
    CHECK(monaural_dissimilarity(u0 + cplx{e, 0.0}, u0, 343.0, p) ==
          doctest::Approx(0.0).epsilon(1e-10));
  }

  SUBCASE("monotone in the error magnitude") {
    double prev = -1.0;
    for (double e : {0.01, 0.1, 0.5, 1.0}) {
      const double d = monaural_dissimilarity(u0 + cplx{e, 0.0}, u0, 343.0, p);
      CHECK(d > prev);
      prev = d;
    }
  }

  SUBCASE("explicit per-band accumulation path agrees") {
    const cplx u{0.55, 0.2};
    double acc = -1.0;
    for (double f_j : erb_centers(p)) {
      const double w = band_weight(343.0, f_j, p);
      acc += p.c_psi_prime * w * std::norm(u - u0) / (p.c_a + w * std::norm(u0));
    }
    CHECK(monaural_dissimilarity(u, u0, 343.0, p) == doctest::Approx(acc).epsilon(1e-12));
  }
}

TEST_CASE("binaural dissimilarity takes the worst ear") {
  const VanDeParParams p = flat_ear_params();
  const BinauralSample s0{{0.4, 0.0}, {0.3, 0.1}};

  CHECK(binaural_dissimilarity(s0, s0, 343.0, p) == -1.0);

  BinauralSample s = s0;
  s.right += cplx{0.2, 0.0};
  const double d_right = monaural_dissimilarity(s.right, s0.right, 343.0, p);
  CHECK(binaural_dissimilarity(s, s0, 343.0, p) == doctest::Approx(d_right).epsilon(1e-12));

  const BinauralSample swapped{s.right, s.left};
  const BinauralSample swapped0{s0.right, s0.left};
  CHECK(binaural_dissimilarity(swapped, swapped0, 343.0, p) ==
        doctest::Approx(binaural_dissimilarity(s, s0, 343.0, p)).epsilon(1e-12));
}

TEST_CASE("loudness discomfort model") {
  const LoudnessModel model = LoudnessModel::flat_default();

  // 100 dB SPL corresponds to a 2 Pa threshold magnitude.
  CHECK(loudness_discomfort({1.0, 0.0}, 343.0, model) == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(loudness_discomfort({2.0, 0.0}, 343.0, model) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(loudness_discomfort({0.0, 0.0}, 343.0, model) == -1.0);
  CHECK_THROWS(loudness_discomfort({1.0, 0.0}, 1.0, model));
}

TEST_CASE("loudness spline interpolates knots with natural boundaries") {
  const std::vector<double> freq{20, 100, 500, 2000, 8000};
  const std::vector<double> ldl{95, 100, 104, 101, 97};
  const LoudnessModel model = LoudnessModel::from_knots(freq, ldl);
  for (size_t i = 0; i < freq.size(); ++i)
    CHECK(model.ldl_db(freq[i]) == doctest::Approx(ldl[i]).epsilon(1e-12));
  CHECK(std::abs(model.spline().second_derivative(20.0)) < 1e-12);
  CHECK(std::abs(model.spline().second_derivative(8000.0)) < 1e-12);
}

TEST_CASE("loudness CSV loading") {
  const std::string path = "ldl_test.csv";
  {
    std::ofstream out(path);
    out << "freq_hz,ldl_db_spl\n20,90\n1000,100\n16000,95\n";
  }
  const LoudnessModel model = LoudnessModel::from_csv(path);
  std::remove(path.c_str());
  CHECK(model.ldl_db(20.0) == doctest::Approx(90.0));
  CHECK(model.ldl_db(1000.0) == doctest::Approx(100.0));
  CHECK(model.ldl_db(16000.0) == doctest::Approx(95.0));
}

TEST_CASE("threshold maps over the grid") {
  const VanDeParParams p = flat_ear_params();
  const LoudnessModel loudness = LoudnessModel::flat_default();
  const FreeFieldTwoEar head;
  const SourceSpec source{{0.0, 2.0, 0.0}, 68.0, 343.0, 1.0};

  // The single speaker sits exactly at the virtual source, so driving it with
  // the source gain reproduces the target field everywhere.
  const SpeakerArray array{{source.position}};
  Grid grid;
  grid.atoms = {{0, 0, 0}, {0.5, 0.2, 0}, {-0.4, -0.6, 0}};
  grid.weights = {1.0, 1.0, 1.0};
  const DirectionSet look = DirectionSet::look_at_source(source.position);

  DriveCoefficients exact{{cplx{source_gain(68.0), 0.0}}};
  const ThresholdField exact_field =
      threshold_maps(exact, array, source, head, grid, look, p, loudness);
  for (double td : exact_field.t_d) CHECK(td == doctest::Approx(-1.0).epsilon(1e-9));

  DriveCoefficients off{{cplx{2.0 * source_gain(68.0), 0.0}}};
  const ThresholdField single =
      threshold_maps(off, array, source, head, grid, DirectionSet::fixed({0.7}), p, loudness);
  const ThresholdField pair = threshold_maps(off, array, source, head, grid,
                                             DirectionSet::fixed({0.7, -1.1}), p, loudness);
  const ThresholdField other =
      threshold_maps(off, array, source, head, grid, DirectionSet::fixed({-1.1}), p, loudness);
  for (int l = 0; l < grid.size(); ++l) {
    CHECK(pair.t_d[l] == doctest::Approx(std::max(single.t_d[l], other.t_d[l])).epsilon(1e-12));
    CHECK(pair.t_l[l] == doctest::Approx(std::max(single.t_l[l], other.t_l[l])).epsilon(1e-12));
  }
}

TEST_CASE("threshold maps are convex in the drive coefficients") {
  const VanDeParParams p = flat_ear_params();
  const LoudnessModel loudness = LoudnessModel::flat_default();
  const FreeFieldTwoEar head;
  const SourceSpec source{{3.0, 1.0, 0.0}, 68.0, 343.0, 1.0};
  const SpeakerArray array = SpeakerArray::circle(2.0, 3);
  Grid grid;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      grid.atoms.push_back({0.4 * i, 0.4 * j, 0.0});
      grid.weights.push_back(1.0);
    }
  const DirectionSet look = DirectionSet::look_at_source(source.position);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    DriveCoefficients a = DriveCoefficients::zeros(3), b = DriveCoefficients::zeros(3),
                      mix = DriveCoefficients::zeros(3);
    const double lam = unit(rng);
    for (int k = 0; k < 3; ++k) {
      a.amplitudes[k] = {dist(rng), dist(rng)};
      b.amplitudes[k] = {dist(rng), dist(rng)};
      mix.amplitudes[k] = lam * a.amplitudes[k] + (1.0 - lam) * b.amplitudes[k];
    }
    const auto fa = threshold_maps(a, array, source, head, grid, look, p, loudness);
    const auto fb = threshold_maps(b, array, source, head, grid, look, p, loudness);
    const auto fm = threshold_maps(mix, array, source, head, grid, look, p, loudness);
    for (int l = 0; l < grid.size(); ++l) {
      CHECK(fm.t_d[l] <= lam * fa.t_d[l] + (1.0 - lam) * fb.t_d[l] + 1e-9);
      CHECK(fm.t_l[l] <= lam * fa.t_l[l] + (1.0 - lam) * fb.t_l[l] + 1e-9);
    }
  }
}
