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

#include "sweet/baselines.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace sweet {

namespace {

constexpr double kPi = 3.14159265358979323846;

Position array_center(const SpeakerArray& array) {
  Position c;
  for (const auto& p : array.positions) {
    c.x += p.x;
    c.y += p.y;
    c.z += p.z;
  }
  const double n = array.size();
  return {c.x / n, c.y / n, c.z / n};
}

double mean_radius(const SpeakerArray& array, const Position& center) {
  double r = 0.0;
  for (const auto& p : array.positions) r += distance(p, center);
  return r / array.size();
}

}  // namespace

PmmResult pmm_l2(const SpeakerArray& array, const SourceSpec& source, const Grid& grid,
                 double c_s, double lambda_ridge) {
  if (grid.size() == 0) throw std::invalid_argument("pmm_l2: empty grid");
  const int m = grid.size(), n = array.size();
  const cplx c0{source_gain(source.level_db_spl), 0.0};

  Eigen::MatrixXcd g(m, n);
  Eigen::VectorXcd u0(m);
  Eigen::VectorXd w(m);
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < n; ++k)
      g(l, k) = monopole_pressure(source.f_star, array.positions[k], cplx{1.0, 0.0},
                                  grid.atoms[l], c_s);
    u0(l) = monopole_pressure(source.f_star, source.position, c0, grid.atoms[l], c_s);
    w(l) = grid.weights[l];
  }

  const Eigen::MatrixXcd gw = w.asDiagonal() * g;
  const Eigen::MatrixXcd a_mat = g.adjoint() * gw;
  const Eigen::VectorXcd b = g.adjoint() * (w.asDiagonal() * u0);
  const double lambda_eff = lambda_ridge * a_mat.trace().real() / n;

  PmmResult res;
  Eigen::VectorXcd a;
  if (lambda_eff > 0.0) {
    Eigen::MatrixXcd reg = a_mat;
    reg.diagonal().array() += lambda_eff;
    a = reg.ldlt().solve(b);
  } else {
    const Eigen::VectorXd sw = w.array().sqrt();
    const Eigen::MatrixXcd gs = sw.asDiagonal() * g;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(gs);
    res.rank_deficient = cod.rank() < n;
    a = cod.solve(Eigen::VectorXcd(sw.asDiagonal() * u0));
  }

  const double denom = std::max(b.norm(), 1e-300);
  res.grad_residual = (a_mat * a + lambda_eff * a - b).norm() / denom;
  res.coeffs.amplitudes.assign(a.data(), a.data() + n);
  return res;
}

DriveCoefficients wfs_25d(const SpeakerArray& array, const SourceSpec& source, double c_s,
                          const BaselineSettings& settings) {
  const Position center = array_center(array);
  const double big_r = mean_radius(array, center);
  const double r_src = distance(source.position, center);
  const double f = source.f_star;
  const cplx c0{source_gain(source.level_db_spl), 0.0};
  const bool focus = r_src < big_r;
  if (focus && r_src <= 0.0)
    throw std::invalid_argument("wfs_25d: focus source at the array center");

  const cplx prefactor =
      std::sqrt(settings.wfs_ref_distance) * std::sqrt(cplx(0.0, focus ? -f / c_s : f / c_s));

  std::vector<cplx> drive(array.size(), cplx{0.0, 0.0});
  for (int k = 0; k < array.size(); ++k) {
    const Position& xk = array.positions[k];
    const double nk_len = distance(xk, center);
    if (nk_len <= 0.0) throw std::invalid_argument("wfs_25d: speaker at the array center");
    const double nx = (center.x - xk.x) / nk_len, ny = (center.y - xk.y) / nk_len;
    const double dx = xk.x - source.position.x, dy = xk.y - source.position.y;
    const double r = std::sqrt(dx * dx + dy * dy);
    if (r < 1e-9) throw std::invalid_argument("wfs_25d: source on the speaker contour");
    const double proj = dx * nx + dy * ny;
    bool selected;
    double cos_factor;
    if (!focus) {
      selected = proj > 0.0;
      cos_factor = proj / r;
    } else {
      const double hx = source.position.x - center.x, hy = source.position.y - center.y;
      selected = (dx * hx + dy * hy) / r_src < 0.0;
      cos_factor = std::abs(proj) / r;
    }
    if (!selected) continue;
    const double phase = 2.0 * kPi * f * r / c_s;
    drive[k] = prefactor * cos_factor * std::polar(1.0, focus ? phase : -phase) /
               std::pow(r, 1.5);
  }

  cplx raw_center{0.0, 0.0};
  for (int k = 0; k < array.size(); ++k)
    if (drive[k] != cplx{0.0, 0.0})
      raw_center += drive[k] * monopole_pressure(f, array.positions[k], cplx{1.0, 0.0}, center, c_s);
  if (std::abs(raw_center) == 0.0)
    throw std::runtime_error("wfs_25d: degenerate geometry, no active speaker");
  const cplx target = monopole_pressure(f, source.position, c0, center, c_s);
  const cplx scale = target / raw_center;
  for (cplx& d : drive) d *= scale;
  return DriveCoefficients{std::move(drive)};
}

double sph_bessel_j(int n, double z) { return std::sph_bessel(static_cast<unsigned>(n), z); }

double sph_bessel_y(int n, double z) { return std::sph_neumann(static_cast<unsigned>(n), z); }

cplx spherical_hankel2(int n, double z) {
  if (z <= 0.0) throw std::invalid_argument("spherical_hankel2: z must be > 0");
  return {sph_bessel_j(n, z), -sph_bessel_y(n, z)};
}

double hoa_angular_weight(int n, double kd) {
  if (kd <= 0.0) throw std::invalid_argument("hoa_angular_weight: kd must be > 0");
  const int m = static_cast<int>(std::floor(kd));
  if (n > kd || m == 0) return 0.0;
  return 0.5 * (std::cos(n * kPi / m) + 1.0);
}

DriveCoefficients nfc_hoa_25d(const SpeakerArray& array, const SourceSpec& source, double c_s,
                              const BaselineSettings& settings, bool normalize) {
  const Position center = array_center(array);
  const double big_r = mean_radius(array, center);
  const int n_s = array.size();
  for (const auto& p : array.positions)
    if (std::abs(distance(p, center) - big_r) > 1e-9 * std::max(big_r, 1.0))
      throw std::invalid_argument("nfc_hoa_25d: array is not circular");
  const double r_src = distance(source.position, center);
  if (r_src <= 0.0) throw std::invalid_argument("nfc_hoa_25d: source at the array center");
  const bool focus = r_src < big_r;
  const double f = source.f_star;
  const double k_wave = 2.0 * kPi * f / c_s;
  const double alpha_s =
      std::atan2(source.position.y - center.y, source.position.x - center.x);
  const cplx c0{source_gain(source.level_db_spl), 0.0};

  const int max_order = (n_s - 1) / 2;
  int order = settings.hoa_order < 0 ? max_order : settings.hoa_order;
  if (order > max_order)
    std::cerr << "nfc_hoa_25d: order " << order << " exceeds the aliasing bound " << max_order
              << "\n";

  std::vector<cplx> ratio(order + 1);
  std::vector<double> weight(order + 1);
  const double kd = k_wave * r_src;
  for (int n = 0; n <= order; ++n) {
    ratio[n] = spherical_hankel2(n, k_wave * r_src) / spherical_hankel2(n, k_wave * big_r);
    weight[n] = focus ? hoa_angular_weight(n, kd) : 1.0;
  }

  std::vector<cplx> drive(n_s);
  for (int k = 0; k < n_s; ++k) {
    const double alpha_k =
        std::atan2(array.positions[k].y - center.y, array.positions[k].x - center.x);
    cplx d{0.0, 0.0};
    for (int n = -order; n <= order; ++n) {
      const int an = std::abs(n);
      d += weight[an] * ratio[an] * std::polar(1.0, n * (alpha_k - alpha_s));
    }
    d /= 2.0 * kPi * big_r;
    drive[k] = c0 * (2.0 * kPi * big_r / n_s) * d;
  }

  if (normalize) {
    cplx raw_center{0.0, 0.0};
    for (int k = 0; k < n_s; ++k)
      raw_center +=
          drive[k] * monopole_pressure(f, array.positions[k], cplx{1.0, 0.0}, center, c_s);
    if (std::abs(raw_center) == 0.0)
      throw std::runtime_error("nfc_hoa_25d: zero field at the array center");
    const cplx target = monopole_pressure(f, source.position, c0, center, c_s);
    const cplx scale = target / raw_center;
    for (cplx& d : drive) d *= scale;
  }
  return DriveCoefficients{std::move(drive)};
}

}  // namespace sweet
