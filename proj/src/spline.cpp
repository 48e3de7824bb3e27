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

#include "sweet/spline.hpp"

#include <stdexcept>

namespace sweet {

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = static_cast<int>(x_.size());
  if (n < 2 || y_.size() != x_.size())
    throw std::invalid_argument("NaturalCubicSpline: need >= 2 matching knots");
  for (int i = 1; i < n; ++i)
    if (x_[i] <= x_[i - 1])
      throw std::invalid_argument("NaturalCubicSpline: knots must be strictly increasing");

  m_.assign(n, 0.0);
  if (n == 2) return;  // linear

  // Tridiagonal system for interior second derivatives, Thomas algorithm.
  std::vector<double> diag(n - 2), rhs(n - 2), upper(n - 2);
  for (int i = 1; i <= n - 2; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  for (int i = 1; i < n - 2; ++i) {
    const double h0 = x_[i + 1] - x_[i];  // sub-diagonal entry for row i
    const double w = h0 / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (int i = n - 3; i >= 0; --i) {
    double v = rhs[i];
    if (i + 1 <= n - 3) v -= upper[i] * m_[i + 2];
    m_[i + 1] = v / diag[i];
  }
}

int NaturalCubicSpline::segment(double x) const {
  if (x < x_.front() || x > x_.back())
    throw std::domain_error("NaturalCubicSpline: evaluation outside knot range");
  int lo = 0, hi = static_cast<int>(x_.size()) - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (x_[mid] <= x) lo = mid;
    else hi = mid;
  }
  return lo;
}

double NaturalCubicSpline::operator()(double x) const {
  const int i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double NaturalCubicSpline::second_derivative(double x) const {
  const int i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

}  // namespace sweet
