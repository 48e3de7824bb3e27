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

#ifndef SWEET_SPLINE_HPP
#define SWEET_SPLINE_HPP

#include <vector>

namespace sweet {

// Interpolating cubic spline with natural boundary conditions
// (zero second derivative at both end knots).
class NaturalCubicSpline {
 public:
  NaturalCubicSpline() = default;
  NaturalCubicSpline(std::vector<double> x, std::vector<double> y);

  // Throws outside the knot range.
  double operator()(double x) const;
  double second_derivative(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  int segment(double x) const;
  std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
};

}  // namespace sweet

#endif  // SWEET_SPLINE_HPP
