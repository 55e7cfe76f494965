//
// Copyright 2026 The skipseq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SKIPSEQ_GFUNCTION_H_
#define SKIPSEQ_GFUNCTION_H_

#include <utility>
#include <vector>

namespace skipseq {

// Monotone normalization g: [0, s] -> [0, 1] with g(0) = 0 and max g = 1.
class GFunction {
 public:
  // g(y) = y / s.
  static GFunction LinearScaled(double support_max);

  // Piecewise-linear interpolation through (y, g) knots. Knots must start at
  // (0, 0), be strictly increasing in y, non-decreasing in g, and reach g = 1.
  // Beyond the last knot g stays at 1.
  static GFunction Tabulated(std::vector<std::pair<double, double>> knots);

  double operator()(double y) const;

  double support_max() const { return support_max_; }
  bool is_linear() const { return knots_.empty(); }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  GFunction() = default;

  double support_max_ = 1.0;
  std::vector<std::pair<double, double>> knots_;
};

}  // namespace skipseq

#endif  // SKIPSEQ_GFUNCTION_H_
