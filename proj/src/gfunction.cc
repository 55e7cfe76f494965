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

#include "skipseq/gfunction.h"

#include <algorithm>
#include <cmath>

#include "skipseq/identification.h"

namespace skipseq {

GFunction GFunction::LinearScaled(double support_max) {
  if (!std::isfinite(support_max) || support_max <= 0.0) {
    throw ValidationError("support_max", "support maximum must be positive");
  }
  GFunction g;
  g.support_max_ = support_max;
  return g;
}

GFunction GFunction::Tabulated(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) {
    throw ValidationError("g", "tabulated g needs at least two knots");
  }
  if (knots.front() != std::pair<double, double>{0.0, 0.0}) {
    throw ValidationError("g", "tabulated g must start at (0, 0)");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first)) {
      throw ValidationError("g", "knot abscissae must be strictly increasing");
    }
    if (knots[i].second < knots[i - 1].second) {
      throw ValidationError("g", "tabulated g must be non-decreasing");
    }
  }
  if (knots.back().second != 1.0) {
    throw ValidationError("g", "tabulated g must reach 1");
  }
  GFunction g;
  g.support_max_ = knots.back().first;
  g.knots_ = std::move(knots);
  return g;
}

double GFunction::operator()(double y) const {
  if (knots_.empty()) return std::clamp(y / support_max_, 0.0, 1.0);
  if (y <= 0.0) return 0.0;
  if (y >= knots_.back().first) return 1.0;
  const auto it = std::upper_bound(
      knots_.begin(), knots_.end(), y,
      [](double v, const auto& knot) { return v < knot.first; });
  const auto& [y1, g1] = *it;
  const auto& [y0, g0] = *(it - 1);
  return g0 + (g1 - g0) * (y - y0) / (y1 - y0);
}

}  // namespace skipseq
