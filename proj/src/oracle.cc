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

#include "skipseq/oracle.h"

#include <Eigen/Dense>
#include <bit>
#include <cstdint>
#include <algorithm>
#include <cmath>
#include <limits>

namespace skipseq {

void SmallPolytope::AddEquality(std::vector<double> row, double rhs) {
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

void SmallPolytope::AddInequality(std::vector<double> row, double rhs) {
  ge_rows.push_back(std::move(row));
  ge_rhs.push_back(rhs);
}

std::pair<double, double> ExtremizeOverVertices(
    const SmallPolytope& p, const std::vector<double>& objective,
    double feasibility_tol) {
  const int n = p.dim;
  const int n_eq = static_cast<int>(p.eq_rows.size());
  const int n_ge = static_cast<int>(p.ge_rows.size());
  if (n_ge > 20) throw std::logic_error("ExtremizeOverVertices: too many rows");

  Eigen::MatrixXd eq(n_eq, n);
  for (int r = 0; r < n_eq; ++r) {
    for (int c = 0; c < n; ++c) eq(r, c) = p.eq_rows[r][c];
  }
  const int eq_rank = n_eq == 0 ? 0 : Eigen::FullPivLU<Eigen::MatrixXd>(eq).rank();
  if (eq_rank != n_eq) {
    throw std::logic_error("ExtremizeOverVertices: dependent equality rows");
  }
  const int need = n - n_eq;  // active inequalities per vertex

  auto feasible = [&](const Eigen::VectorXd& m) {
    for (int r = 0; r < n_eq; ++r) {
      double v = 0.0;
      for (int c = 0; c < n; ++c) v += p.eq_rows[r][c] * m(c);
      if (std::abs(v - p.eq_rhs[r]) > feasibility_tol) return false;
    }
    for (int r = 0; r < n_ge; ++r) {
      double v = 0.0;
      for (int c = 0; c < n; ++c) v += p.ge_rows[r][c] * m(c);
      if (v < p.ge_rhs[r] - feasibility_tol) return false;
    }
    return true;
  };

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  Eigen::MatrixXd system(n, n);
  Eigen::VectorXd rhs(n);
  for (std::uint32_t mask = 0; mask < (1u << n_ge); ++mask) {
    if (std::popcount(mask) != need) continue;
    int row = 0;
    for (int r = 0; r < n_eq; ++r, ++row) {
      system.row(row) = eq.row(r);
      rhs(row) = p.eq_rhs[r];
    }
    for (int r = 0; r < n_ge; ++r) {
      if (!(mask & (1u << r))) continue;
      for (int c = 0; c < n; ++c) system(row, c) = p.ge_rows[r][c];
      rhs(row) = p.ge_rhs[r];
      ++row;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd vertex = lu.solve(rhs);
    if (!feasible(vertex)) continue;
    double value = 0.0;
    for (int c = 0; c < n; ++c) value += objective[c] * vertex(c);
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  if (!(lo <= hi)) {
    throw ValidationError("observables",
                          "no distribution is consistent with the observables");
  }
  return {lo, hi};
}

UnitInterval OracleNonresponseAll(const NonresponseAllScenario& raw) {
  const auto s = Validate(raw);
  double lo = 1.0, hi = 0.0;
  for (double missing_mean : {0.0, 1.0}) {
    const double v = s.mean_resp * (1.0 - s.p_nonresp) + missing_mean * s.p_nonresp;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return UnitInterval(lo, hi);
}

UnitInterval OracleNonresponseSkip(const NonresponseSkipScenario& raw) {
  const auto s = Validate(raw);
  double lo = 1.0, hi = 0.0;
  // Law of iterated expectations with g(0) = 0 removing the x = 0 stratum.
  for (double mean_y_missing : {0.0, 1.0}) {
    for (double mean_x_missing : {0.0, 1.0}) {
      for (double mass_x_missing_x1 : {0.0, s.p_x_nonresp}) {
        const double v = s.mean_resp * s.p_y_resp +
                         mean_y_missing * s.p_x_resp_y_nonresp +
                         mean_x_missing * mass_x_missing_x1;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  return UnitInterval(lo, hi);
}

UnitInterval OracleMisclassAll(const MisclassAllScenario& raw) {
  const auto s = Validate(raw);
  const double lam = s.assumption.lambda;
  // m[2 * y + r] = P(y, reported = r).
  SmallPolytope poly;
  poly.dim = 4;
  poly.AddEquality({1, 1, 1, 1}, 1.0);
  poly.AddEquality({0, 1, 0, 1}, s.p_report);
  for (int i = 0; i < 4; ++i) {
    std::vector<double> row(4, 0.0);
    row[i] = 1.0;
    poly.AddInequality(row, 0.0);
  }
  if (s.assumption.variant == ErrorBound::kJoint) {
    poly.AddInequality({1, 0, 0, 1}, 1.0 - lam);
  } else {
    // P(r = y | y = k) >= 1 - lam  <=>  lam * m_kk - (1 - lam) * m_k!k >= 0.
    poly.AddInequality({lam, -(1.0 - lam), 0, 0}, 0.0);
    poly.AddInequality({0, 0, -(1.0 - lam), lam}, 0.0);
  }
  const auto [lo, hi] = ExtremizeOverVertices(poly, {0, 0, 1, 1});
  return UnitInterval(lo, hi);
}

UnitInterval OracleMisclassSkip(const MisclassSkipScenario& raw) {
  const auto s = Validate(raw);
  const double lam = s.assumption.lambda;
  // States: 0 = (0,0), 1 = (1,0), 2 = (1,1). m[3 * true + reported].
  auto cell = [](int t, int r) { return 3 * t + r; };
  SmallPolytope poly;
  poly.dim = 9;
  std::vector<double> total(9, 1.0);
  poly.AddEquality(total, 1.0);
  std::vector<double> rep11(9, 0.0), rep10(9, 0.0);
  for (int t = 0; t < 3; ++t) {
    rep11[cell(t, 2)] = 1.0;
    rep10[cell(t, 1)] = 1.0;
  }
  poly.AddEquality(rep11, s.p_report);
  poly.AddEquality(rep10, s.p_x_report - s.p_report);
  for (int i = 0; i < 9; ++i) {
    std::vector<double> row(9, 0.0);
    row[i] = 1.0;
    poly.AddInequality(row, 0.0);
  }
  if (s.assumption.variant == ErrorBound::kJoint) {
    std::vector<double> diag(9, 0.0);
    for (int t = 0; t < 3; ++t) diag[cell(t, t)] = 1.0;
    poly.AddInequality(diag, 1.0 - lam);
  } else {
    for (int t = 0; t < 3; ++t) {
      std::vector<double> row(9, 0.0);
      for (int r = 0; r < 3; ++r) row[cell(t, r)] = r == t ? lam : -(1.0 - lam);
      poly.AddInequality(row, 0.0);
    }
  }
  std::vector<double> objective(9, 0.0);
  for (int r = 0; r < 3; ++r) objective[cell(2, r)] = 1.0;
  const auto [lo, hi] = ExtremizeOverVertices(poly, objective);
  return UnitInterval(lo, hi);
}

UnitInterval SharpnessOracle(const ScenarioObservables& s) {
  struct Visitor {
    UnitInterval operator()(const NonresponseAllScenario& v) const {
      return OracleNonresponseAll(v);
    }
    UnitInterval operator()(const NonresponseSkipScenario& v) const {
      return OracleNonresponseSkip(v);
    }
    UnitInterval operator()(const MisclassAllScenario& v) const {
      return OracleMisclassAll(v);
    }
    UnitInterval operator()(const MisclassSkipScenario& v) const {
      return OracleMisclassSkip(v);
    }
  };
  return std::visit(Visitor{}, s);
}

}  // namespace skipseq
