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

// Brute-force sharpness oracles. Each computes the identification region by
// extremizing the target parameter over every data-generating process that
// is consistent with the observables and the maintained assumptions. None of
// them evaluates the closed-form region formulas.

#ifndef SKIPSEQ_ORACLE_H_
#define SKIPSEQ_ORACLE_H_

#include <utility>
#include <vector>

#include "skipseq/identification.h"
#include "skipseq/simulator.h"

namespace skipseq {

// Feasible set {m : A_eq m = b_eq, A_ge m >= b_ge} in a handful of variables.
// Must be bounded (the probability simplex always is).
struct SmallPolytope {
  int dim = 0;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> ge_rows;
  std::vector<double> ge_rhs;

  void AddEquality(std::vector<double> row, double rhs);
  void AddInequality(std::vector<double> row, double rhs);  // row . m >= rhs
};

// min and max of objective . m over the polytope, by enumerating every basic
// solution (vertex). Throws ValidationError("observables", ...) when the
// polytope is empty.
std::pair<double, double> ExtremizeOverVertices(const SmallPolytope& polytope,
                                                const std::vector<double>& objective,
                                                double feasibility_tol = 1e-9);

// Unobserved conditional means set to 0 or 1.
UnitInterval OracleNonresponseAll(const NonresponseAllScenario& s);
// Additionally P(z_x = 0, x = 1) at either end of [0, P(z_x = 0)].
UnitInterval OracleNonresponseSkip(const NonresponseSkipScenario& s);
// Linear program over the joint law of (y, reported y) on {0,1}^2.
UnitInterval OracleMisclassAll(const MisclassAllScenario& s);
// Linear program over the joint law of true (x, y) and reported (x, y), each
// restricted to the three skip-consistent states {(0,0), (1,0), (1,1)}.
UnitInterval OracleMisclassSkip(const MisclassSkipScenario& s);

UnitInterval SharpnessOracle(const ScenarioObservables& s);

}  // namespace skipseq

#endif  // SKIPSEQ_ORACLE_H_
