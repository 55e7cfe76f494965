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

// Synthetic populations with skip-sequenced response processes. A run is a
// pure function of (population, design, response model, seed).
//
// Population mode applies a design to every member of a generated
// population, so the observables are exact population quantities for that
// population. Sample mode first draws respondents with SamplePopulation.

#ifndef SKIPSEQ_SIMULATOR_H_
#define SKIPSEQ_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "skipseq/decision.h"
#include "skipseq/gfunction.h"
#include "skipseq/identification.h"
#include "skipseq/ingest.h"

namespace skipseq {

enum class OutcomeShape {
  kBinary,   // y in {0, s}
  kUniform,  // y = 0 or uniform on (0, s]
};

struct PopulationConfig {
  double p_x = 0.5;          // P(x = 1)
  double p_y_given_x = 0.5;  // P(y > 0 | x = 1); x = 0 forces y = 0
  double support_max = 1.0;
  OutcomeShape shape = OutcomeShape::kBinary;
  std::optional<GFunction> g;  // defaults to LinearScaled(support_max)
};

struct Member {
  int x = 0;
  double y_raw = 0.0;

  friend bool operator==(const Member&, const Member&) = default;
};

struct Population {
  std::vector<Member> members;
  double support_max = 1.0;
  GFunction g = GFunction::LinearScaled(1.0);

  double TrueMean() const;              // E[g(y)]
  double TrueProbabilityPositive() const;  // P(y > 0), i.e. P(y = 1) if binary
  bool IsBinary() const;                // every y in {0, s}
};

// Throws ValidationError on n == 0 or invalid probabilities.
Population GeneratePopulation(std::size_t n, const PopulationConfig& config,
                              std::uint64_t seed);

// n respondents drawn with replacement.
Population SamplePopulation(const Population& pop, std::size_t n,
                            std::uint64_t seed);

// Which members go missing when nonresponse is drawn.
enum class MissingnessRule {
  kMissingAtRandom,
  kHighValuesMissing,  // largest g(y) first: worst case for the upper bound
  kLowValuesMissing,   // smallest g(y) first: worst case for the lower bound
};

// Under Skip: opening nonresponse with probability p_skip_open, then
// follow-up nonresponse among those asked with probability p_skip_follow.
// Under All the single item goes unanswered with probability p_skip_follow.
struct NonresponseModel {
  double p_skip_open = 0.0;
  double p_skip_follow = 0.0;
  MissingnessRule rule = MissingnessRule::kMissingAtRandom;
};

enum class FlipRule {
  kRandom,         // any other admissible report
  kFalseNegative,  // only downward errors
  kFalsePositive,  // only upward errors
};

// Exactly floor(intensity * lambda_budget * N) misreports (JointBound) or
// floor(intensity * lambda_budget * N_k) per true value k (PerValueBound),
// capped by the number of members the rule can flip. Requires a binary
// population. Under Skip errors act on the pair (x, y).
struct MisclassModel {
  FlipRule rule = FlipRule::kRandom;
  ErrorBound bound = ErrorBound::kJoint;
  double lambda_budget = 0.0;
  double intensity = 1.0;
};

enum class ContaminationDraw {
  kOpposite,   // e = 1 - y
  kZero,       // e = 0
  kOne,        // e = 1
  kCoin,       // e ~ Bernoulli(1/2)
};

enum class ErrorTarget { kAny, kPositive, kNegative };

// reported = w * y + (1 - w) * e with P(w = 0) = p_w0 <= lambda. With
// `independent`, w = 0 is assigned at rate p_w0 within each value of y;
// otherwise floor(p_w0 * N) errors go to `target` members first. Option All
// only.
struct MixtureModel {
  double p_w0 = 0.0;
  double lambda = 0.0;
  ContaminationDraw error = ContaminationDraw::kOpposite;
  bool independent = false;
  ErrorTarget target = ErrorTarget::kAny;
};

using ResponseModel = std::variant<NonresponseModel, MisclassModel, MixtureModel>;

struct TruthSummary {
  double mean_g = 0.0;
  double p_y1 = 0.0;
};

struct ObservedDataset {
  std::vector<MicroRecord> records;  // records[i] belongs to members[i]
  DesignOption design = DesignOption::kNone;
  ResponseModel model;
  GFunction g = GFunction::LinearScaled(1.0);
  TruthSummary truth;  // for oracle use only
};

// Throws ValidationError for incompatible (model, design) pairs.
ObservedDataset ApplyDesign(const Population& pop, DesignOption option,
                            const ResponseModel& model, std::uint64_t seed);

// Schema that reads back what ApplyDesign writes.
IngestSchema SchemaFor(const ObservedDataset& obs);

using ScenarioObservables =
    std::variant<NonresponseAllScenario, NonresponseSkipScenario,
                 MisclassAllScenario, MisclassSkipScenario>;

// Throws ValidationError for a design-None dataset or when a conditional
// mean is undefined.
ScenarioObservables EmpiricalQuantities(const ObservedDataset& obs,
                                        const GFunction& g);
ScenarioObservables EmpiricalQuantities(const std::vector<MicroRecord>& records,
                                        const IngestSchema& schema,
                                        const ResponseModel& model);

UnitInterval RegionFor(const ScenarioObservables& s);

// The true parameter the region of `s` bounds: E[g(y)] for nonresponse,
// P(y = 1) for misclassification.
double TruthFor(const ScenarioObservables& s, const TruthSummary& truth);

inline constexpr double kCoverageEps = 1e-9;
bool CoverageCheck(double truth, const UnitInterval& region,
                   double eps = kCoverageEps);

}  // namespace skipseq

#endif  // SKIPSEQ_SIMULATOR_H_
