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

#include "skipseq/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "skipseq/rng.h"

namespace skipseq {
namespace {

// Stream ids for Rng::Derive, so each stage of a run draws independently.
enum Stream : std::uint64_t {
  kOpeningStream = 1,
  kFollowupStream = 2,
  kFlipStream = 3,
  kMixtureStream = 4,
};

std::string RespondentId(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "r%07zu", i);
  return buf;
}

// Members in the order the rule makes them go missing. Ties are broken at
// random so the rule stays deterministic given the seed.
std::vector<std::size_t> MissingnessOrder(std::vector<std::size_t> candidates,
                                          const Population& pop,
                                          MissingnessRule rule, Rng& rng) {
  rng.Shuffle(std::span<std::size_t>(candidates));
  if (rule == MissingnessRule::kMissingAtRandom) return candidates;
  std::vector<double> key(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    key[i] = pop.g(pop.members[candidates[i]].y_raw);
  }
  std::vector<std::size_t> perm(candidates.size());
  std::iota(perm.begin(), perm.end(), 0);
  const bool high = rule == MissingnessRule::kHighValuesMissing;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return high ? key[a] > key[b] : key[a] < key[b];
  });
  std::vector<std::size_t> out(candidates.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = candidates[perm[i]];
  return out;
}

std::size_t BudgetCount(double rate, std::size_t n) {
  return static_cast<std::size_t>(std::floor(rate * static_cast<double>(n)));
}

// True (x, y) state under Skip: 0 = (0,0), 1 = (1,0), 2 = (1,1).
int SkipState(const Member& m) { return m.x == 0 ? 0 : (m.y_raw > 0.0 ? 2 : 1); }

std::vector<int> Alternatives(int state, FlipRule rule, bool skip) {
  std::vector<int> out;
  const int top = skip ? 2 : 1;
  for (int s = 0; s <= top; ++s) {
    if (s == state) continue;
    if (rule == FlipRule::kFalseNegative && s > state) continue;
    if (rule == FlipRule::kFalsePositive && s < state) continue;
    out.push_back(s);
  }
  return out;
}

void ValidateModel(const NonresponseModel& m) {
  CheckProbability(m.p_skip_open, "p_skip_open");
  CheckProbability(m.p_skip_follow, "p_skip_follow");
}

void ValidateModel(const MisclassModel& m) {
  Validate(ErrorAssumption{m.bound, m.lambda_budget});
  CheckProbability(m.intensity, "intensity");
}

void ValidateModel(const MixtureModel& m) {
  Validate(ErrorAssumption{ErrorBound::kJoint, m.lambda});
  CheckProbability(m.p_w0, "p_w0");
  if (m.p_w0 > m.lambda) {
    throw ValidationError("p_w0", "P(w = 0) must not exceed lambda");
  }
}

std::vector<MicroRecord> BlankRecords(std::size_t n) {
  std::vector<MicroRecord> records(n);
  for (std::size_t i = 0; i < n; ++i) records[i].respondent_id = RespondentId(i);
  return records;
}

void ApplyNonresponse(const Population& pop, DesignOption option,
                      const NonresponseModel& m, std::uint64_t seed,
                      std::vector<MicroRecord>& records) {
  const std::size_t n = pop.members.size();
  if (option == DesignOption::kAll) {
    Rng rng(Rng::Derive(seed, kFollowupStream));
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    const auto k = rng.Binomial(n, m.p_skip_follow);
    const auto order = MissingnessOrder(std::move(all), pop, m.rule, rng);
    std::vector<bool> missing(n, false);
    for (std::size_t i = 0; i < k; ++i) missing[order[i]] = true;
    for (std::size_t i = 0; i < n; ++i) {
      records[i].followup_asked = true;
      if (!missing[i]) records[i].followup_value = pop.members[i].y_raw;
    }
    return;
  }

  Rng open_rng(Rng::Derive(seed, kOpeningStream));
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  const auto k_open = open_rng.Binomial(n, m.p_skip_open);
  const auto open_order = MissingnessOrder(std::move(all), pop, m.rule, open_rng);
  std::vector<bool> open_missing(n, false);
  for (std::size_t i = 0; i < k_open; ++i) open_missing[open_order[i]] = true;

  std::vector<std::size_t> asked;
  for (std::size_t i = 0; i < n; ++i) {
    records[i].opening_asked = true;
    if (open_missing[i]) continue;
    records[i].opening_value = static_cast<double>(pop.members[i].x);
    if (pop.members[i].x == 1) {
      records[i].followup_asked = true;
      asked.push_back(i);
    }
  }

  Rng follow_rng(Rng::Derive(seed, kFollowupStream));
  const auto k_follow = follow_rng.Binomial(asked.size(), m.p_skip_follow);
  const auto follow_order = MissingnessOrder(asked, pop, m.rule, follow_rng);
  std::vector<bool> follow_missing(n, false);
  for (std::size_t i = 0; i < k_follow; ++i) follow_missing[follow_order[i]] = true;
  for (auto i : asked) {
    if (!follow_missing[i]) records[i].followup_value = pop.members[i].y_raw;
  }
}

void ApplyMisclass(const Population& pop, DesignOption option,
                   const MisclassModel& m, std::uint64_t seed,
                   std::vector<MicroRecord>& records) {
  if (!pop.IsBinary()) {
    throw ValidationError("population",
                          "misclassification requires a binary outcome");
  }
  const bool skip = option == DesignOption::kSkip;
  const std::size_t n = pop.members.size();
  std::vector<int> state(n);
  for (std::size_t i = 0; i < n; ++i) {
    state[i] = skip ? SkipState(pop.members[i]) : (pop.members[i].y_raw > 0.0);
  }
  std::vector<int> reported = state;

  Rng rng(Rng::Derive(seed, kFlipStream));
  auto flip_some = [&](std::vector<std::size_t> eligible, std::size_t budget) {
    rng.Shuffle(std::span<std::size_t>(eligible));
    const std::size_t k = std::min(budget, eligible.size());
    for (std::size_t j = 0; j < k; ++j) {
      const auto i = eligible[j];
      const auto alts = Alternatives(state[i], m.rule, skip);
      reported[i] = alts[rng.Index(alts.size())];
    }
  };
  const double rate = m.intensity * m.lambda_budget;
  if (m.bound == ErrorBound::kJoint) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < n; ++i) {
      if (!Alternatives(state[i], m.rule, skip).empty()) eligible.push_back(i);
    }
    flip_some(std::move(eligible), BudgetCount(rate, n));
  } else {
    for (int s = 0; s <= (skip ? 2 : 1); ++s) {
      std::vector<std::size_t> cls;
      for (std::size_t i = 0; i < n; ++i) {
        if (state[i] == s) cls.push_back(i);
      }
      const std::size_t budget = BudgetCount(rate, cls.size());
      if (Alternatives(s, m.rule, skip).empty()) continue;
      flip_some(std::move(cls), budget);
    }
  }

  const double s_max = pop.support_max;
  for (std::size_t i = 0; i < n; ++i) {
    if (skip) {
      records[i].opening_asked = true;
      records[i].opening_value = reported[i] >= 1 ? 1.0 : 0.0;
      if (reported[i] >= 1) {
        records[i].followup_asked = true;
        records[i].followup_value = reported[i] == 2 ? s_max : 0.0;
      }
    } else {
      records[i].followup_asked = true;
      records[i].followup_value = reported[i] == 1 ? s_max : 0.0;
    }
  }
}

void ApplyMixture(const Population& pop, const MixtureModel& m,
                  std::uint64_t seed, std::vector<MicroRecord>& records) {
  if (!pop.IsBinary()) {
    throw ValidationError("population", "the mixture model requires a binary outcome");
  }
  const std::size_t n = pop.members.size();
  Rng rng(Rng::Derive(seed, kMixtureStream));
  std::vector<bool> error(n, false);
  auto positive = [&](std::size_t i) { return pop.members[i].y_raw > 0.0; };
  if (m.independent) {
    for (bool cls : {false, true}) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i) {
        if (positive(i) == cls) members.push_back(i);
      }
      rng.Shuffle(std::span<std::size_t>(members));
      const std::size_t k = BudgetCount(m.p_w0, members.size());
      for (std::size_t j = 0; j < k; ++j) error[members[j]] = true;
    }
  } else {
    std::vector<std::size_t> first, rest;
    for (std::size_t i = 0; i < n; ++i) {
      const bool hit = m.target == ErrorTarget::kAny ||
                       positive(i) == (m.target == ErrorTarget::kPositive);
      (hit ? first : rest).push_back(i);
    }
    rng.Shuffle(std::span<std::size_t>(first));
    rng.Shuffle(std::span<std::size_t>(rest));
    first.insert(first.end(), rest.begin(), rest.end());
    const std::size_t k = BudgetCount(m.p_w0, n);
    for (std::size_t j = 0; j < k; ++j) error[first[j]] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    int reported = positive(i) ? 1 : 0;
    if (error[i]) {
      switch (m.error) {
        case ContaminationDraw::kOpposite:
          reported = 1 - reported;
          break;
        case ContaminationDraw::kZero:
          reported = 0;
          break;
        case ContaminationDraw::kOne:
          reported = 1;
          break;
        case ContaminationDraw::kCoin:
          reported = rng.Bernoulli(0.5) ? 1 : 0;
          break;
      }
    }
    records[i].followup_asked = true;
    records[i].followup_value = reported == 1 ? pop.support_max : 0.0;
  }
}

}  // namespace

double Population::TrueMean() const {
  if (members.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& m : members) sum += g(m.y_raw);
  return sum / static_cast<double>(members.size());
}

double Population::TrueProbabilityPositive() const {
  if (members.empty()) return 0.0;
  std::size_t k = 0;
  for (const auto& m : members) k += m.y_raw > 0.0 ? 1 : 0;
  return static_cast<double>(k) / static_cast<double>(members.size());
}

bool Population::IsBinary() const {
  return std::all_of(members.begin(), members.end(), [&](const Member& m) {
    return m.y_raw == 0.0 || m.y_raw == support_max;
  });
}

Population GeneratePopulation(std::size_t n, const PopulationConfig& config,
                              std::uint64_t seed) {
  if (n == 0) throw ValidationError("n", "population size must be at least 1");
  const double p_x = CheckProbability(config.p_x, "p_x");
  const double p_y = CheckProbability(config.p_y_given_x, "p_y_given_x");
  if (!std::isfinite(config.support_max) || config.support_max <= 0.0) {
    throw ValidationError("support_max", "support maximum must be positive");
  }
  Population pop;
  pop.support_max = config.support_max;
  pop.g = config.g.value_or(GFunction::LinearScaled(config.support_max));
  if (pop.g.support_max() != config.support_max) {
    throw ValidationError("g", "g must be defined on [0, support_max]");
  }
  pop.members.resize(n);
  Rng rng(seed);
  for (auto& m : pop.members) {
    m.x = rng.Bernoulli(p_x) ? 1 : 0;
    if (m.x == 1 && rng.Bernoulli(p_y)) {
      m.y_raw = config.shape == OutcomeShape::kBinary
                    ? config.support_max
                    : config.support_max * (1.0 - rng.Uniform());
    }
  }
  return pop;
}

Population SamplePopulation(const Population& pop, std::size_t n,
                            std::uint64_t seed) {
  if (n == 0) throw ValidationError("n", "sample size must be at least 1");
  if (pop.members.empty()) {
    throw ValidationError("population", "cannot sample an empty population");
  }
  Population out;
  out.support_max = pop.support_max;
  out.g = pop.g;
  out.members.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    out.members.push_back(pop.members[rng.Index(pop.members.size())]);
  }
  return out;
}

ObservedDataset ApplyDesign(const Population& pop, DesignOption option,
                            const ResponseModel& model, std::uint64_t seed) {
  if (pop.members.empty()) {
    throw ValidationError("population", "population is empty");
  }
  std::visit([](const auto& m) { ValidateModel(m); }, model);
  if (std::holds_alternative<MixtureModel>(model) &&
      option == DesignOption::kSkip) {
    throw ValidationError("model",
                          "the mixture model is defined for design all only");
  }

  ObservedDataset obs;
  obs.design = option;
  obs.model = model;
  obs.g = pop.g;
  obs.truth = {pop.TrueMean(), pop.TrueProbabilityPositive()};
  obs.records = BlankRecords(pop.members.size());
  if (option == DesignOption::kNone) return obs;

  if (const auto* nr = std::get_if<NonresponseModel>(&model)) {
    ApplyNonresponse(pop, option, *nr, seed, obs.records);
  } else if (const auto* mc = std::get_if<MisclassModel>(&model)) {
    ApplyMisclass(pop, option, *mc, seed, obs.records);
  } else {
    ApplyMixture(pop, std::get<MixtureModel>(model), seed, obs.records);
  }
  return obs;
}

IngestSchema SchemaFor(const ObservedDataset& obs) {
  IngestSchema schema;
  schema.g = obs.g;
  schema.design = obs.design;
  return schema;
}

ScenarioObservables EmpiricalQuantities(const std::vector<MicroRecord>& records,
                                        const IngestSchema& schema,
                                        const ResponseModel& model) {
  if (schema.design == DesignOption::kNone) {
    throw ValidationError("design",
                          "no quantities are observable under design none");
  }
  const bool skip = schema.design == DesignOption::kSkip;
  if (std::holds_alternative<NonresponseModel>(model)) {
    if (skip) return ComputeNonresponseSkip(records, schema);
    return ComputeNonresponseAll(records, schema);
  }
  const double code = schema.support_max();
  if (const auto* mc = std::get_if<MisclassModel>(&model)) {
    const ErrorAssumption a{mc->bound, mc->lambda_budget};
    if (skip) return ComputeMisclassSkip(records, schema, code, a);
    return ComputeMisclassAll(records, schema, code, a);
  }
  const auto& mix = std::get<MixtureModel>(model);
  return ComputeMisclassAll(records, schema, code,
                            MixtureToMisclass({mix.lambda, mix.independent}));
}

ScenarioObservables EmpiricalQuantities(const ObservedDataset& obs,
                                        const GFunction& g) {
  auto schema = SchemaFor(obs);
  schema.g = g;
  return EmpiricalQuantities(obs.records, schema, obs.model);
}

UnitInterval RegionFor(const ScenarioObservables& s) {
  struct Visitor {
    UnitInterval operator()(const NonresponseAllScenario& v) const {
      return RegionNonresponseAll(v);
    }
    UnitInterval operator()(const NonresponseSkipScenario& v) const {
      return RegionNonresponseSkip(v);
    }
    UnitInterval operator()(const MisclassAllScenario& v) const {
      return RegionMisclassAll(v);
    }
    UnitInterval operator()(const MisclassSkipScenario& v) const {
      return RegionMisclassSkip(v);
    }
  };
  return std::visit(Visitor{}, s);
}

double TruthFor(const ScenarioObservables& s, const TruthSummary& truth) {
  const bool nonresponse = std::holds_alternative<NonresponseAllScenario>(s) ||
                           std::holds_alternative<NonresponseSkipScenario>(s);
  return nonresponse ? truth.mean_g : truth.p_y1;
}

bool CoverageCheck(double truth, const UnitInterval& region, double eps) {
  return region.Contains(truth, eps);
}

}  // namespace skipseq
