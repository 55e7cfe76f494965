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

#include "skipseq/decision.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skipseq {

std::string_view ToString(DesignOption o) {
  switch (o) {
    case DesignOption::kAll:
      return "all";
    case DesignOption::kSkip:
      return "skip";
    case DesignOption::kNone:
      return "none";
  }
  return "?";
}

DesignOption ParseDesignOption(std::string_view s) {
  for (auto o : kAllOptions) {
    if (ToString(o) == s) return o;
  }
  throw ValidationError("option", "unknown design option '" + std::string(s) +
                                      "' (expected all, skip or none)");
}

std::vector<DesignOption> OptionSet::ToVector() const {
  std::vector<DesignOption> out;
  for (auto o : kAllOptions) {
    if (Contains(o)) out.push_back(o);
  }
  return out;
}

std::string OptionSet::ToString() const {
  std::string out = "{";
  for (auto o : ToVector()) {
    if (out.size() > 1) out += ",";
    out += skipseq::ToString(o);
  }
  return out + "}";
}

void Validate(const DecisionScenario& scenario) {
  if (const auto* nr = std::get_if<NonresponseDecision>(&scenario)) {
    Validate(nr->all);
    Validate(nr->skip);
    return;
  }
  const auto& mc = std::get<MisclassDecision>(scenario);
  Validate(mc.all);
  Validate(mc.skip);
  if (mc.all.assumption.variant != mc.skip.assumption.variant) {
    throw ValidationError(
        "assumption",
        "All and Skip designs must use the same error-bound family");
  }
}

std::vector<std::string> PlausibilityWarnings(const DecisionScenario& scenario) {
  std::vector<std::string> out;
  if (const auto* mc = std::get_if<MisclassDecision>(&scenario)) {
    if (mc->all.assumption.lambda > mc->skip.assumption.lambda) {
      out.push_back(
          "lambda for option All exceeds lambda for option Skip; errors in the "
          "pair (x, y) are ordinarily at least as likely as errors in y alone");
    }
  }
  return out;
}

LossBreakdown Loss(DesignOption option, const DecisionScenario& scenario) {
  Validate(scenario);
  LossBreakdown out;
  out.option = option;
  switch (option) {
    case DesignOption::kNone:
      out.cost_fraction = 0.0;
      out.width = RegionNone().width();
      return out;
    case DesignOption::kAll:
      out.cost_fraction = 1.0;
      if (const auto* nr = std::get_if<NonresponseDecision>(&scenario)) {
        out.width = RegionNonresponseAll(nr->all).width();
      } else {
        out.width =
            RegionMisclassAll(std::get<MisclassDecision>(scenario).all).width();
      }
      return out;
    case DesignOption::kSkip:
      if (const auto* nr = std::get_if<NonresponseDecision>(&scenario)) {
        out.cost_fraction = Validate(nr->skip).p_asked;
        out.width = RegionNonresponseSkip(nr->skip).width();
      } else {
        const auto& skip = std::get<MisclassDecision>(scenario).skip;
        out.cost_fraction = Validate(skip).p_x_report;
        out.width = RegionMisclassSkip(skip).width();
      }
      return out;
  }
  return out;
}

std::array<LossBreakdown, 3> Losses(const DecisionScenario& scenario) {
  return {Loss(DesignOption::kAll, scenario), Loss(DesignOption::kSkip, scenario),
          Loss(DesignOption::kNone, scenario)};
}

DesignOption PreferredOption(OptionSet set) {
  for (auto o : {DesignOption::kNone, DesignOption::kSkip, DesignOption::kAll}) {
    if (set.Contains(o)) return o;
  }
  throw std::logic_error("PreferredOption: empty option set");
}

OptionSet Minimizers(const std::array<LossBreakdown, 3>& losses, double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw ValidationError("gamma", "gamma must be a finite nonnegative number");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& l : losses) best = std::min(best, l.LossAt(gamma));
  OptionSet out;
  for (const auto& l : losses) {
    if (l.LossAt(gamma) <= best + kTieTolerance) out.Insert(l.option);
  }
  return out;
}

Decision Decide(double gamma, const DecisionScenario& scenario) {
  Decision d;
  d.losses = Losses(scenario);
  d.minimizers = Minimizers(d.losses, gamma);
  d.chosen = PreferredOption(d.minimizers);
  return d;
}

std::optional<std::pair<double, double>> GammaPartition::ChosenRange(
    DesignOption o) const {
  std::optional<std::pair<double, double>> out;
  for (const auto& c : cells) {
    if (c.chosen != o) continue;
    if (!out) {
      out.emplace(c.lo, c.hi);
    } else {
      out->first = std::min(out->first, c.lo);
      out->second = std::max(out->second, c.hi);
    }
  }
  return out;
}

GammaPartition PartitionGamma(const std::array<LossBreakdown, 3>& losses,
                              double gamma_max) {
  if (!std::isfinite(gamma_max) || gamma_max <= 0.0) {
    throw ValidationError("gamma_max", "gamma_max must be positive and finite");
  }
  // Candidate boundaries: pairwise intersections of the loss lines.
  std::vector<double> candidates = {0.0, gamma_max};
  for (std::size_t i = 0; i < losses.size(); ++i) {
    for (std::size_t j = i + 1; j < losses.size(); ++j) {
      const double df = losses[i].cost_fraction - losses[j].cost_fraction;
      if (df == 0.0) continue;
      const double g = (losses[j].width - losses[i].width) / df;
      if (g > 0.0 && g < gamma_max) candidates.push_back(g);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  GammaPartition out;
  out.gamma_max = gamma_max;
  for (std::size_t k = 0; k + 1 < candidates.size(); ++k) {
    GammaCell cell;
    cell.lo = candidates[k];
    cell.hi = candidates[k + 1];
    cell.optimal = Minimizers(losses, 0.5 * (cell.lo + cell.hi));
    cell.chosen = PreferredOption(cell.optimal);
    // Intersections of two dominated lines are not real boundaries.
    if (!out.cells.empty() && out.cells.back().optimal == cell.optimal) {
      out.cells.back().hi = cell.hi;
    } else {
      out.cells.push_back(cell);
    }
  }
  for (std::size_t k = 1; k < out.cells.size(); ++k) {
    out.breakpoints.push_back(out.cells[k].lo);
  }
  return out;
}

GammaPartition PartitionGamma(const DecisionScenario& scenario,
                              double gamma_max) {
  return PartitionGamma(Losses(scenario), gamma_max);
}

std::string_view ToString(Table1Regime r) {
  switch (r) {
    case Table1Regime::kUninformative:
      return "1-lambda<=P<=lambda";
    case Table1Regime::kLow:
      return "P<=min{lambda,1-lambda}";
    case Table1Regime::kInterior:
      return "lambda<=P<=1-lambda";
    case Table1Regime::kHigh:
      return "P>=max{lambda,1-lambda}";
  }
  return "?";
}

Table1Entry Table1Width(double p_report, const ErrorAssumption& raw) {
  const double p = CheckProbability(p_report, "p_report");
  const auto a = Validate(raw);
  const double lam = a.lambda;
  const bool joint = a.variant == ErrorBound::kJoint;
  if (p <= std::min(lam, 1.0 - lam)) {
    return {Table1Regime::kLow, joint ? p + lam : p / (1.0 - lam)};
  }
  if (p >= std::max(lam, 1.0 - lam)) {
    return {Table1Regime::kHigh,
            joint ? 1.0 - p + lam : (1.0 - p) / (1.0 - lam)};
  }
  if (lam <= p && p <= 1.0 - lam) {
    return {Table1Regime::kInterior, joint ? 2.0 * lam : lam / (1.0 - lam)};
  }
  return {Table1Regime::kUninformative, 1.0};
}

namespace {

// Large enough that every Skip-to-None switch of interest lies inside.
constexpr double kTable2GammaMax = 1000.0;

ChoiceRanges RangesFor(const Table2Inputs& in, const LambdaPair& pair,
                       ErrorBound family) {
  MisclassDecision d;
  d.all = {in.p_report_all, {family, pair.lambda_all}};
  d.skip = {in.p_report_skip, in.p_x_report, {family, pair.lambda_skip}};
  const auto partition = PartitionGamma(DecisionScenario{d}, kTable2GammaMax);
  return {partition.ChosenRange(DesignOption::kAll),
          partition.ChosenRange(DesignOption::kSkip)};
}

}  // namespace

std::vector<Table2Row> ReproduceTable2(const Table2Inputs& inputs,
                                       std::span<const LambdaPair> pairs) {
  std::vector<Table2Row> rows;
  rows.reserve(pairs.size());
  for (const auto& pair : pairs) {
    rows.push_back({pair.lambda_all, pair.lambda_skip,
                    RangesFor(inputs, pair, ErrorBound::kJoint),
                    RangesFor(inputs, pair, ErrorBound::kPerValue)});
  }
  return rows;
}

std::span<const PublishedTable2Row> PublishedTable2() {
  static constexpr std::optional<double> kNever = std::nullopt;
  static const PublishedTable2Row kRows[] = {
      {0.100, 0.100, {kNever, 0.000, 8.989}, {kNever, 0.000, 9.988}},
      {0.100, 0.125, {0.027, 0.027, 8.717}, {0.003, 0.003, 9.963}},
      {0.100, 0.170, {0.077, 0.077, 8.228}, {0.007, 0.007, 9.914}},
      {0.100, 0.200, {0.110, 0.110, 7.902}, {0.011, 0.011, 9.878}},
      {0.100, 0.360, {0.286, 0.286, 6.163}, {0.036, 0.036, 9.630}},
      {0.100, 0.400, {0.330, 0.330, 5.728}, {0.045, 0.045, 9.547}},
      {0.125, 0.125, {kNever, 0.000, 8.717}, {kNever, 0.000, 9.963}},
      {0.125, 0.170, {0.050, 0.050, 8.228}, {0.005, 0.005, 9.914}},
      {0.125, 0.200, {0.083, 0.083, 7.902}, {0.008, 0.008, 9.878}},
      {0.125, 0.360, {0.259, 0.259, 6.163}, {0.034, 0.034, 9.630}},
      {0.125, 0.400, {0.303, 0.303, 5.728}, {0.042, 0.042, 9.547}},
      {0.170, 0.170, {kNever, 0.000, 8.228}, {kNever, 0.000, 9.914}},
      {0.170, 0.200, {0.033, 0.033, 7.902}, {0.004, 0.004, 9.878}},
      {0.170, 0.360, {0.209, 0.209, 6.163}, {0.029, 0.029, 9.630}},
      {0.170, 0.400, {0.253, 0.253, 5.728}, {0.037, 0.037, 9.547}},
      {0.200, 0.200, {kNever, 0.000, 7.902}, {kNever, 0.000, 9.878}},
      {0.200, 0.360, {0.176, 0.176, 6.163}, {0.025, 0.025, 9.630}},
      {0.200, 0.400, {0.220, 0.220, 5.728}, {0.033, 0.033, 9.547}},
      {0.360, 0.360, {kNever, 0.000, 6.163}, {kNever, 0.000, 9.630}},
      {0.360, 0.400, {0.044, 0.044, 5.728}, {0.008, 0.008, 9.547}},
      {0.400, 0.400, {kNever, 0.000, 5.728}, {kNever, 0.000, 9.547}},
  };
  return kRows;
}

namespace {

void CompareFamily(const PublishedChoice& published, const ChoiceRanges& got,
                   const PublishedTable2Row& row, const std::string& family,
                   double tol, std::vector<Table2CellCheck>& out) {
  auto add = [&](std::string cell, std::optional<double> want,
                 std::optional<double> have) {
    bool pass = want.has_value() == have.has_value();
    if (pass && want) pass = std::abs(*want - *have) <= tol;
    out.push_back({row.lambda_all, row.lambda_skip, family, std::move(cell), want,
                   have, pass});
  };
  // "Never" for All means All is not strictly optimal on any gamma > 0.
  std::optional<double> all_upper;
  if (got.all) all_upper = got.all->second;
  add("all", published.all_upper, all_upper);
  add("skip_lo", published.skip_lo,
      got.skip ? std::optional<double>(got.skip->first) : std::nullopt);
  add("skip_hi", published.skip_hi,
      got.skip ? std::optional<double>(got.skip->second) : std::nullopt);
}

}  // namespace

std::vector<Table2CellCheck> CompareTable2(std::span<const Table2Row> rows,
                                           double tolerance) {
  std::vector<Table2CellCheck> out;
  for (const auto& pub : PublishedTable2()) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) {
      return std::abs(r.lambda_all - pub.lambda_all) < 1e-12 &&
             std::abs(r.lambda_skip - pub.lambda_skip) < 1e-12;
    });
    if (it == rows.end()) {
      for (const char* fam : {"joint", "per-value"}) {
        for (const char* cell : {"all", "skip_lo", "skip_hi"}) {
          out.push_back({pub.lambda_all, pub.lambda_skip, fam, cell,
                         std::nullopt, std::nullopt, false});
        }
      }
      continue;
    }
    CompareFamily(pub.joint, it->joint, pub, "joint", tolerance, out);
    CompareFamily(pub.per_value, it->per_value, pub, "per-value", tolerance,
                  out);
  }
  return out;
}

}  // namespace skipseq
