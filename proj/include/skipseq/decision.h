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

// Linear cost-vs-informativeness loss for the three design options, the
// loss-minimizing choice at a given gamma, and the exact partition of the
// gamma axis into intervals on which each option is optimal.

#ifndef SKIPSEQ_DECISION_H_
#define SKIPSEQ_DECISION_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skipseq/identification.h"

namespace skipseq {

// Loss values within this distance are treated as tied.
inline constexpr double kTieTolerance = 1e-12;

enum class DesignOption { kAll = 0, kSkip = 1, kNone = 2 };

inline constexpr std::array<DesignOption, 3> kAllOptions = {
    DesignOption::kAll, DesignOption::kSkip, DesignOption::kNone};

std::string_view ToString(DesignOption o);
// Accepts "all", "skip", "none" (case-sensitive). Throws ValidationError.
DesignOption ParseDesignOption(std::string_view s);

// Small set of design options.
class OptionSet {
 public:
  OptionSet() = default;
  OptionSet(std::initializer_list<DesignOption> options) {
    for (auto o : options) Insert(o);
  }

  void Insert(DesignOption o) { bits_ |= Bit(o); }
  bool Contains(DesignOption o) const { return (bits_ & Bit(o)) != 0; }
  bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcount(bits_); }
  std::vector<DesignOption> ToVector() const;
  std::string ToString() const;  // e.g. "{skip,none}"

  friend bool operator==(OptionSet, OptionSet) = default;

 private:
  static std::uint8_t Bit(DesignOption o) {
    return static_cast<std::uint8_t>(1u << static_cast<int>(o));
  }
  std::uint8_t bits_ = 0;
};

struct NonresponseDecision {
  NonresponseAllScenario all;
  NonresponseSkipScenario skip;
};

// Both designs must be analysed under the same family of error bound.
struct MisclassDecision {
  MisclassAllScenario all;
  MisclassSkipScenario skip;
};

using DecisionScenario = std::variant<NonresponseDecision, MisclassDecision>;

// Throws ValidationError on invalid observables or when the two designs of a
// misclassification scenario use different error-bound families.
void Validate(const DecisionScenario& scenario);

// Non-fatal plausibility notes, e.g. when lambda for All exceeds lambda for
// Skip (joint errors in (x, y) should be at least as common as errors in y).
std::vector<std::string> PlausibilityWarnings(const DecisionScenario& scenario);

struct LossBreakdown {
  DesignOption option = DesignOption::kNone;
  double cost_fraction = 0.0;  // share of respondents asked the item
  double width = 1.0;          // width of the identification region

  double LossAt(double gamma) const { return gamma * cost_fraction + width; }
};

LossBreakdown Loss(DesignOption option, const DecisionScenario& scenario);
std::array<LossBreakdown, 3> Losses(const DecisionScenario& scenario);

struct Decision {
  DesignOption chosen = DesignOption::kNone;
  OptionSet minimizers;
  std::array<LossBreakdown, 3> losses;
};

// Cheapest option in `set` (None before Skip before All).
DesignOption PreferredOption(OptionSet set);

// Minimizers of the three affine losses at gamma. Throws ValidationError on
// negative or non-finite gamma.
OptionSet Minimizers(const std::array<LossBreakdown, 3>& losses, double gamma);

Decision Decide(double gamma, const DecisionScenario& scenario);

struct GammaCell {
  double lo = 0.0;
  double hi = 0.0;
  OptionSet optimal;  // minimizer set in the open interior of the cell
  DesignOption chosen = DesignOption::kNone;
};

struct GammaPartition {
  double gamma_max = 0.0;
  std::vector<double> breakpoints;  // interior cell boundaries, ascending
  std::vector<GammaCell> cells;     // tile [0, gamma_max]

  // [lo, hi] of the union of cells where `option` is chosen, or nullopt.
  std::optional<std::pair<double, double>> ChosenRange(DesignOption o) const;
};

GammaPartition PartitionGamma(const std::array<LossBreakdown, 3>& losses,
                              double gamma_max);
GammaPartition PartitionGamma(const DecisionScenario& scenario,
                              double gamma_max = 10.0);

// The four regimes of (p_report, lambda) that fix the closed form of a
// misclassification region width.
enum class Table1Regime {
  kUninformative,  // 1 - lambda <= p <= lambda
  kLow,            // p <= min(lambda, 1 - lambda)
  kInterior,       // lambda <= p <= 1 - lambda
  kHigh,           // p >= max(lambda, 1 - lambda)
};

std::string_view ToString(Table1Regime r);

struct Table1Entry {
  Table1Regime regime;
  double width;
};

// Closed-form width by regime; agrees with MisclassRegion(...).width().
Table1Entry Table1Width(double p_report, const ErrorAssumption& assumption);

// --- Reproduction of the gamma-threshold table over (lambda_A, lambda_S). ---

struct ChoiceRanges {
  std::optional<std::pair<double, double>> all;   // nullopt: never chosen
  std::optional<std::pair<double, double>> skip;
};

struct Table2Row {
  double lambda_all = 0.0;
  double lambda_skip = 0.0;
  ChoiceRanges joint;      // joint error bounds for both designs
  ChoiceRanges per_value;  // per-value error bounds for both designs
};

struct LambdaPair {
  double lambda_all;
  double lambda_skip;
};

struct Table2Inputs {
  double p_report_skip = 0.073;
  double p_x_report = 0.092;
  double p_report_all = 0.073;
};

std::vector<Table2Row> ReproduceTable2(const Table2Inputs& inputs,
                                       std::span<const LambdaPair> pairs);

// Published thresholds for the bathing/showering ADL example, three decimals.
// An absent `all` entry means option All is never chosen.
struct PublishedChoice {
  std::optional<double> all_upper;
  double skip_lo;
  double skip_hi;
};
struct PublishedTable2Row {
  double lambda_all;
  double lambda_skip;
  PublishedChoice joint;
  PublishedChoice per_value;
};
std::span<const PublishedTable2Row> PublishedTable2();

struct Table2CellCheck {
  double lambda_all;
  double lambda_skip;
  std::string family;  // "joint" or "per-value"
  std::string cell;    // "all" or "skip_lo" or "skip_hi"
  std::optional<double> published;  // nullopt = "Never"
  std::optional<double> computed;
  bool pass;
};

// Compares a reproduction against PublishedTable2() cell by cell.
std::vector<Table2CellCheck> CompareTable2(std::span<const Table2Row> rows,
                                           double tolerance = 5e-4);

}  // namespace skipseq

#endif  // SKIPSEQ_DECISION_H_
