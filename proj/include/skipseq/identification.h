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

// Identification regions for a population mean E[g(y)] (nonresponse) and
// for P(y = 1) (misclassification) under the All and Skip questionnaire
// designs. Every function here is pure.

#ifndef SKIPSEQ_IDENTIFICATION_H_
#define SKIPSEQ_IDENTIFICATION_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace skipseq {

// Probabilities may miss [0, 1] by at most this much; such values are
// clamped. Anything further out is a ValidationError.
inline constexpr double kProbabilitySlack = 1e-12;

// Tolerance on the Skip accounting identity p_asked = p_y_resp + p_x_resp_y_nonresp.
inline constexpr double kAccountingTolerance = 1e-9;

// Rejected input. field() names the offending quantity.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Returns `value` clamped to [0, 1] if it lies within kProbabilitySlack of
// the unit interval, throws ValidationError naming `field` otherwise.
double CheckProbability(double value, std::string_view field);

// A closed subinterval [lo, hi] of [0, 1].
class UnitInterval {
 public:
  // Throws ValidationError unless 0 <= lo <= hi <= 1 (up to kProbabilitySlack).
  UnitInterval(double lo, double hi);

  static UnitInterval Full() { return UnitInterval(0.0, 1.0); }
  static UnitInterval Point(double v) { return UnitInterval(v, v); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }

  bool Contains(double v, double eps = 0.0) const {
    return lo_ - eps <= v && v <= hi_ + eps;
  }
  bool IsSubsetOf(const UnitInterval& other, double eps = 0.0) const {
    return other.lo_ - eps <= lo_ && hi_ <= other.hi_ + eps;
  }

  friend bool operator==(const UnitInterval&, const UnitInterval&) = default;

 private:
  double lo_;
  double hi_;
};

// Observables under option All with nonresponse.
struct NonresponseAllScenario {
  double p_nonresp = 0.0;  // P(z_y = 0)
  double mean_resp = 0.0;  // E[g(y) | z_y = 1]
};

// Observables under option Skip with nonresponse.
struct NonresponseSkipScenario {
  double p_y_resp = 0.0;            // P(z_y = 1)
  double mean_resp = 0.0;           // E[g(y) | z_y = 1]
  double p_x_resp_y_nonresp = 0.0;  // P(z_x = 1, z_y = 0, x = 1)
  double p_x_nonresp = 0.0;         // P(z_x = 0)
  double p_asked = 0.0;             // P(z_x = 1, x = 1)
};

enum class ErrorBound {
  kJoint,     // P(reported == true) >= 1 - lambda
  kPerValue,  // P(reported == k | true == k) >= 1 - lambda for every k
};

struct ErrorAssumption {
  ErrorBound variant = ErrorBound::kJoint;
  double lambda = 0.0;  // in [0, 1)

  friend bool operator==(const ErrorAssumption&, const ErrorAssumption&) = default;
};

struct MisclassAllScenario {
  double p_report = 0.0;  // P(reported y = 1)
  ErrorAssumption assumption;
};

struct MisclassSkipScenario {
  double p_report = 0.0;    // P(reported y = 1)
  double p_x_report = 0.0;  // P(reported x = 1); never below p_report
  ErrorAssumption assumption;
};

// Mixture (corrupted / contaminated sampling) model: reported = w*y + (1-w)*e.
struct MixtureAssumption {
  double lambda = 0.0;              // upper bound on P(w = 0), in [0, 1)
  bool independent_errors = false;  // y independent of w
};

// Validation. Each returns a copy with probabilities clamped into [0, 1].
NonresponseAllScenario Validate(const NonresponseAllScenario& s);
NonresponseSkipScenario Validate(const NonresponseSkipScenario& s);
MisclassAllScenario Validate(const MisclassAllScenario& s);
MisclassSkipScenario Validate(const MisclassSkipScenario& s);
ErrorAssumption Validate(const ErrorAssumption& a);

UnitInterval RegionNonresponseAll(const NonresponseAllScenario& s);
UnitInterval RegionNonresponseSkip(const NonresponseSkipScenario& s);
UnitInterval RegionNone();
UnitInterval RegionMisclassAll(const MisclassAllScenario& s);
UnitInterval RegionMisclassSkip(const MisclassSkipScenario& s);

// [0,1] intersected with the error-bound band around `p_report`. Shared by
// both designs; the Skip design adds only the skip-logic precondition.
UnitInterval MisclassRegion(double p_report, const ErrorAssumption& a);

ErrorAssumption MixtureToMisclass(const MixtureAssumption& m);

std::string_view ToString(ErrorBound b);

}  // namespace skipseq

#endif  // SKIPSEQ_IDENTIFICATION_H_
