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

#include "skipseq/identification.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skipseq {
namespace {

std::string Describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double CheckProbability(double value, std::string_view field) {
  if (std::isnan(value) || value < -kProbabilitySlack ||
      value > 1.0 + kProbabilitySlack) {
    throw ValidationError(std::string(field),
                          "probability " + Describe(value) + " outside [0, 1]");
  }
  return std::clamp(value, 0.0, 1.0);
}

UnitInterval::UnitInterval(double lo, double hi)
    : lo_(CheckProbability(lo, "interval.lo")),
      hi_(CheckProbability(hi, "interval.hi")) {
  if (lo_ > hi_) {
    if (lo_ - hi_ > kProbabilitySlack) {
      throw ValidationError("interval", "lo " + Describe(lo_) + " exceeds hi " +
                                            Describe(hi_));
    }
    hi_ = lo_;
  }
}

NonresponseAllScenario Validate(const NonresponseAllScenario& s) {
  return {CheckProbability(s.p_nonresp, "p_nonresp"),
          CheckProbability(s.mean_resp, "mean_resp")};
}

NonresponseSkipScenario Validate(const NonresponseSkipScenario& s) {
  NonresponseSkipScenario out;
  out.p_y_resp = CheckProbability(s.p_y_resp, "p_y_resp");
  out.mean_resp = CheckProbability(s.mean_resp, "mean_resp");
  out.p_x_resp_y_nonresp =
      CheckProbability(s.p_x_resp_y_nonresp, "p_x_resp_y_nonresp");
  out.p_x_nonresp = CheckProbability(s.p_x_nonresp, "p_x_nonresp");
  out.p_asked = CheckProbability(s.p_asked, "p_asked");
  if (std::abs(out.p_asked - (out.p_y_resp + out.p_x_resp_y_nonresp)) >
      kAccountingTolerance) {
    throw ValidationError(
        "p_asked", "accounting identity violated: p_asked " +
                       Describe(out.p_asked) + " != p_y_resp + " +
                       "p_x_resp_y_nonresp " +
                       Describe(out.p_y_resp + out.p_x_resp_y_nonresp));
  }
  if (out.p_asked + out.p_x_nonresp > 1.0 + kAccountingTolerance) {
    throw ValidationError("p_x_nonresp",
                          "p_asked + p_x_nonresp exceeds 1 (" +
                              Describe(out.p_asked + out.p_x_nonresp) + ")");
  }
  return out;
}

ErrorAssumption Validate(const ErrorAssumption& a) {
  if (std::isnan(a.lambda) || a.lambda < 0.0 || a.lambda >= 1.0) {
    throw ValidationError("lambda",
                          "error bound " + Describe(a.lambda) +
                              " must satisfy 0 <= lambda < 1");
  }
  return a;
}

MisclassAllScenario Validate(const MisclassAllScenario& s) {
  return {CheckProbability(s.p_report, "p_report"), Validate(s.assumption)};
}

MisclassSkipScenario Validate(const MisclassSkipScenario& s) {
  MisclassSkipScenario out;
  out.p_report = CheckProbability(s.p_report, "p_report");
  out.p_x_report = CheckProbability(s.p_x_report, "p_x_report");
  out.assumption = Validate(s.assumption);
  if (out.p_report > out.p_x_report + kProbabilitySlack) {
    throw ValidationError("p_report",
                          "skip logic violated: p_report " +
                              Describe(out.p_report) + " exceeds p_x_report " +
                              Describe(out.p_x_report));
  }
  return out;
}

UnitInterval RegionNonresponseAll(const NonresponseAllScenario& raw) {
  const auto s = Validate(raw);
  const double lo = s.mean_resp * (1.0 - s.p_nonresp);
  return UnitInterval(lo, lo + s.p_nonresp);
}

UnitInterval RegionNonresponseSkip(const NonresponseSkipScenario& raw) {
  const auto s = Validate(raw);
  const double lo = s.mean_resp * s.p_y_resp;
  return UnitInterval(lo, lo + s.p_x_resp_y_nonresp + s.p_x_nonresp);
}

UnitInterval RegionNone() { return UnitInterval::Full(); }

UnitInterval MisclassRegion(double p_report, const ErrorAssumption& raw) {
  const double p = CheckProbability(p_report, "p_report");
  const auto a = Validate(raw);
  double lo = p - a.lambda;
  double hi = p + a.lambda;
  if (a.variant == ErrorBound::kPerValue) {
    lo = (p - a.lambda) / (1.0 - a.lambda);
    hi = p / (1.0 - a.lambda);
  }
  return UnitInterval(std::max(lo, 0.0), std::min(hi, 1.0));
}

UnitInterval RegionMisclassAll(const MisclassAllScenario& raw) {
  const auto s = Validate(raw);
  return MisclassRegion(s.p_report, s.assumption);
}

UnitInterval RegionMisclassSkip(const MisclassSkipScenario& raw) {
  const auto s = Validate(raw);
  return MisclassRegion(s.p_report, s.assumption);
}

ErrorAssumption MixtureToMisclass(const MixtureAssumption& m) {
  const ErrorAssumption out{
      m.independent_errors ? ErrorBound::kPerValue : ErrorBound::kJoint,
      m.lambda};
  return Validate(out);
}

std::string_view ToString(ErrorBound b) {
  return b == ErrorBound::kJoint ? "joint" : "per-value";
}

}  // namespace skipseq
