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

#include "skipseq/scenario_json.h"

#include <string>

namespace skipseq {

using nlohmann::ordered_json;

namespace {

ordered_json AssumptionJson(const ErrorAssumption& a) {
  return {{"assumption", std::string(ToString(a.variant))}, {"lambda", a.lambda}};
}

ErrorBound ParseBound(const std::string& s) {
  if (s == "joint") return ErrorBound::kJoint;
  if (s == "per-value") return ErrorBound::kPerValue;
  throw ValidationError("assumption", "unknown error bound '" + s + "'");
}

double Number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ValidationError(key, "missing or non-numeric");
  }
  return j.at(key).get<double>();
}

ordered_json RangeJson(const std::optional<std::pair<double, double>>& r) {
  if (!r) return nullptr;
  return {{"lo", r->first}, {"hi", r->second}};
}

ordered_json ChoiceJson(const ChoiceRanges& c) {
  return {{"all", RangeJson(c.all)}, {"skip", RangeJson(c.skip)}};
}

}  // namespace

ordered_json ToJson(const UnitInterval& r) {
  return {{"lo", r.lo()}, {"hi", r.hi()}, {"width", r.width()}};
}

ordered_json ToJson(const ScenarioObservables& s) {
  struct Visitor {
    ordered_json operator()(const NonresponseAllScenario& v) const {
      return {{"kind", "nr-all"},
              {"p_nonresp", v.p_nonresp},
              {"mean_resp", v.mean_resp}};
    }
    ordered_json operator()(const NonresponseSkipScenario& v) const {
      return {{"kind", "nr-skip"},
              {"p_y_resp", v.p_y_resp},
              {"mean_resp", v.mean_resp},
              {"p_x_resp_y_nonresp", v.p_x_resp_y_nonresp},
              {"p_x_nonresp", v.p_x_nonresp},
              {"p_asked", v.p_asked}};
    }
    ordered_json operator()(const MisclassAllScenario& v) const {
      ordered_json j = {{"kind", "mc-all"}, {"p_report", v.p_report}};
      j.update(AssumptionJson(v.assumption));
      return j;
    }
    ordered_json operator()(const MisclassSkipScenario& v) const {
      ordered_json j = {{"kind", "mc-skip"},
                        {"p_report", v.p_report},
                        {"p_x_report", v.p_x_report}};
      j.update(AssumptionJson(v.assumption));
      return j;
    }
  };
  return std::visit(Visitor{}, s);
}

ScenarioObservables ScenarioFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ValidationError("kind", "scenario document needs a string 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "nr-all") {
    return NonresponseAllScenario{Number(j, "p_nonresp"), Number(j, "mean_resp")};
  }
  if (kind == "nr-skip") {
    NonresponseSkipScenario s;
    s.p_y_resp = Number(j, "p_y_resp");
    s.mean_resp = Number(j, "mean_resp");
    s.p_x_resp_y_nonresp = Number(j, "p_x_resp_y_nonresp");
    s.p_x_nonresp = Number(j, "p_x_nonresp");
    s.p_asked = Number(j, "p_asked");
    return s;
  }
  auto assumption = [&] {
    if (!j.contains("assumption") || !j.at("assumption").is_string()) {
      throw ValidationError("assumption", "missing error-bound family");
    }
    return ErrorAssumption{ParseBound(j.at("assumption").get<std::string>()),
                           Number(j, "lambda")};
  };
  if (kind == "mc-all") {
    return MisclassAllScenario{Number(j, "p_report"), assumption()};
  }
  if (kind == "mc-skip") {
    return MisclassSkipScenario{Number(j, "p_report"), Number(j, "p_x_report"),
                                assumption()};
  }
  throw ValidationError("kind", "unknown scenario kind '" + kind + "'");
}

ordered_json ToJson(const LossBreakdown& l) {
  return {{"option", std::string(ToString(l.option))},
          {"cost_fraction", l.cost_fraction},
          {"width", l.width}};
}

ordered_json ToJson(const Decision& d) {
  ordered_json losses = ordered_json::array();
  for (const auto& l : d.losses) losses.push_back(ToJson(l));
  ordered_json minimizers = ordered_json::array();
  for (auto o : d.minimizers.ToVector()) minimizers.push_back(std::string(ToString(o)));
  return {{"chosen", std::string(ToString(d.chosen))},
          {"minimizers", minimizers},
          {"losses", losses}};
}

ordered_json ToJson(const GammaPartition& p) {
  ordered_json cells = ordered_json::array();
  for (const auto& c : p.cells) {
    ordered_json optimal = ordered_json::array();
    for (auto o : c.optimal.ToVector()) optimal.push_back(std::string(ToString(o)));
    cells.push_back({{"lo", c.lo},
                     {"hi", c.hi},
                     {"optimal", optimal},
                     {"chosen", std::string(ToString(c.chosen))}});
  }
  return {{"gamma_max", p.gamma_max}, {"breakpoints", p.breakpoints}, {"cells", cells}};
}

ordered_json ToJson(const Table2Row& row) {
  return {{"lambda_all", row.lambda_all},
          {"lambda_skip", row.lambda_skip},
          {"joint", ChoiceJson(row.joint)},
          {"per_value", ChoiceJson(row.per_value)}};
}

}  // namespace skipseq
