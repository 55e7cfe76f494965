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

// JSON documents for scenarios and results. Scenario documents are flat
// key/value objects with a "kind" discriminator:
//
//   {"kind": "nr-skip", "p_y_resp": ..., "mean_resp": ..., ...}
//
// Keys are part of the command-line output contract; do not rename them.

#ifndef SKIPSEQ_SCENARIO_JSON_H_
#define SKIPSEQ_SCENARIO_JSON_H_

#include <json.hpp>

#include "skipseq/decision.h"
#include "skipseq/identification.h"
#include "skipseq/simulator.h"

namespace skipseq {

nlohmann::ordered_json ToJson(const UnitInterval& r);
nlohmann::ordered_json ToJson(const ScenarioObservables& s);
nlohmann::ordered_json ToJson(const LossBreakdown& l);
nlohmann::ordered_json ToJson(const Decision& d);
nlohmann::ordered_json ToJson(const GammaPartition& p);
nlohmann::ordered_json ToJson(const Table2Row& row);

// Inverse of ToJson(ScenarioObservables). Throws ValidationError on missing
// keys or an unknown kind.
ScenarioObservables ScenarioFromJson(const nlohmann::json& j);

}  // namespace skipseq

#endif  // SKIPSEQ_SCENARIO_JSON_H_
