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

// Respondent-level microdata: parsing delimited text into MicroRecords and
// reducing records to the observable scenario quantities.
//
// File layout: UTF-8 delimited text, header row first, one row per
// respondent. Required columns (names configurable):
//
//   respondent_id,opening_asked,opening_value,followup_asked,followup_value
//
// Booleans are 0/1 (true/false also accepted). A missing answer is the
// sentinel (empty field by default). Extra columns are kept as passthrough
// metadata and never enter a computation.

#ifndef SKIPSEQ_INGEST_H_
#define SKIPSEQ_INGEST_H_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "skipseq/decision.h"
#include "skipseq/gfunction.h"
#include "skipseq/identification.h"

namespace skipseq {

struct MicroRecord {
  std::string respondent_id;
  bool opening_asked = false;
  std::optional<double> opening_value;  // absent = item nonresponse
  bool followup_asked = false;
  std::optional<double> followup_value;
  std::map<std::string, std::string> extras;

  friend bool operator==(const MicroRecord&, const MicroRecord&) = default;
};

// Which opening answers send the respondent on to the follow-up.
struct PositiveBranch {
  enum class Kind { kGreaterThanZero, kEquals };
  Kind kind = Kind::kGreaterThanZero;
  double code = 1.0;  // used by kEquals

  bool operator()(double opening_value) const {
    return kind == Kind::kGreaterThanZero ? opening_value > 0.0
                                          : opening_value == code;
  }
};

struct IngestSchema {
  std::string id_column = "respondent_id";
  std::string opening_asked_column = "opening_asked";
  std::string opening_value_column = "opening_value";
  std::string followup_asked_column = "followup_asked";
  std::string followup_value_column = "followup_value";
  char delimiter = ',';
  std::string missing = "";
  PositiveBranch positive;
  GFunction g = GFunction::LinearScaled(1.0);
  // Skip enforces the skip-logic invariants; All files ask the follow-up
  // item of everyone and carry no opening question.
  DesignOption design = DesignOption::kSkip;

  double support_max() const { return g.support_max(); }
};

// Malformed header or duplicate respondent id. Aborts the parse.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RejectedRow {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string reason;
};

struct ParseResult {
  std::vector<MicroRecord> records;
  std::vector<RejectedRow> rejects;
  std::size_t rows_read = 0;  // records.size() + rejects.size()
};

// Single pass; bad rows land in `rejects` and parsing continues.
ParseResult ParseMicrodata(std::istream& in, const IngestSchema& schema);

// Empty string when `r` satisfies the invariants of `schema`, otherwise the
// violated invariant.
std::string CheckRecord(const MicroRecord& r, const IngestSchema& schema);

// Writes records in the layout ParseMicrodata reads. Values use shortest
// round-trip formatting, so a re-parse reproduces them bit for bit.
void WriteMicrodata(std::ostream& out, const std::vector<MicroRecord>& records,
                    const IngestSchema& schema);

// Raw counts behind the scenario quantities. Every ratio below is count / n.
struct NonresponseCounts {
  std::size_t n = 0;
  std::size_t followup_answered = 0;
  std::size_t positive_followup_missing = 0;  // opening positive, y missing
  std::size_t opening_missing = 0;
  std::size_t opening_positive = 0;
  double g_sum = 0.0;  // sum of g(followup) over answered follow-ups
};

NonresponseCounts CountNonresponse(const std::vector<MicroRecord>& records,
                                   const IngestSchema& schema);

// Throws ValidationError: field "records" for an empty list, "mean_resp" when
// no follow-up was answered (the conditional mean is undefined).
NonresponseSkipScenario ComputeNonresponseSkip(
    const std::vector<MicroRecord>& records, const IngestSchema& schema);
NonresponseAllScenario ComputeNonresponseAll(
    const std::vector<MicroRecord>& records, const IngestSchema& schema);

// Follow-up values must be 0 or `positive_code`; anything else, including a
// missing follow-up answer, is rejected. The error bound is an assumption
// supplied by the caller.
MisclassSkipScenario ComputeMisclassSkip(const std::vector<MicroRecord>& records,
                                         const IngestSchema& schema,
                                         double positive_code,
                                         const ErrorAssumption& assumption);
MisclassAllScenario ComputeMisclassAll(const std::vector<MicroRecord>& records,
                                       const IngestSchema& schema,
                                       double positive_code,
                                       const ErrorAssumption& assumption);

}  // namespace skipseq

#endif  // SKIPSEQ_INGEST_H_
