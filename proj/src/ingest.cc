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

#include "skipseq/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <string_view>
#include <unordered_set>

namespace skipseq {
namespace {

// Splits one delimited line. Double-quoted fields may contain the delimiter;
// a doubled quote inside them is a literal quote.
std::optional<std::vector<std::string>> SplitLine(std::string_view line,
                                                  char delim) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool field_started_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty() && !field_started_quoted) {
      quoted = true;
      field_started_quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(cur));
      cur.clear();
      field_started_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) return std::nullopt;
  fields.push_back(std::move(cur));
  return fields;
}

std::optional<bool> ParseBool(std::string_view s) {
  if (s == "1" || s == "true" || s == "TRUE") return true;
  if (s == "0" || s == "false" || s == "FALSE") return false;
  return std::nullopt;
}

std::optional<double> ParseNumber(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string FormatNumber(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Quote(const std::string& s, char delim) {
  if (s.find_first_of(std::string{delim, '"', '\n', '\r'}) == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

struct ColumnMap {
  std::size_t id, opening_asked, opening_value, followup_asked, followup_value;
  std::vector<std::pair<std::size_t, std::string>> extras;
  std::size_t width;
};

ColumnMap MapHeader(const std::vector<std::string>& header,
                    const IngestSchema& schema) {
  std::set<std::string> seen;
  for (const auto& name : header) {
    if (!seen.insert(name).second) {
      throw IngestError("malformed header: duplicate column '" + name + "'");
    }
  }
  auto find = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw IngestError("malformed header: missing column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  ColumnMap m{find(schema.id_column),
              find(schema.opening_asked_column),
              find(schema.opening_value_column),
              find(schema.followup_asked_column),
              find(schema.followup_value_column),
              {},
              header.size()};
  const std::set<std::size_t> known = {m.id, m.opening_asked, m.opening_value,
                                       m.followup_asked, m.followup_value};
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!known.count(i)) m.extras.emplace_back(i, header[i]);
  }
  return m;
}

void StripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::string CheckRecord(const MicroRecord& r, const IngestSchema& schema) {
  if (r.respondent_id.empty()) return "respondent_id is empty";
  if (r.opening_value && !r.opening_asked) {
    return "opening_value present but opening_asked is false";
  }
  if (r.followup_value && !r.followup_asked) {
    return "skip logic: followup_value present but followup_asked is false";
  }
  if (r.followup_value &&
      (*r.followup_value < 0.0 || *r.followup_value > schema.support_max())) {
    return "followup_value " + FormatNumber(*r.followup_value) +
           " outside support [0, " + FormatNumber(schema.support_max()) + "]";
  }
  if (schema.design == DesignOption::kSkip && r.followup_asked) {
    if (!r.opening_asked || !r.opening_value) {
      return "skip logic: followup_asked without an answered opening question";
    }
    if (!schema.positive(*r.opening_value)) {
      return "skip logic: followup_asked but opening answer " +
             FormatNumber(*r.opening_value) + " is not on the positive branch";
    }
  }
  if (schema.design == DesignOption::kNone && r.followup_asked) {
    return "followup_asked under design none";
  }
  return {};
}

ParseResult ParseMicrodata(std::istream& in, const IngestSchema& schema) {
  ParseResult result;
  std::string line;
  std::size_t lineno = 0;
  std::optional<ColumnMap> cols;
  while (cols == std::nullopt && std::getline(in, line)) {
    ++lineno;
    StripCarriageReturn(line);
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty()) continue;
    auto header = SplitLine(line, schema.delimiter);
    if (!header) throw IngestError("malformed header: unterminated quote");
    cols = MapHeader(*header, schema);
  }
  if (!cols) throw IngestError("malformed header: input is empty");

  std::unordered_set<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    ++result.rows_read;
    auto reject = [&](std::string why) {
      result.rejects.push_back({lineno, std::move(why)});
    };
    auto fields = SplitLine(line, schema.delimiter);
    if (!fields) {
      reject("unterminated quote");
      continue;
    }
    if (fields->size() != cols->width) {
      reject("expected " + std::to_string(cols->width) + " fields, found " +
             std::to_string(fields->size()));
      continue;
    }
    const auto& f = *fields;
    MicroRecord r;
    r.respondent_id = f[cols->id];
    const auto oa = ParseBool(f[cols->opening_asked]);
    const auto fa = ParseBool(f[cols->followup_asked]);
    if (!oa) {
      reject("opening_asked is not a boolean: '" + f[cols->opening_asked] + "'");
      continue;
    }
    if (!fa) {
      reject("followup_asked is not a boolean: '" + f[cols->followup_asked] +
             "'");
      continue;
    }
    r.opening_asked = *oa;
    r.followup_asked = *fa;
    bool bad_number = false;
    auto value = [&](std::size_t col, const char* name) -> std::optional<double> {
      if (f[col] == schema.missing) return std::nullopt;
      auto v = ParseNumber(f[col]);
      if (!v) {
        reject(std::string(name) + " is not a number: '" + f[col] + "'");
        bad_number = true;
      }
      return v;
    };
    r.opening_value = value(cols->opening_value, "opening_value");
    if (bad_number) continue;
    r.followup_value = value(cols->followup_value, "followup_value");
    if (bad_number) continue;
    for (const auto& [idx, name] : cols->extras) r.extras[name] = f[idx];
    if (auto why = CheckRecord(r, schema); !why.empty()) {
      reject(std::move(why));
      continue;
    }
    if (!ids.insert(r.respondent_id).second) {
      throw IngestError("duplicate respondent_id '" + r.respondent_id +
                        "' at line " + std::to_string(lineno));
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

void WriteMicrodata(std::ostream& out, const std::vector<MicroRecord>& records,
                    const IngestSchema& schema) {
  std::set<std::string> extra_names;
  for (const auto& r : records) {
    for (const auto& [k, v] : r.extras) extra_names.insert(k);
  }
  const char d = schema.delimiter;
  out << Quote(schema.id_column, d) << d << Quote(schema.opening_asked_column, d)
      << d << Quote(schema.opening_value_column, d) << d
      << Quote(schema.followup_asked_column, d) << d
      << Quote(schema.followup_value_column, d);
  for (const auto& name : extra_names) out << d << Quote(name, d);
  out << '\n';
  auto opt = [&](const std::optional<double>& v) {
    return v ? FormatNumber(*v) : schema.missing;
  };
  for (const auto& r : records) {
    out << Quote(r.respondent_id, d) << d << (r.opening_asked ? '1' : '0') << d
        << opt(r.opening_value) << d << (r.followup_asked ? '1' : '0') << d
        << opt(r.followup_value);
    for (const auto& name : extra_names) {
      const auto it = r.extras.find(name);
      out << d << (it == r.extras.end() ? std::string() : Quote(it->second, d));
    }
    out << '\n';
  }
}

NonresponseCounts CountNonresponse(const std::vector<MicroRecord>& records,
                                   const IngestSchema& schema) {
  NonresponseCounts c;
  c.n = records.size();
  for (const auto& r : records) {
    const bool opening_answered = r.opening_asked && r.opening_value.has_value();
    const bool positive = opening_answered && schema.positive(*r.opening_value);
    if (!opening_answered) ++c.opening_missing;
    if (positive) ++c.opening_positive;
    if (r.followup_value) {
      ++c.followup_answered;
      c.g_sum += schema.g(*r.followup_value);
    } else if (positive) {
      ++c.positive_followup_missing;
    }
  }
  return c;
}

namespace {

void RequireRecords(const std::vector<MicroRecord>& records) {
  if (records.empty()) throw ValidationError("records", "no records to analyse");
}

double Ratio(std::size_t k, std::size_t n) {
  return static_cast<double>(k) / static_cast<double>(n);
}

double MeanResponse(const NonresponseCounts& c) {
  if (c.followup_answered == 0) {
    throw ValidationError("mean_resp",
                          "undefined: no respondent answered the follow-up item");
  }
  return c.g_sum / static_cast<double>(c.followup_answered);
}

struct ReportCounts {
  std::size_t n = 0;
  std::size_t reported_positive = 0;
  std::size_t opening_positive = 0;
};

ReportCounts CountReports(const std::vector<MicroRecord>& records,
                          const IngestSchema& schema, double positive_code) {
  ReportCounts c;
  c.n = records.size();
  for (const auto& r : records) {
    if (schema.design == DesignOption::kSkip) {
      if (!r.opening_value) {
        throw ValidationError(
            "opening_value",
            "respondent '" + r.respondent_id +
                "' has no opening answer; misclassification data must be "
                "complete");
      }
      if (schema.positive(*r.opening_value)) ++c.opening_positive;
    }
    if (!r.followup_asked) continue;
    if (!r.followup_value) {
      throw ValidationError("followup_value",
                            "respondent '" + r.respondent_id +
                                "' has no follow-up answer; misclassification "
                                "data must be complete");
    }
    const double v = *r.followup_value;
    if (v == positive_code) {
      ++c.reported_positive;
    } else if (v != 0.0) {
      throw ValidationError("followup_value",
                            "non-binary follow-up value " + FormatNumber(v) +
                                " for respondent '" + r.respondent_id + "'");
    }
  }
  return c;
}

}  // namespace

NonresponseSkipScenario ComputeNonresponseSkip(
    const std::vector<MicroRecord>& records, const IngestSchema& schema) {
  RequireRecords(records);
  const auto c = CountNonresponse(records, schema);
  NonresponseSkipScenario s;
  s.p_y_resp = Ratio(c.followup_answered, c.n);
  s.mean_resp = MeanResponse(c);
  s.p_x_resp_y_nonresp = Ratio(c.positive_followup_missing, c.n);
  s.p_x_nonresp = Ratio(c.opening_missing, c.n);
  s.p_asked = Ratio(c.opening_positive, c.n);
  return Validate(s);
}

NonresponseAllScenario ComputeNonresponseAll(
    const std::vector<MicroRecord>& records, const IngestSchema& schema) {
  RequireRecords(records);
  const auto c = CountNonresponse(records, schema);
  NonresponseAllScenario s;
  s.p_nonresp = Ratio(c.n - c.followup_answered, c.n);
  s.mean_resp = MeanResponse(c);
  return Validate(s);
}

MisclassSkipScenario ComputeMisclassSkip(const std::vector<MicroRecord>& records,
                                         const IngestSchema& schema,
                                         double positive_code,
                                         const ErrorAssumption& assumption) {
  RequireRecords(records);
  const auto c = CountReports(records, schema, positive_code);
  MisclassSkipScenario s;
  s.p_report = Ratio(c.reported_positive, c.n);
  s.p_x_report = Ratio(c.opening_positive, c.n);
  s.assumption = assumption;
  return Validate(s);
}

MisclassAllScenario ComputeMisclassAll(const std::vector<MicroRecord>& records,
                                       const IngestSchema& schema,
                                       double positive_code,
                                       const ErrorAssumption& assumption) {
  RequireRecords(records);
  IngestSchema all = schema;
  all.design = DesignOption::kAll;
  for (const auto& r : records) {
    if (!r.followup_asked) {
      throw ValidationError("followup_asked",
                            "respondent '" + r.respondent_id +
                                "' was not asked the item under design all");
    }
  }
  const auto c = CountReports(records, all, positive_code);
  return Validate(MisclassAllScenario{Ratio(c.reported_positive, c.n), assumption});
}

}  // namespace skipseq
