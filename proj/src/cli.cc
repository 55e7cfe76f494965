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

#include "skipseq/cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "skipseq/decision.h"
#include "skipseq/identification.h"
#include "skipseq/ingest.h"
#include "skipseq/oracle.h"
#include "skipseq/rng.h"
#include "skipseq/scenario_json.h"
#include "skipseq/simulator.h"

namespace skipseq {
namespace {

using nlohmann::ordered_json;

enum class Format { kTable, kJson };

// Seed streams for the simulate subcommand.
constexpr std::uint64_t kPopulationStream = 100;
constexpr std::uint64_t kDesignStream = 200;
constexpr std::uint64_t kSampleStream = 300;

std::string F4(double v) { return fmt::format("{:.4f}", v); }

double Require(const std::optional<double>& v, const std::string& flag) {
  if (!v) throw ValidationError(flag, "required value not given");
  return *v;
}

ErrorBound ParseBound(const std::string& s) {
  if (s == "joint") return ErrorBound::kJoint;
  if (s == "per-value") return ErrorBound::kPerValue;
  throw ValidationError("assumption", "expected joint or per-value, got '" + s + "'");
}

// ---- option groups -------------------------------------------------------

struct RegionFlags {
  std::optional<double> p_nonresp, mean_resp, p_y_resp, p_x_open_y_miss,
      p_x_miss, p_asked, p_report, p_x_report, lambda;
  std::string assumption = "joint";
};

struct ScenarioFlags {
  std::string model;
  std::optional<double> p_nonresp_a, mean_resp_a, p_y_resp, mean_resp,
      p_x_open_y_miss, p_x_miss, p_asked;
  std::optional<double> p_report_a, p_report_s, p_x_report, lambda_a, lambda_s;
  std::string assumption = "joint";
  std::string all_doc, skip_doc;
};

struct SimulateFlags {
  std::size_t n = 10000;
  std::size_t sample = 0;
  double p_x = 0.5, p_y_given_x = 0.5, support_max = 1.0;
  std::string shape = "binary";
  std::string design = "skip";
  std::string model = "nonresponse";
  double p_skip_open = 0.0, p_skip_follow = 0.0;
  std::string missingness = "mar";
  std::string flip_rule = "random";
  std::string bound = "joint";
  double lambda = 0.0, intensity = 1.0, p_w0 = 0.0;
  std::string contamination = "opposite";
  std::string error_target = "any";
  bool independent = false;
  std::string output = "-";
  std::string report;
};

struct IngestFlags {
  std::string input = "-";
  std::string design = "skip";
  std::string model = "nonresponse";
  double support_max = 1.0;
  std::optional<double> positive_code, opening_code;
  std::optional<double> lambda;
  std::string assumption = "joint";
  std::string delimiter = ",";
  std::string missing;
  std::string g_knots;
};

struct Table2Flags {
  double p_report_s = 0.073, p_x_report = 0.092, p_report_a = 0.073;
  double tolerance = 5e-4;
};

void AddNonresponsePair(CLI::App* app, ScenarioFlags& f) {
  app->add_option("--model", f.model, "nonresponse or misclass")
      ->check(CLI::IsMember({"nonresponse", "misclass"}));
  app->add_option("--p-nonresp-a", f.p_nonresp_a, "P(z_y = 0) under option All");
  app->add_option("--mean-resp-a", f.mean_resp_a,
                  "E[g(y) | z_y = 1] under option All");
  app->add_option("--p-y-resp", f.p_y_resp, "P(z_y = 1) under option Skip");
  app->add_option("--mean-resp", f.mean_resp, "E[g(y) | z_y = 1] under Skip");
  app->add_option("--p-x-open-y-miss", f.p_x_open_y_miss,
                  "P(z_x = 1, z_y = 0, x = 1)");
  app->add_option("--p-x-miss", f.p_x_miss, "P(z_x = 0)");
  app->add_option("--p-asked", f.p_asked,
                  "P(z_x = 1, x = 1); defaults to p-y-resp + p-x-open-y-miss");
  app->add_option("--p-report-a", f.p_report_a, "P(reported y = 1) under All");
  app->add_option("--p-report-s,--p-report", f.p_report_s,
                  "P(reported y = 1) under Skip");
  app->add_option("--p-x-report", f.p_x_report, "P(reported x = 1) under Skip");
  app->add_option("--lambda-a", f.lambda_a, "error bound under All");
  app->add_option("--lambda-s", f.lambda_s, "error bound under Skip");
  app->add_option("--assumption", f.assumption, "joint or per-value")
      ->check(CLI::IsMember({"joint", "per-value"}));
  app->add_option("--all-scenario", f.all_doc,
                  "scenario document for option All (as written by ingest)");
  app->add_option("--skip-scenario", f.skip_doc,
                  "scenario document for option Skip (as written by ingest)");
}

ordered_json ReadJson(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return ordered_json::parse(in);
    std::ifstream file(path);
    if (!file) throw ValidationError(path, "cannot open file");
    return ordered_json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path, std::string("invalid JSON: ") + e.what());
  }
}

ScenarioObservables ReadScenarioDoc(const std::string& path, std::istream& in) {
  auto doc = ReadJson(path, in);
  // ingest output wraps the scenario.
  if (doc.contains("scenario")) doc = doc.at("scenario");
  return ScenarioFromJson(doc);
}

DecisionScenario BuildDecisionScenario(const ScenarioFlags& f, std::istream& in) {
  if (!f.all_doc.empty() || !f.skip_doc.empty()) {
    if (f.all_doc.empty() || f.skip_doc.empty()) {
      throw ValidationError("--all-scenario",
                            "--all-scenario and --skip-scenario go together");
    }
    const auto all = ReadScenarioDoc(f.all_doc, in);
    const auto skip = ReadScenarioDoc(f.skip_doc, in);
    if (const auto* a = std::get_if<NonresponseAllScenario>(&all)) {
      const auto* s = std::get_if<NonresponseSkipScenario>(&skip);
      if (!s) throw ValidationError("--skip-scenario", "expected an nr-skip document");
      return NonresponseDecision{*a, *s};
    }
    if (const auto* a = std::get_if<MisclassAllScenario>(&all)) {
      const auto* s = std::get_if<MisclassSkipScenario>(&skip);
      if (!s) throw ValidationError("--skip-scenario", "expected an mc-skip document");
      return MisclassDecision{*a, *s};
    }
    throw ValidationError("--all-scenario", "expected an nr-all or mc-all document");
  }
  if (f.model.empty()) {
    throw ValidationError("--model", "required: nonresponse or misclass");
  }
  if (f.model == "nonresponse") {
    NonresponseDecision d;
    d.all.p_nonresp = Require(f.p_nonresp_a, "--p-nonresp-a");
    d.all.mean_resp = Require(f.mean_resp_a, "--mean-resp-a");
    d.skip.p_y_resp = Require(f.p_y_resp, "--p-y-resp");
    d.skip.mean_resp = Require(f.mean_resp, "--mean-resp");
    d.skip.p_x_resp_y_nonresp = Require(f.p_x_open_y_miss, "--p-x-open-y-miss");
    d.skip.p_x_nonresp = Require(f.p_x_miss, "--p-x-miss");
    d.skip.p_asked = f.p_asked.value_or(d.skip.p_y_resp + d.skip.p_x_resp_y_nonresp);
    return d;
  }
  const auto bound = ParseBound(f.assumption);
  MisclassDecision d;
  d.all = {Require(f.p_report_a, "--p-report-a"),
           {bound, Require(f.lambda_a, "--lambda-a")}};
  d.skip = {Require(f.p_report_s, "--p-report-s"),
            Require(f.p_x_report, "--p-x-report"),
            {bound, Require(f.lambda_s, "--lambda-s")}};
  return d;
}

std::string AffineLoss(const LossBreakdown& l) {
  return fmt::format("{}*gamma + {}", F4(l.cost_fraction), F4(l.width));
}

void WriteWarnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

// ---- subcommand bodies ---------------------------------------------------

void CmdRegion(const std::string& kind, const RegionFlags& f, Format fmt_,
               std::ostream& out) {
  std::optional<ScenarioObservables> scenario;
  UnitInterval region = RegionNone();
  if (kind == "nr-all") {
    NonresponseAllScenario s{Require(f.p_nonresp, "--p-nonresp"),
                             Require(f.mean_resp, "--mean-resp")};
    region = RegionNonresponseAll(s);
    scenario = s;
  } else if (kind == "nr-skip") {
    NonresponseSkipScenario s;
    s.p_y_resp = Require(f.p_y_resp, "--p-y-resp");
    s.mean_resp = Require(f.mean_resp, "--mean-resp");
    s.p_x_resp_y_nonresp = Require(f.p_x_open_y_miss, "--p-x-open-y-miss");
    s.p_x_nonresp = Require(f.p_x_miss, "--p-x-miss");
    s.p_asked = f.p_asked.value_or(s.p_y_resp + s.p_x_resp_y_nonresp);
    region = RegionNonresponseSkip(s);
    scenario = s;
  } else if (kind == "mc-all") {
    MisclassAllScenario s{Require(f.p_report, "--p-report"),
                          {ParseBound(f.assumption), Require(f.lambda, "--lambda")}};
    region = RegionMisclassAll(s);
    scenario = s;
  } else if (kind == "mc-skip") {
    MisclassSkipScenario s{Require(f.p_report, "--p-report"),
                           Require(f.p_x_report, "--p-x-report"),
                           {ParseBound(f.assumption), Require(f.lambda, "--lambda")}};
    region = RegionMisclassSkip(s);
    scenario = s;
  }
  if (fmt_ == Format::kJson) {
    ordered_json j = {{"kind", kind}, {"region", ToJson(region)}};
    if (scenario) j["scenario"] = ToJson(*scenario);
    out << j.dump(2) << "\n";
    return;
  }
  out << "region " << kind << "\n"
      << "  lo     " << F4(region.lo()) << "\n"
      << "  hi     " << F4(region.hi()) << "\n"
      << "  width  " << F4(region.width()) << "\n";
}

void CmdLoss(const DecisionScenario& scenario, const std::string& option,
             Format fmt_, std::ostream& out) {
  std::vector<LossBreakdown> losses;
  if (option.empty()) {
    for (const auto& l : Losses(scenario)) losses.push_back(l);
  } else {
    losses.push_back(Loss(ParseDesignOption(option), scenario));
  }
  if (fmt_ == Format::kJson) {
    ordered_json arr = ordered_json::array();
    for (const auto& l : losses) arr.push_back(ToJson(l));
    out << ordered_json{{"losses", arr}}.dump(2) << "\n";
    return;
  }
  out << fmt::format("{:<8}{:>10}{:>10}  {}\n", "option", "f", "d", "loss");
  for (const auto& l : losses) {
    out << fmt::format("{:<8}{:>10}{:>10}  {}\n", ToString(l.option),
                       F4(l.cost_fraction), F4(l.width), AffineLoss(l));
  }
}

void CmdDecide(const DecisionScenario& scenario, double gamma, Format fmt_,
               std::ostream& out) {
  const auto d = Decide(gamma, scenario);
  if (fmt_ == Format::kJson) {
    ordered_json j = ToJson(d);
    for (auto& l : j["losses"]) {
      const auto o = ParseDesignOption(l["option"].get<std::string>());
      l["loss"] = d.losses[static_cast<int>(o)].LossAt(gamma);
    }
    j["gamma"] = gamma;
    out << j.dump(2) << "\n";
    return;
  }
  out << "gamma " << F4(gamma) << "\n";
  out << fmt::format("{:<8}{:>10}  {}\n", "option", "loss", "form");
  for (const auto& l : d.losses) {
    out << fmt::format("{:<8}{:>10}  {}\n", ToString(l.option), F4(l.LossAt(gamma)),
                       AffineLoss(l));
  }
  out << "minimizers " << d.minimizers.ToString() << "\n";
  out << "chosen " << ToString(d.chosen) << "\n";
}

void CmdSweep(const DecisionScenario& scenario, double gamma_max, Format fmt_,
              std::ostream& out) {
  const auto p = PartitionGamma(scenario, gamma_max);
  if (fmt_ == Format::kJson) {
    out << ToJson(p).dump(2) << "\n";
    return;
  }
  out << "breakpoints";
  for (double b : p.breakpoints) out << " " << F4(b);
  out << "\n";
  out << fmt::format("{:>10}{:>10}  {:<18}{}\n", "lo", "hi", "optimal", "chosen");
  for (const auto& c : p.cells) {
    out << fmt::format("{:>10}{:>10}  {:<18}{}\n", F4(c.lo), F4(c.hi),
                       c.optimal.ToString(), ToString(c.chosen));
  }
}

std::string RangeText(const std::optional<std::pair<double, double>>& r) {
  if (!r) return "Never";
  return fmt::format("{:.3f}..{:.3f}", r->first, r->second);
}

void CmdTable2(const Table2Flags& f, Format fmt_, std::ostream& out) {
  std::vector<LambdaPair> pairs;
  for (const auto& row : PublishedTable2()) {
    pairs.push_back({row.lambda_all, row.lambda_skip});
  }
  const auto rows = ReproduceTable2({f.p_report_s, f.p_x_report, f.p_report_a}, pairs);
  const auto checks = CompareTable2(rows, f.tolerance);
  const auto passed = std::count_if(checks.begin(), checks.end(),
                                    [](const auto& c) { return c.pass; });
  if (fmt_ == Format::kJson) {
    ordered_json jrows = ordered_json::array();
    for (const auto& r : rows) jrows.push_back(ToJson(r));
    ordered_json jchecks = ordered_json::array();
    for (const auto& c : checks) {
      jchecks.push_back({{"lambda_all", c.lambda_all},
                         {"lambda_skip", c.lambda_skip},
                         {"family", c.family},
                         {"cell", c.cell},
                         {"published", c.published ? ordered_json(*c.published)
                                                   : ordered_json(nullptr)},
                         {"computed", c.computed ? ordered_json(*c.computed)
                                                 : ordered_json(nullptr)},
                         {"pass", c.pass}});
    }
    out << ordered_json{{"rows", jrows},
                        {"checks", jchecks},
                        {"cells_passed", passed},
                        {"cells_total", checks.size()},
                        {"tolerance", f.tolerance}}
               .dump(2)
        << "\n";
    return;
  }
  out << fmt::format("{:>7}{:>7}  {:<14}{:<16}{:<14}{:<16}\n", "lamA", "lamS",
                     "joint:All", "joint:Skip", "perval:All", "perval:Skip");
  for (const auto& r : rows) {
    out << fmt::format("{:>7.3f}{:>7.3f}  {:<14}{:<16}{:<14}{:<16}\n", r.lambda_all,
                       r.lambda_skip, RangeText(r.joint.all), RangeText(r.joint.skip),
                       RangeText(r.per_value.all), RangeText(r.per_value.skip));
  }
  for (const auto& c : checks) {
    if (c.pass) continue;
    out << fmt::format("MISMATCH lamA={:.3f} lamS={:.3f} {} {}: published {} computed {}\n",
                       c.lambda_all, c.lambda_skip, c.family, c.cell,
                       c.published ? fmt::format("{:.3f}", *c.published) : "Never",
                       c.computed ? fmt::format("{:.5f}", *c.computed) : "Never");
  }
  out << fmt::format("cells matched {}/{} (tolerance {})\n", passed, checks.size(),
                     f.tolerance);
}

template <typename Enum>
Enum Lookup(const std::string& value, const std::string& flag,
            std::initializer_list<std::pair<const char*, Enum>> table) {
  for (const auto& [name, e] : table) {
    if (value == name) return e;
  }
  throw ValidationError(flag, "unrecognized value '" + value + "'");
}

ResponseModel BuildResponseModel(const SimulateFlags& f) {
  if (f.model == "nonresponse") {
    return NonresponseModel{
        f.p_skip_open, f.p_skip_follow,
        Lookup<MissingnessRule>(f.missingness, "--missingness",
                                {{"mar", MissingnessRule::kMissingAtRandom},
                                 {"high", MissingnessRule::kHighValuesMissing},
                                 {"low", MissingnessRule::kLowValuesMissing}})};
  }
  if (f.model == "misclass") {
    return MisclassModel{
        Lookup<FlipRule>(f.flip_rule, "--flip-rule",
                         {{"random", FlipRule::kRandom},
                          {"false-negative", FlipRule::kFalseNegative},
                          {"false-positive", FlipRule::kFalsePositive}}),
        ParseBound(f.bound), f.lambda, f.intensity};
  }
  return MixtureModel{
      f.p_w0, f.lambda,
      Lookup<ContaminationDraw>(f.contamination, "--contamination",
                                {{"opposite", ContaminationDraw::kOpposite},
                                 {"zero", ContaminationDraw::kZero},
                                 {"one", ContaminationDraw::kOne},
                                 {"coin", ContaminationDraw::kCoin}}),
      f.independent,
      Lookup<ErrorTarget>(f.error_target, "--error-target",
                          {{"any", ErrorTarget::kAny},
                           {"positive", ErrorTarget::kPositive},
                           {"negative", ErrorTarget::kNegative}})};
}

// Returns the coverage report; the dataset goes to `data_out`.
ordered_json CmdSimulate(const SimulateFlags& f, std::uint64_t seed,
                         std::ostream& data_out) {
  PopulationConfig config;
  config.p_x = f.p_x;
  config.p_y_given_x = f.p_y_given_x;
  config.support_max = f.support_max;
  config.shape = f.shape == "uniform" ? OutcomeShape::kUniform : OutcomeShape::kBinary;
  auto pop = GeneratePopulation(f.n, config, Rng::Derive(seed, kPopulationStream));
  if (f.sample > 0) pop = SamplePopulation(pop, f.sample, Rng::Derive(seed, kSampleStream));
  const auto model = BuildResponseModel(f);
  const auto design = ParseDesignOption(f.design);
  const auto obs = ApplyDesign(pop, design, model, Rng::Derive(seed, kDesignStream));
  WriteMicrodata(data_out, obs.records, SchemaFor(obs));

  ordered_json report = {{"records", obs.records.size()},
                         {"design", f.design},
                         {"model", f.model},
                         {"seed", seed},
                         {"truth", {{"mean_g", obs.truth.mean_g},
                                    {"p_y1", obs.truth.p_y1}}}};
  if (design == DesignOption::kNone) {
    report["covered"] = true;
    report["region"] = ToJson(RegionNone());
    return report;
  }
  const auto scenario = EmpiricalQuantities(obs, obs.g);
  const auto region = RegionFor(scenario);
  const double truth = TruthFor(scenario, obs.truth);
  report["scenario"] = ToJson(scenario);
  report["region"] = ToJson(region);
  report["parameter"] = truth;
  report["covered"] = CoverageCheck(truth, region);
  return report;
}

void PrintReportTable(const ordered_json& r, std::ostream& out) {
  out << "records  " << r["records"].get<std::size_t>() << "\n";
  if (r.contains("parameter")) {
    out << "truth    " << F4(r["parameter"].get<double>()) << "\n";
  }
  out << "region   [" << F4(r["region"]["lo"].get<double>()) << ", "
      << F4(r["region"]["hi"].get<double>()) << "]\n";
  out << "covered  " << (r["covered"].get<bool>() ? "yes" : "NO") << "\n";
}

GFunction ParseKnots(const std::string& text) {
  std::vector<std::pair<double, double>> knots;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ValidationError("--g-knots", "expected y:g pairs, got '" + item + "'");
    }
    try {
      knots.emplace_back(std::stod(item.substr(0, colon)),
                         std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw ValidationError("--g-knots", "bad number in '" + item + "'");
    }
  }
  return GFunction::Tabulated(std::move(knots));
}

ordered_json CmdIngest(const IngestFlags& f, std::istream& in, std::ostream& err,
                       bool table) {
  IngestSchema schema;
  if (f.delimiter.size() != 1) {
    throw ValidationError("--delimiter", "delimiter must be a single character");
  }
  schema.delimiter = f.delimiter[0];
  schema.missing = f.missing;
  schema.design = ParseDesignOption(f.design);
  schema.g = f.g_knots.empty() ? GFunction::LinearScaled(f.support_max)
                               : ParseKnots(f.g_knots);
  if (f.opening_code) {
    schema.positive = {PositiveBranch::Kind::kEquals, *f.opening_code};
  }

  ParseResult parsed;
  if (f.input == "-") {
    parsed = ParseMicrodata(in, schema);
  } else {
    std::ifstream file(f.input);
    if (!file) throw ValidationError("--input", "cannot open '" + f.input + "'");
    parsed = ParseMicrodata(file, schema);
  }
  ordered_json rejects = ordered_json::array();
  for (const auto& r : parsed.rejects) {
    rejects.push_back({{"line", r.line}, {"reason", r.reason}});
    if (table) err << "reject line " << r.line << ": " << r.reason << "\n";
  }

  ResponseModel model = NonresponseModel{};
  if (f.model == "misclass") {
    model = MisclassModel{FlipRule::kRandom, ParseBound(f.assumption),
                          Require(f.lambda, "--lambda")};
  }
  std::optional<ScenarioObservables> scenario;
  if (f.model == "misclass") {
    const double code = f.positive_code.value_or(schema.support_max());
    const ErrorAssumption a{ParseBound(f.assumption), Require(f.lambda, "--lambda")};
    if (schema.design == DesignOption::kSkip) {
      scenario = ComputeMisclassSkip(parsed.records, schema, code, a);
    } else {
      scenario = ComputeMisclassAll(parsed.records, schema, code, a);
    }
  } else {
    scenario = EmpiricalQuantities(parsed.records, schema, model);
  }
  return {{"scenario", ToJson(*scenario)},
          {"records", parsed.records.size()},
          {"rows_read", parsed.rows_read},
          {"rejects", rejects}};
}

void PrintScenarioTable(const ordered_json& doc, std::ostream& out) {
  const auto& s = doc["scenario"];
  out << "kind " << s["kind"].get<std::string>() << "\n";
  for (const auto& [k, v] : s.items()) {
    if (k == "kind") continue;
    if (v.is_number()) {
      out << fmt::format("  {:<20}{}\n", k, F4(v.get<double>()));
    } else {
      out << fmt::format("  {:<20}{}\n", k, v.get<std::string>());
    }
  }
  out << "records " << doc["records"].get<std::size_t>() << ", rejected "
      << doc["rejects"].size() << "\n";
}

// Appends "--key value" for every config entry whose flag is not already on
// the command line, so explicit flags win.
std::vector<std::string> InjectConfig(std::vector<std::string> args,
                                      std::istream& in) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  const auto doc = ReadJson(*path, in);
  if (!doc.is_object()) {
    throw ValidationError("--config", "config document must be a JSON object");
  }
  auto present = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    if (present(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_number_integer()) {
      extra.push_back(flag);
      extra.push_back(std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      extra.push_back(flag);
      extra.push_back(fmt::format("{}", value.get<double>()));
    } else if (value.is_string()) {
      extra.push_back(flag);
      extra.push_back(value.get<std::string>());
    } else {
      throw ValidationError(key, "config values must be scalars");
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

int Run(const std::vector<std::string>& raw_args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Questionnaire design under partial identification"};
  app.name("skipseq");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "table";
  std::uint64_t seed = 1;
  std::string config_path;
  app.add_option("--format", format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  app.add_option("--seed", seed, "random seed for simulate");
  app.add_option("--config", config_path, "JSON key/value file of flag defaults");

  RegionFlags rf;
  auto* region = app.add_subcommand("region", "identification region");
  region->require_subcommand(1);
  region->fallthrough();
  auto* nr_all = region->add_subcommand("nr-all", "nonresponse, option All");
  nr_all->add_option("--p-nonresp", rf.p_nonresp, "P(z_y = 0)");
  nr_all->add_option("--mean-resp", rf.mean_resp, "E[g(y) | z_y = 1]");
  auto* nr_skip = region->add_subcommand("nr-skip", "nonresponse, option Skip");
  nr_skip->add_option("--p-y-resp", rf.p_y_resp, "P(z_y = 1)");
  nr_skip->add_option("--mean-resp", rf.mean_resp, "E[g(y) | z_y = 1]");
  nr_skip->add_option("--p-x-open-y-miss", rf.p_x_open_y_miss,
                      "P(z_x = 1, z_y = 0, x = 1)");
  nr_skip->add_option("--p-x-miss", rf.p_x_miss, "P(z_x = 0)");
  nr_skip->add_option("--p-asked", rf.p_asked, "P(z_x = 1, x = 1)");
  auto* mc_all = region->add_subcommand("mc-all", "misclassification, option All");
  auto* mc_skip = region->add_subcommand("mc-skip", "misclassification, option Skip");
  for (auto* sub : {mc_all, mc_skip}) {
    sub->add_option("--p-report", rf.p_report, "P(reported y = 1)");
    sub->add_option("--lambda", rf.lambda, "error bound in [0, 1)");
    sub->add_option("--assumption", rf.assumption, "joint or per-value")
        ->check(CLI::IsMember({"joint", "per-value"}));
  }
  mc_skip->add_option("--p-x-report", rf.p_x_report, "P(reported x = 1)");
  auto* none = region->add_subcommand("none", "option None");
  for (auto* sub : {nr_all, nr_skip, mc_all, mc_skip, none}) sub->fallthrough();

  ScenarioFlags sf;
  std::string loss_option;
  auto* loss = app.add_subcommand("loss", "affine loss of each design option");
  AddNonresponsePair(loss, sf);
  loss->add_option("--option", loss_option, "all, skip or none (default: every option)");

  std::optional<double> gamma;
  auto* decide = app.add_subcommand("decide", "loss-minimizing design at gamma");
  AddNonresponsePair(decide, sf);
  decide->add_option("--gamma", gamma, "cost weight, >= 0");

  double gamma_max = 10.0;
  auto* sweep = app.add_subcommand("sweep", "partition of [0, gamma_max] by optimal design");
  AddNonresponsePair(sweep, sf);
  sweep->add_option("--gamma-max", gamma_max, "upper end of the gamma axis");

  Table2Flags tf;
  auto* table2 = app.add_subcommand("table2", "gamma thresholds over (lambda_A, lambda_S)");
  table2->add_option("--p-report-s", tf.p_report_s, "P(reported y = 1) under Skip");
  table2->add_option("--p-x-report", tf.p_x_report, "P(reported x = 1) under Skip");
  table2->add_option("--p-report-a", tf.p_report_a, "P(reported y = 1) under All");
  table2->add_option("--tolerance", tf.tolerance, "per-cell tolerance");

  SimulateFlags mf;
  auto* simulate = app.add_subcommand("simulate", "synthetic survey microdata");
  simulate->add_option("--n", mf.n, "population size");
  simulate->add_option("--sample", mf.sample, "draw this many respondents (sample mode)");
  simulate->add_option("--p-x", mf.p_x, "P(x = 1)");
  simulate->add_option("--p-y-given-x", mf.p_y_given_x, "P(y > 0 | x = 1)");
  simulate->add_option("--support-max", mf.support_max, "upper end s of y's support");
  simulate->add_option("--shape", mf.shape, "binary or uniform")
      ->check(CLI::IsMember({"binary", "uniform"}));
  simulate->add_option("--design", mf.design, "all, skip or none")
      ->check(CLI::IsMember({"all", "skip", "none"}));
  simulate->add_option("--model", mf.model, "nonresponse, misclass or mixture")
      ->check(CLI::IsMember({"nonresponse", "misclass", "mixture"}));
  simulate->add_option("--p-skip-open", mf.p_skip_open, "opening nonresponse rate");
  simulate->add_option("--p-skip-follow", mf.p_skip_follow, "follow-up nonresponse rate");
  simulate->add_option("--missingness", mf.missingness, "mar, high or low");
  simulate->add_option("--flip-rule", mf.flip_rule,
                       "random, false-negative or false-positive");
  simulate->add_option("--bound", mf.bound, "joint or per-value");
  simulate->add_option("--lambda", mf.lambda, "error bound");
  simulate->add_option("--intensity", mf.intensity, "share of the error budget used");
  simulate->add_option("--p-w0", mf.p_w0, "mixture: P(w = 0)");
  simulate->add_option("--contamination", mf.contamination, "opposite, zero, one or coin");
  simulate->add_option("--error-target", mf.error_target, "any, positive or negative");
  simulate->add_flag("--independent", mf.independent, "mixture: y independent of w");
  simulate->add_option("--output", mf.output, "dataset path, - for stdout");
  simulate->add_option("--report", mf.report, "coverage report path");

  IngestFlags inf;
  auto* ingest = app.add_subcommand("ingest", "microdata to scenario quantities");
  ingest->add_option("--input", inf.input, "microdata path, - for stdin");
  ingest->add_option("--design", inf.design, "skip or all")
      ->check(CLI::IsMember({"skip", "all"}));
  ingest->add_option("--model", inf.model, "nonresponse or misclass")
      ->check(CLI::IsMember({"nonresponse", "misclass"}));
  ingest->add_option("--support-max", inf.support_max, "upper end s of y's support");
  ingest->add_option("--g-knots", inf.g_knots, "tabulated g as y:g,y:g,...");
  ingest->add_option("--positive-code", inf.positive_code,
                     "follow-up code for a positive report (default: support max)");
  ingest->add_option("--opening-code", inf.opening_code,
                     "opening answer that leads to the follow-up (default: any value > 0)");
  ingest->add_option("--lambda", inf.lambda, "error bound (misclass)");
  ingest->add_option("--assumption", inf.assumption, "joint or per-value")
      ->check(CLI::IsMember({"joint", "per-value"}));
  ingest->add_option("--delimiter", inf.delimiter, "field delimiter");
  ingest->add_option("--missing", inf.missing, "missing-value sentinel");

  for (auto* sub : {loss, decide, sweep, table2, simulate, ingest}) sub->fallthrough();

  const auto args = InjectConfig(raw_args, in);
  std::vector<const char*> argv = {"skipseq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  const Format fmt_ = format == "json" ? Format::kJson : Format::kTable;

  std::ostringstream buf;
  if (region->parsed()) {
    for (auto* sub : {nr_all, nr_skip, mc_all, mc_skip, none}) {
      if (sub->parsed()) CmdRegion(sub->get_name(), rf, fmt_, buf);
    }
  } else if (loss->parsed() || decide->parsed() || sweep->parsed()) {
    const auto scenario = BuildDecisionScenario(sf, in);
    Validate(scenario);
    WriteWarnings(PlausibilityWarnings(scenario), err);
    if (loss->parsed()) CmdLoss(scenario, loss_option, fmt_, buf);
    if (decide->parsed()) CmdDecide(scenario, Require(gamma, "--gamma"), fmt_, buf);
    if (sweep->parsed()) CmdSweep(scenario, gamma_max, fmt_, buf);
  } else if (table2->parsed()) {
    CmdTable2(tf, fmt_, buf);
  } else if (simulate->parsed()) {
    std::ostringstream data;
    const auto report = CmdSimulate(mf, seed, data);
    std::ostringstream report_text;
    if (fmt_ == Format::kJson) {
      report_text << report.dump(2) << "\n";
    } else {
      PrintReportTable(report, report_text);
    }
    if (mf.output == "-") {
      buf << data.str();
    } else {
      std::ofstream file(mf.output);
      if (!file) throw ValidationError("--output", "cannot write '" + mf.output + "'");
      file << data.str();
    }
    if (!mf.report.empty()) {
      std::ofstream file(mf.report);
      if (!file) throw ValidationError("--report", "cannot write '" + mf.report + "'");
      file << report_text.str();
    } else if (mf.output == "-") {
      err << report_text.str();
    } else {
      buf << report_text.str();
    }
  } else if (ingest->parsed()) {
    const auto doc = CmdIngest(inf, in, err, fmt_ == Format::kTable);
    if (fmt_ == Format::kJson) {
      buf << doc.dump(2) << "\n";
    } else {
      PrintScenarioTable(doc, buf);
    }
  }
  out << buf.str();
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  try {
    return Run(args, in, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IngestError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace skipseq
