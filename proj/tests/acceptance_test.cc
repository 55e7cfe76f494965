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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skipseq/decision.h"
#include "skipseq/identification.h"
#include "skipseq/ingest.h"
#include "skipseq/oracle.h"
#include "skipseq/simulator.h"

namespace skipseq {
namespace {

constexpr double kPrinted = 5e-4;

struct Outcome {
  bool pass = true;
  std::string detail;
  int checks = 0;
  int failures = 0;
  std::string first_failure;

  void Check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    pass = false;
    if (first_failure.empty()) first_failure = what;
  }
  void Near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os << what << ": got " << got << " want " << want;
    Check(std::abs(got - want) <= tol, os.str());
  }
};

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : gen_(seed) {}
  double operator()() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double In(double lo, double hi) { return lo + (hi - lo) * (*this)(); }
  int Pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }
  std::uint64_t Seed() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

NonresponseSkipScenario HrsSkip() { return {0.8508, 0.4039, 0.0197, 0.0723, 0.8705}; }

Outcome Ac1() {
  Outcome o;
  const NonresponseDecision d{{0.08, 0.4039}, HrsSkip()};
  const auto hs = RegionNonresponseSkip(d.skip);
  const auto ha = RegionNonresponseAll(d.all);
  o.Near(hs.lo(), 0.3436, kPrinted, "H^S lo");
  o.Near(hs.hi(), 0.4356, kPrinted, "H^S hi");
  o.Near(ha.lo(), 0.3716, kPrinted, "H^A lo");
  o.Near(ha.hi(), 0.4516, kPrinted, "H^A hi");
  const auto ls = Loss(DesignOption::kSkip, d);
  const auto la = Loss(DesignOption::kAll, d);
  o.Near(ls.cost_fraction, 0.8705, kPrinted, "L_S slope");
  o.Near(ls.width, 0.0920, kPrinted, "L_S intercept");
  o.Near(la.cost_fraction, 1.0, kPrinted, "L_A slope");
  o.Near(la.width, 0.08, kPrinted, "L_A intercept");
  const auto p = PartitionGamma(d);
  o.Check(p.breakpoints.size() == 2, "two thresholds");
  if (p.breakpoints.size() == 2) {
    o.Near(p.breakpoints[0], 0.0927, kPrinted, "gamma* All/Skip");
    o.Near(p.breakpoints[1], 1.0431, kPrinted, "gamma* Skip/None");
  }
  o.Check(Decide(0.05, d).chosen == DesignOption::kAll, "gamma 0.05 chooses All");
  return o;
}

Outcome Ac2() {
  Outcome o;
  const double p = 0.073, px = 0.092, la = 0.15, ls = 0.25;
  const ErrorBound j = ErrorBound::kJoint, v = ErrorBound::kPerValue;
  const auto sj = RegionMisclassSkip({p, px, {j, ls}});
  const auto sv = RegionMisclassSkip({p, px, {v, ls}});
  const auto aj = RegionMisclassAll({p, {j, la}});
  const auto av = RegionMisclassAll({p, {v, la}});
  for (const auto& r : {sj, sv, aj, av}) o.Near(r.lo(), 0.0, kPrinted, "region lo");
  o.Near(sj.hi(), 0.3230, kPrinted, "Skip joint hi");
  o.Near(sv.hi(), 0.0973, kPrinted, "Skip per-value hi");
  o.Near(aj.hi(), 0.2230, kPrinted, "All joint hi");
  o.Near(av.hi(), 0.0859, kPrinted, "All per-value hi");
  const auto pj = PartitionGamma(MisclassDecision{{p, {j, la}}, {p, px, {j, ls}}});
  const auto pv = PartitionGamma(MisclassDecision{{p, {v, la}}, {p, px, {v, ls}}});
  o.Check(pj.breakpoints.size() == 2 && pv.breakpoints.size() == 2, "two thresholds each");
  if (pj.breakpoints.size() == 2 && pv.breakpoints.size() == 2) {
    o.Near(pj.breakpoints[0], 0.1101, kPrinted, "joint lower");
    o.Near(pj.breakpoints[1], 7.3587, kPrinted, "joint upper");
    o.Near(pv.breakpoints[0], 0.0126, kPrinted, "per-value lower");
    o.Near(pv.breakpoints[1], 9.8116, kPrinted, "per-value upper");
  }
  return o;
}

Outcome Ac3() {
  Outcome o;
  std::vector<LambdaPair> pairs;
  for (const auto& r : PublishedTable2()) pairs.push_back({r.lambda_all, r.lambda_skip});
  const auto rows = ReproduceTable2(Table2Inputs{}, pairs);
  int matched = 0;
  const auto checks = CompareTable2(rows, kPrinted);
  for (const auto& c : checks) {
    std::ostringstream os;
    os << "(" << c.lambda_all << ", " << c.lambda_skip << ") " << c.family << " "
       << c.cell << ": published "
       << (c.published ? std::to_string(*c.published) : std::string("Never"))
       << " computed "
       << (c.computed ? std::to_string(*c.computed) : std::string("Never"));
    o.Check(c.pass, os.str());
    matched += c.pass;
  }
  std::ostringstream os;
  os << PublishedTable2().size() << " published rows, " << matched << "/"
     << checks.size() << " cells matched";
  o.detail = os.str();
  return o;
}

Outcome Ac4() {
  Outcome o;
  std::vector<double> ps, lambdas;
  for (int i = 0; i <= 20; ++i) ps.push_back(i / 20.0);
  for (int i = 0; i <= 19; ++i) lambdas.push_back(i / 20.0);
  for (double extra : {0.073, 0.15, 0.25, 0.85, 0.75, 0.999}) ps.push_back(extra);
  for (double extra : {0.15, 0.25, 0.0001, 0.999}) lambdas.push_back(extra);
  bool seen[4] = {false, false, false, false};
  int points = 0;
  for (double p : ps) {
    for (double l : lambdas) {
      ++points;
      for (auto b : {ErrorBound::kJoint, ErrorBound::kPerValue}) {
        const ErrorAssumption a{b, l};
        const auto t = Table1Width(p, a);
        seen[static_cast<int>(t.regime)] = true;
        o.Near(t.width, MisclassRegion(p, a).width(), 1e-12, "Table 1 width");
      }
    }
  }
  for (bool s : seen) o.Check(s, "all four regimes visited");
  o.detail = std::to_string(points) + " (p, lambda) points";
  return o;
}

Outcome Ac5() {
  Outcome o;
  Uniform u(5);
  constexpr int kPerVariant = 1000;
  auto compare = [&](const ScenarioObservables& s, const char* name) {
    const auto a = RegionFor(s);
    const auto b = SharpnessOracle(s);
    o.Near(b.lo(), a.lo(), 1e-6, std::string(name) + " lo");
    o.Near(b.hi(), a.hi(), 1e-6, std::string(name) + " hi");
  };
  for (int i = 0; i < kPerVariant; ++i) {
    compare(NonresponseAllScenario{u(), u()}, "nr-all");
    const double r = u(), q = u() * (1 - r), m = u() * (1 - r - q);
    compare(NonresponseSkipScenario{r, u(), q, m, r + q}, "nr-skip");
    for (auto b : {ErrorBound::kJoint, ErrorBound::kPerValue}) {
      // Every fifth draw sits on a regime boundary or an endpoint.
      double p = u(), l = 0.98 * u();
      if (i % 5 == 0) p = std::vector<double>{0.0, 1.0, l, 1 - l}[i / 5 % 4];
      compare(MisclassAllScenario{p, {b, l}}, "mc-all");
      const double px = p + (1 - p) * u();
      compare(MisclassSkipScenario{p, px, {b, l}}, "mc-skip");
    }
  }
  o.detail = std::to_string(kPerVariant) + " scenarios x 6 variants";
  return o;
}

ResponseModel RandomModel(Uniform& u, DesignOption design, bool binary) {
  const int kind = binary ? u.Pick(2) : 0;
  if (kind == 0) {
    const auto rule = static_cast<MissingnessRule>(u.Pick(3));
    return NonresponseModel{u.In(0, 0.4), u.In(0, 0.6), rule};
  }
  (void)design;
  const auto rule = static_cast<FlipRule>(u.Pick(3));
  const auto bound = u.Pick(2) == 0 ? ErrorBound::kJoint : ErrorBound::kPerValue;
  // Adversarial runs spend the whole error budget.
  const double intensity = u.Pick(2) == 0 ? 1.0 : u();
  return MisclassModel{rule, bound, u.In(0, 0.45), intensity};
}

Outcome Ac6() {
  Outcome o;
  Uniform u(6);
  constexpr int kPopulations = 1000;
  int adversarial = 0;
  for (int i = 0; i < kPopulations; ++i) {
    PopulationConfig c;
    c.p_x = u();
    c.p_y_given_x = u();
    c.support_max = u.Pick(2) == 0 ? 1.0 : u.In(0.5, 20.0);
    c.shape = u.Pick(2) == 0 ? OutcomeShape::kBinary : OutcomeShape::kUniform;
    if (c.shape == OutcomeShape::kUniform && u.Pick(2) == 0) {
      const double s = c.support_max;
      c.g = GFunction::Tabulated({{0, 0}, {s / 3, 0.6}, {s, 1}});
    }
    const std::size_t n = 50 + static_cast<std::size_t>(u.Pick(450));
    const auto pop = GeneratePopulation(n, c, u.Seed());
    const auto design = u.Pick(2) == 0 ? DesignOption::kAll : DesignOption::kSkip;
    const auto model = RandomModel(u, design, pop.IsBinary());
    if (const auto* nr = std::get_if<NonresponseModel>(&model)) {
      adversarial += nr->rule != MissingnessRule::kMissingAtRandom;
    } else {
      adversarial += std::get<MisclassModel>(model).rule != FlipRule::kRandom;
    }
    ObservedDataset obs = ApplyDesign(pop, design, model, u.Seed());
    ScenarioObservables s;
    try {
      s = EmpiricalQuantities(obs, obs.g);
    } catch (const ValidationError&) {
      // No follow-up answered: the conditional mean is undefined and the
      // region is the whole unit interval.
      o.Check(CoverageCheck(obs.truth.mean_g, RegionNone()), "unanswered population");
      continue;
    }
    const double truth = TruthFor(s, obs.truth);
    std::ostringstream os;
    os << "population " << i << " truth " << truth << " region ["
       << RegionFor(s).lo() << ", " << RegionFor(s).hi() << "]";
    o.Check(CoverageCheck(truth, RegionFor(s)), os.str());
  }
  o.detail = std::to_string(kPopulations) + " populations, " +
             std::to_string(adversarial) + " with adversarial rules";
  return o;
}

Outcome Ac7() {
  Outcome o;
  Uniform u(7);
  constexpr int kRuns = 200;
  for (int i = 0; i < kRuns; ++i) {
    PopulationConfig c;
    c.p_x = u.In(0.2, 1.0);
    c.p_y_given_x = u();
    const auto pop = GeneratePopulation(200 + u.Pick(800), c, u.Seed());
    MixtureModel m;
    m.lambda = u.In(0.0, 0.45);
    m.p_w0 = m.lambda * (u.Pick(2) == 0 ? 1.0 : u());
    m.error = static_cast<ContaminationDraw>(u.Pick(4));
    m.independent = u.Pick(2) == 0;
    m.target = static_cast<ErrorTarget>(u.Pick(3));
    const auto obs = ApplyDesign(pop, DesignOption::kAll, m, u.Seed());

    std::size_t agree = 0, n1 = 0, n0 = 0, agree1 = 0, agree0 = 0;
    for (std::size_t k = 0; k < pop.members.size(); ++k) {
      const bool y = pop.members[k].y_raw > 0.0;
      const bool yr = *obs.records[k].followup_value > 0.0;
      agree += y == yr;
      (y ? n1 : n0)++;
      (y ? agree1 : agree0) += y == yr;
    }
    const double n = static_cast<double>(pop.members.size());
    o.Check(agree >= (1 - m.lambda) * n - 1e-9, "joint agreement bound");
    if (m.independent) {
      o.Check(agree1 >= (1 - m.lambda) * n1 - 1e-9, "per-value bound y=1");
      o.Check(agree0 >= (1 - m.lambda) * n0 - 1e-9, "per-value bound y=0");
    }
    const auto s = EmpiricalQuantities(obs, obs.g);
    const auto* mc = std::get_if<MisclassAllScenario>(&s);
    o.Check(mc != nullptr, "mixture maps to misclassification");
    if (mc == nullptr) continue;
    o.Check(mc->assumption == MixtureToMisclass({m.lambda, m.independent}),
            "assumption from mixture_to_misclass");
    o.Check(CoverageCheck(TruthFor(s, obs.truth), RegionFor(s)), "mixture coverage");
  }
  o.detail = std::to_string(kRuns) + " mixture runs";
  return o;
}

Outcome Ac8() {
  Outcome o;
  Uniform u(8);
  constexpr int kScenarios = 120;
  constexpr double kStep = 1e-4;
  long points = 0;
  for (int i = 0; i < kScenarios; ++i) {
    DecisionScenario d;
    if (i % 2 == 0) {
      const double r = u(), q = u() * (1 - r), m = u() * (1 - r - q);
      d = NonresponseDecision{{u(), u()}, {r, u(), q, m, r + q}};
    } else {
      const auto b = u.Pick(2) == 0 ? ErrorBound::kJoint : ErrorBound::kPerValue;
      const double px = u(), p = px * u();
      d = MisclassDecision{{u(), {b, 0.5 * u()}}, {p, px, {b, 0.5 * u()}}};
    }
    const double gamma_max = 10.0;
    const auto part = PartitionGamma(d, gamma_max);
    const auto losses = Losses(d);
    std::size_t cell = 0;
    for (long k = 0; k * kStep <= gamma_max; ++k) {
      const double g = k * kStep;
      while (cell + 1 < part.cells.size() && g > part.cells[cell].hi) ++cell;
      const bool near = std::any_of(
          part.breakpoints.begin(), part.breakpoints.end(),
          [&](double b) { return std::abs(g - b) <= 1e-4; });
      if (near) continue;
      ++points;
      const auto brute = PreferredOption(Minimizers(losses, g));
      if (brute != part.cells[cell].chosen) {
        std::ostringstream os;
        os << "scenario " << i << " gamma " << g;
        o.Check(false, os.str());
      }
    }
    o.Check(part.cells.front().lo == 0.0 && part.cells.back().hi == gamma_max,
            "cells tile [0, gamma_max]");
  }
  o.detail = std::to_string(kScenarios) + " scenarios, " + std::to_string(points) +
             " grid points";
  return o;
}

// 10,748 respondents whose counts match the printed HRS quantities.
std::string CalibratedHrsFile() {
  constexpr int kN = 10748, kAnswered = 9144, kPositive = 3693, kFollowMissing = 212,
                kOpenMissing = 777;
  std::ostringstream os;
  os << "respondent_id,opening_asked,opening_value,followup_asked,followup_value\n";
  for (int i = 0; i < kN; ++i) {
    os << "h" << i << ",1,";
    if (i < kAnswered) {
      os << "1,1," << (i < kPositive ? "1" : "0");
    } else if (i < kAnswered + kFollowMissing) {
      os << "1,1,";
    } else if (i < kAnswered + kFollowMissing + kOpenMissing) {
      os << ",0,";
    } else {
      os << "0,0,";
    }
    os << "\n";
  }
  return os.str();
}

Outcome Ac9() {
  Outcome o;
  Uniform u(9);
  int trips = 0;
  for (int i = 0; i < 40; ++i) {
    PopulationConfig c;
    c.p_x = u();
    c.p_y_given_x = u();
    c.support_max = u.In(0.5, 10.0);
    const bool binary = i % 2 == 0;
    c.shape = binary ? OutcomeShape::kBinary : OutcomeShape::kUniform;
    const auto pop = GeneratePopulation(500 + u.Pick(2000), c, u.Seed());
    const auto design = u.Pick(2) == 0 ? DesignOption::kAll : DesignOption::kSkip;
    ResponseModel model = RandomModel(u, design, binary);
    if (binary && design == DesignOption::kAll && i % 4 == 0) {
      model = MixtureModel{0.1, 0.2, ContaminationDraw::kCoin, false, ErrorTarget::kAny};
    }
    const auto obs = ApplyDesign(pop, design, model, u.Seed());
    const auto schema = SchemaFor(obs);
    std::stringstream file;
    WriteMicrodata(file, obs.records, schema);
    const auto parsed = ParseMicrodata(file, schema);
    o.Check(parsed.rejects.empty(), "simulator output has no rejects");
    o.Check(parsed.records == obs.records, "records round-trip");
    try {
      const auto a = EmpiricalQuantities(obs, obs.g);
      const auto b = EmpiricalQuantities(parsed.records, schema, model);
      const auto ra = RegionFor(a), rb = RegionFor(b);
      o.Check(ra == rb, "scenario quantities identical after re-ingest");
      ++trips;
    } catch (const ValidationError&) {
      continue;
    }
  }

  std::istringstream hrs(CalibratedHrsFile());
  const auto parsed = ParseMicrodata(hrs, IngestSchema{});
  o.Check(parsed.records.size() == 10748 && parsed.rejects.empty(), "10,748 rows accepted");
  const auto s = ComputeNonresponseSkip(parsed.records, IngestSchema{});
  const double n = 10748, grain = 5e-5;
  o.Near(s.p_y_resp, 0.8508, grain + 1 / n, "p_y_resp");
  o.Near(s.mean_resp, 0.4039, grain + 1 / (s.p_y_resp * n), "mean_resp");
  o.Near(s.p_x_resp_y_nonresp, 0.0197, grain + 1 / n, "p_x_resp_y_nonresp");
  o.Near(s.p_x_nonresp, 0.0723, grain + 1 / n, "p_x_nonresp");
  o.Near(s.p_asked, 0.8705, grain + 1 / n, "p_asked");
  o.detail = std::to_string(trips) + " simulator round trips + calibrated file";
  return o;
}

}  // namespace
}  // namespace skipseq

int main() {
  using skipseq::Outcome;
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "HRS nonresponse example", skipseq::Ac1},
      {"AC2", "NLSOM misclassification example", skipseq::Ac2},
      {"AC3", "gamma-threshold table reproduction", skipseq::Ac3},
      {"AC4", "closed-form width consistency", skipseq::Ac4},
      {"AC5", "sharpness oracle equivalence", skipseq::Ac5},
      {"AC6", "coverage on synthetic populations", skipseq::Ac6},
      {"AC7", "mixture model equivalence", skipseq::Ac7},
      {"AC8", "gamma partition vs brute force", skipseq::Ac8},
      {"AC9", "ingest round trip", skipseq::Ac9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.Check(false, std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    std::printf("%s %s  %s: %d/%d checks", c.id, o.pass ? "PASS" : "FAIL", c.name,
                o.checks - o.failures, o.checks);
    if (!o.detail.empty()) std::printf(", %s", o.detail.c_str());
    std::printf(" (%.1f ms)\n", ms);
    if (!o.pass) {
      ++failed;
      std::printf("    first failure: %s\n", o.first_failure.c_str());
    }
  }
  return failed == 0 ? 0 : 1;
}
