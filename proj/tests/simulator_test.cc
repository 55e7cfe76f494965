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


#include "skipseq/simulator.h"

#include <gtest/gtest.h>

#include <cmath>

namespace skipseq {
namespace {

PopulationConfig Binary(double p_x, double p_y) {
  PopulationConfig c;
  c.p_x = p_x;
  c.p_y_given_x = p_y;
  return c;
}

TEST(PopulationTest, Deterministic) {
  const auto a = GeneratePopulation(500, Binary(0.4, 0.6), 11);
  const auto b = GeneratePopulation(500, Binary(0.4, 0.6), 11);
  EXPECT_EQ(a.members, b.members);
  const auto c = GeneratePopulation(500, Binary(0.4, 0.6), 12);
  EXPECT_NE(a.members, c.members);
}

TEST(PopulationTest, OpeningZeroForcesZero) {
  PopulationConfig c = Binary(0.5, 0.9);
  c.shape = OutcomeShape::kUniform;
  c.support_max = 3.0;
  const auto pop = GeneratePopulation(5000, c, 2);
  for (const auto& m : pop.members) {
    if (m.x == 0) {
      EXPECT_EQ(m.y_raw, 0.0);
    }
    EXPECT_LE(m.y_raw, 3.0);
  }
  EXPECT_FALSE(pop.IsBinary());
}

TEST(PopulationTest, FrequenciesWithinThreeSigma) {
  const std::size_t n = 20000;
  const auto pop = GeneratePopulation(n, Binary(0.3, 0.5), 3);
  std::size_t x1 = 0;
  for (const auto& m : pop.members) x1 += m.x;
  const double sd_x = std::sqrt(0.3 * 0.7 / n);
  EXPECT_NEAR(static_cast<double>(x1) / n, 0.3, 3 * sd_x);
  const double sd_y = std::sqrt(0.15 * 0.85 / n);
  EXPECT_NEAR(pop.TrueProbabilityPositive(), 0.15, 3 * sd_y);
}

TEST(PopulationTest, RejectsBadConfig) {
  EXPECT_THROW(GeneratePopulation(0, Binary(0.3, 0.5), 1), ValidationError);
  EXPECT_THROW(GeneratePopulation(10, Binary(1.3, 0.5), 1), ValidationError);
}

TEST(ApplyDesignTest, RecordsAlignWithMembers) {
  const auto pop = GeneratePopulation(1000, Binary(0.5, 0.5), 4);
  const auto obs = ApplyDesign(pop, DesignOption::kSkip, NonresponseModel{0.1, 0.1}, 5);
  ASSERT_EQ(obs.records.size(), pop.members.size());
  for (std::size_t i = 0; i < obs.records.size(); ++i) {
    const auto& r = obs.records[i];
    if (r.opening_value) {
      EXPECT_EQ(*r.opening_value, pop.members[i].x);
    }
    if (r.followup_value) {
      EXPECT_EQ(*r.followup_value, pop.members[i].y_raw);
    }
    EXPECT_EQ(r.followup_asked, r.opening_value && *r.opening_value == 1.0);
  }
}

TEST(ApplyDesignTest, NoneAsksNothing) {
  const auto pop = GeneratePopulation(100, Binary(0.5, 0.5), 4);
  const auto obs = ApplyDesign(pop, DesignOption::kNone, NonresponseModel{}, 5);
  for (const auto& r : obs.records) {
    EXPECT_FALSE(r.opening_asked);
    EXPECT_FALSE(r.followup_asked);
  }
  EXPECT_THROW(EmpiricalQuantities(obs, obs.g), ValidationError);
}

TEST(ApplyDesignTest, FullResponsePointIdentifies) {
  const auto pop = GeneratePopulation(2000, Binary(0.5, 0.5), 6);
  const auto obs = ApplyDesign(pop, DesignOption::kSkip, NonresponseModel{}, 7);
  const auto region = RegionFor(EmpiricalQuantities(obs, obs.g));
  EXPECT_NEAR(region.width(), 0.0, 1e-12);
  EXPECT_NEAR(region.lo(), pop.TrueMean(), 1e-12);
}

TEST(ApplyDesignTest, ZeroLambdaMisclassIsExact) {
  const auto pop = GeneratePopulation(2000, Binary(0.5, 0.5), 6);
  for (auto design : {DesignOption::kAll, DesignOption::kSkip}) {
    const auto obs = ApplyDesign(pop, design, MisclassModel{}, 7);
    const auto s = EmpiricalQuantities(obs, obs.g);
    const auto region = RegionFor(s);
    EXPECT_NEAR(region.lo(), pop.TrueProbabilityPositive(), 1e-12);
    EXPECT_NEAR(region.width(), 0.0, 1e-12);
  }
}

TEST(ApplyDesignTest, MisclassRequiresBinary) {
  PopulationConfig c = Binary(0.5, 0.5);
  c.shape = OutcomeShape::kUniform;
  const auto pop = GeneratePopulation(100, c, 1);
  EXPECT_THROW(ApplyDesign(pop, DesignOption::kAll, MisclassModel{}, 1),
               ValidationError);
}

TEST(ApplyDesignTest, MixtureAllOnly) {
  const auto pop = GeneratePopulation(100, Binary(0.5, 0.5), 1);
  EXPECT_THROW(ApplyDesign(pop, DesignOption::kSkip, MixtureModel{}, 1),
               ValidationError);
  EXPECT_THROW(ApplyDesign(pop, DesignOption::kAll, MixtureModel{0.3, 0.2}, 1),
               ValidationError);
}

TEST(ApplyDesignTest, Deterministic) {
  const auto pop = GeneratePopulation(800, Binary(0.5, 0.5), 1);
  const MisclassModel m{FlipRule::kRandom, ErrorBound::kJoint, 0.2, 1.0};
  const auto a = ApplyDesign(pop, DesignOption::kSkip, m, 99);
  const auto b = ApplyDesign(pop, DesignOption::kSkip, m, 99);
  EXPECT_EQ(a.records, b.records);
}

TEST(ApplyDesignTest, JointFlipBudgetExact) {
  const auto pop = GeneratePopulation(1000, Binary(0.5, 0.5), 1);
  const MisclassModel m{FlipRule::kRandom, ErrorBound::kJoint, 0.1, 1.0};
  const auto obs = ApplyDesign(pop, DesignOption::kAll, m, 3);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    wrong += *obs.records[i].followup_value != pop.members[i].y_raw;
  }
  EXPECT_EQ(wrong, 100u);
}

TEST(SampleTest, DrawsFromPopulation) {
  const auto pop = GeneratePopulation(100, Binary(0.5, 0.5), 1);
  const auto s = SamplePopulation(pop, 1000, 2);
  EXPECT_EQ(s.members.size(), 1000u);
  EXPECT_NEAR(s.TrueMean(), pop.TrueMean(), 0.06);
}

TEST(CoverageTest, Check) {
  EXPECT_TRUE(CoverageCheck(0.5, UnitInterval(0.5, 0.6)));
  EXPECT_TRUE(CoverageCheck(0.5 - 1e-10, UnitInterval(0.5, 0.6)));
  EXPECT_FALSE(CoverageCheck(0.49, UnitInterval(0.5, 0.6)));
}

}  // namespace
}  // namespace skipseq
