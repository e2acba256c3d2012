// Copyright 2026 The pondc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pondc/lp_export.h"

#include <cmath>
#include <string>

#include "gtest/gtest.h"
#include "pondc/solver.h"
#include "test_support.h"

namespace pondc {
namespace {

using testing::LpModel;
using testing::MakeWorkload;

Topology Fabric(int g, int sg, int n) {
  TopologyConfig c;
  c.num_groups = g;
  c.subgroups_per_group = sg;
  c.servers_per_subgroup = n;
  return BuildTopology(c);
}

int CountPrefix(const LpModel& m, const std::string& prefix) {
  int n = 0;
  for (const std::string& v : m.variables) n += v.rfind(prefix, 0) == 0;
  return n;
}

TEST(LpExportTest, VariableNames) {
  EXPECT_EQ(LpServerVar(3, {1, 0, 2}), "x_v3_s1_0_2");
  EXPECT_EQ(LpActiveVar({0, 1, 1}), "y_s0_1_1");
  EXPECT_EQ(LpSpecialVar(1), "z_g1");
  EXPECT_EQ(LpTransitVar(2, 5, 0), "f_p2_5_g0");
  EXPECT_EQ(LpColocationVar(2, 5, {0, 0, 1}), "c_p2_5_s0_0_1");
}

TEST(LpExportTest, WorkedPairObjective) {
  const Topology t = Fabric(2, 2, 1);
  const Workload w = MakeWorkload({{1000, 1000}, {1000, 1000}}, {{0, 1, 100}});
  const PowerParams p;
  const SolveReport oracle = BruteForceOptimal(t, w, p);
  const LpModel m = testing::ParseLp(ExportLp(t, w, p));
  const auto values = testing::LpValuesFor(t, w, oracle.embedding);
  EXPECT_NEAR(m.objective.Evaluate(values), 283.5, 1e-6);
  EXPECT_TRUE(testing::ViolatedRows(m, values).empty());
  EXPECT_EQ(CountPrefix(m, "x_"), 2 * 4);
}

TEST(LpExportTest, EmptyWorkload) {
  const LpModel m =
      testing::ParseLp(ExportLp(Fabric(2, 2, 2), Workload{}, PowerParams{}));
  EXPECT_EQ(CountPrefix(m, "x_"), 0);
  EXPECT_EQ(m.objective.Evaluate({}), 0.0);
  // Every row holds at the all-zero point, so its value 0 is attainable.
  EXPECT_TRUE(testing::ViolatedRows(m, {}).empty());
}

TEST(LpExportTest, AllVariablesAreBinary) {
  const Topology t = Fabric(2, 2, 2);
  const Workload w = GenerateWorkload(5, 9);
  const LpModel m = testing::ParseLp(ExportLp(t, w, PowerParams{}));
  EXPECT_EQ(m.binaries, m.variables);
  EXPECT_EQ(CountPrefix(m, "x_"), 5 * 8);
  EXPECT_EQ(CountPrefix(m, "y_"), 8);
  EXPECT_EQ(CountPrefix(m, "z_"), 2);
  EXPECT_EQ(CountPrefix(m, "f_"), static_cast<int>(w.flows.size()) * 2);
}

// A point that violates C1 must violate some emitted row.
TEST(LpExportTest, RowsRejectOverload) {
  const Topology t = Fabric(1, 1, 2);
  const Workload w = MakeWorkload({{2000, 1000}, {2000, 1000}}, {{0, 1, 100}});
  const LpModel m = testing::ParseLp(ExportLp(t, w, PowerParams{}));
  Embedding e;
  e.assignment[0] = {0, 0, 0};
  e.assignment[1] = {0, 0, 0};
  EXPECT_FALSE(testing::ViolatedRows(m, testing::LpValuesFor(t, w, e)).empty());
}

// The transit rows must force f (and so z) up when a flow leaves its
// subgroup; otherwise the objective could skip the forwarding cost.
TEST(LpExportTest, TransitCannotBeDropped) {
  const Topology t = Fabric(2, 2, 1);
  const Workload w = MakeWorkload({{1000, 1000}, {1000, 1000}}, {{0, 1, 100}});
  const LpModel m = testing::ParseLp(ExportLp(t, w, PowerParams{}));
  Embedding e;
  e.assignment[0] = {0, 0, 0};
  e.assignment[1] = {1, 1, 0};
  auto values = testing::LpValuesFor(t, w, e);
  EXPECT_TRUE(testing::ViolatedRows(m, values).empty());
  values.erase("f_p0_1_g1");
  EXPECT_FALSE(testing::ViolatedRows(m, values).empty());
}

TEST(LpExportProperty, ObjectiveMatchesOracle) {
  for (const OnuMode mode :
       {OnuMode::kFixedWhenActive, OnuMode::kTrafficProportional}) {
    PowerParams p;
    p.onu_mode = mode;
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 20 && seed < 200; ++seed) {
      const testing::Instance in = testing::RandomSmallInstance(seed, 5);
      const Topology t(in.config);
      SolveReport oracle;
      try {
        oracle = BruteForceOptimal(t, in.workload, p);
      } catch (const Infeasible&) {
        continue;
      }
      ++checked;
      const LpModel m = testing::ParseLp(ExportLp(t, in.workload, p));
      const auto values = testing::LpValuesFor(t, in.workload, oracle.embedding);
      ASSERT_NEAR(m.objective.Evaluate(values), oracle.power.total_w, 1e-6)
          << "seed " << seed;
      const auto bad = testing::ViolatedRows(m, values);
      ASSERT_TRUE(bad.empty()) << "seed " << seed << " row " << bad.front();
      ASSERT_EQ(CountPrefix(m, "x_"),
                static_cast<int>(in.workload.vms.size()) * t.num_servers());
    }
    EXPECT_EQ(checked, 20);
  }
}

}  // namespace
}  // namespace pondc
