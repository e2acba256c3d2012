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

#include "pondc/baseline.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "test_support.h"

namespace pondc {
namespace {

using testing::MakeWorkload;

Topology Fabric(int g, int sg, int n) {
  TopologyConfig c;
  c.num_groups = g;
  c.subgroups_per_group = sg;
  c.servers_per_subgroup = n;
  return BuildTopology(c);
}

const PowerParams kDefaults;

TEST(RoundRobinTest, CyclesThroughCanonicalOrder) {
  const Topology t = Fabric(2, 2, 2);
  const Workload w = MakeWorkload({{1000, 1000}, {1000, 1000}}, {{0, 1, 100}});
  const SolveReport r = RoundRobinEmbed(t, w, kDefaults);
  EXPECT_EQ(r.embedding.assignment.at(0), (ServerAddress{0, 0, 0}));
  EXPECT_EQ(r.embedding.assignment.at(1), (ServerAddress{0, 0, 1}));
  EXPECT_EQ(r.method, SolveMethod::kRoundRobin);
  EXPECT_EQ(r.power.total_w, 487.0);

  const double optimal = SolveOptimal(t, w, kDefaults).power.total_w;
  const double savings = 100 * (r.power.total_w - optimal) / r.power.total_w;
  EXPECT_NEAR(savings, 41.79, 0.005);
}

TEST(RoundRobinTest, WrapsAndSkipsFullServers) {
  const Topology t = Fabric(1, 1, 2);
  const Workload w = MakeWorkload(
      {{2000, 600}, {600, 600}, {1000, 600}, {500, 600}}, {{0, 1, 50}});
  const SolveReport r = RoundRobinEmbed(t, w, kDefaults);
  // VM2 would land on server 0 (cpu 3000) so it moves to server 1; VM3 then
  // wraps to server 0.
  EXPECT_EQ(AssignmentVector(t, r.embedding), (std::vector<int>{0, 1, 1, 0}));
}

TEST(RoundRobinTest, SingleVmMatchesOptimal) {
  const Topology t = Fabric(2, 2, 3);
  const Workload w = MakeWorkload({{1234, 800}}, {});
  EXPECT_EQ(RoundRobinEmbed(t, w, kDefaults).power,
            SolveOptimal(t, w, kDefaults).power);
}

TEST(RoundRobinTest, ReportsWhatFailed) {
  const Workload w = MakeWorkload({{2000, 1000}, {2000, 1000}}, {{0, 1, 100}});
  EXPECT_THROW(RoundRobinEmbed(Fabric(1, 1, 1), w, kDefaults), Infeasible);

  // Link capacity too small for the pair's flow: C4 is named.
  TopologyConfig c = Fabric(1, 1, 2).config();
  c.link_capacity = 100;
  try {
    RoundRobinEmbed(BuildTopology(c), w, kDefaults);
    FAIL() << "expected Infeasible";
  } catch (const Infeasible& e) {
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_EQ(e.violations()[0].constraint, Constraint::kSubgroupLink);
  }
}

TEST(RandomBaselineTest, DeterministicAndFeasible) {
  const Topology t = Fabric(2, 2, 3);
  const Workload w = GenerateWorkload(10, 4);
  const SolveReport a = RandomFeasibleEmbed(t, w, kDefaults, 99);
  const SolveReport b = RandomFeasibleEmbed(t, w, kDefaults, 99);
  EXPECT_EQ(a.embedding, b.embedding);
  EXPECT_EQ(a.power, b.power);
  EXPECT_EQ(a.method, SolveMethod::kRandom);
  EXPECT_TRUE(CheckFeasibility(t, ComputeUsage(t, w, a.embedding)).empty());
  EXPECT_EQ(TotalPower(t, w, a.embedding, kDefaults), a.power);
}

TEST(RandomBaselineTest, MeanNotBelowOptimal) {
  const Topology t = Fabric(2, 2, 3);
  const Workload w = GenerateWorkload(8, 2);
  const double optimal = SolveOptimal(t, w, kDefaults).power.total_w;
  double sum = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const double p = RandomFeasibleEmbed(t, w, kDefaults, seed).power.total_w;
    EXPECT_GE(p, optimal);
    sum += p;
  }
  EXPECT_GE(sum / 100, optimal);
}

TEST(RandomBaselineTest, GivesUp) {
  const Workload w = MakeWorkload({{2000, 1000}, {2000, 1000}}, {{0, 1, 100}});
  try {
    RandomFeasibleEmbed(Fabric(1, 1, 1), w, kDefaults, 1, 50);
    FAIL() << "expected GaveUp";
  } catch (const GaveUp& e) {
    EXPECT_EQ(e.attempts(), 50);
  }
}

// Baselines never beat the optimum, and with five or more VMs they are
// strictly worse on at least 90% of instances.
TEST(BaselineProperty, Dominance) {
  int compared = 0, strict = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    for (int n : {5, 10}) {
      const Topology t = Fabric(2, 2, 3);
      const Workload w = GenerateWorkload(n, seed);
      SolveReport rr;
      try {
        rr = RoundRobinEmbed(t, w, kDefaults);
      } catch (const Infeasible&) {
        continue;
      }
      EXPECT_TRUE(CheckFeasibility(t, ComputeUsage(t, w, rr.embedding)).empty());
      const double optimal = SolveOptimal(t, w, kDefaults).power.total_w;
      ASSERT_GE(rr.power.total_w, optimal) << "seed " << seed;
      ++compared;
      strict += rr.power.total_w > optimal;
    }
  }
  EXPECT_GE(compared, 40);
  EXPECT_GE(strict, 0.9 * compared);
}

}  // namespace
}  // namespace pondc
