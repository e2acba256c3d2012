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

#include "pondc/workload.h"

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "pondc/error.h"
#include "pondc/rng.h"

namespace pondc {
namespace {

using Vms = std::vector<std::tuple<int, int, int>>;
using Flows = std::vector<std::tuple<int, int, int>>;

Vms VmsOf(const Workload& w) {
  Vms out;
  for (const VmRequest& v : w.vms) out.emplace_back(v.id, v.cpu_demand, v.mem_demand);
  return out;
}

Flows FlowsOf(const Workload& w) {
  Flows out;
  for (const Flow& f : w.flows) out.emplace_back(f.a, f.b, f.rate);
  return out;
}

// Reference outputs below come from tests/oracles/workload_oracle.py, an
// independent implementation of the engine and of the documented draw order.

TEST(RngTest, EngineMatchesReferenceSequence) {
  std::mt19937_64 engine;  // default seed 5489
  engine.discard(9999);
  EXPECT_EQ(engine(), 9981545732273789042ull);
}

TEST(RngTest, UniformIntStaysInRange) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.UniformInt(40, 200);
    ASSERT_GE(v, 40);
    ASSERT_LE(v, 200);
  }
  EXPECT_EQ(rng.UniformInt(5, 5), 5);
}

TEST(WorkloadTest, GoldenFiveVmsSeedSeven) {
  const Workload w = GenerateWorkload(5, 7);
  EXPECT_EQ(VmsOf(w), (Vms{{0, 825, 1422}, {1, 1539, 986}, {2, 1410, 1340},
                           {3, 1396, 587}, {4, 1020, 1417}}));
  EXPECT_EQ(FlowsOf(w),
            (Flows{{0, 2, 75}, {0, 1, 151}, {2, 3, 186}, {0, 4, 170}}));
  EXPECT_EQ(w.seed, 7u);
}

TEST(WorkloadTest, GoldenTenVmsSeedThree) {
  const Workload w = GenerateWorkload(10, 3);
  EXPECT_EQ(VmsOf(w),
            (Vms{{0, 974, 669}, {1, 839, 760}, {2, 1687, 1671},
                 {3, 1590, 909}, {4, 1827, 1298}, {5, 786, 929},
                 {6, 1021, 1481}, {7, 1210, 1081}, {8, 1724, 1944},
                 {9, 1132, 1890}}));
  EXPECT_EQ(FlowsOf(w),
            (Flows{{0, 2, 138}, {1, 5, 69},  {2, 3, 182}, {3, 6, 42},
                   {3, 4, 122}, {3, 5, 175}, {4, 5, 67},  {5, 7, 58},
                   {0, 7, 156}, {3, 8, 184}, {4, 8, 125}, {1, 8, 120},
                   {0, 9, 197}, {1, 9, 80},  {8, 9, 58}}));
}

TEST(WorkloadTest, TwoVmsHaveExactlyOneFlow) {
  const Workload w = GenerateWorkload(2, 11);
  EXPECT_EQ(VmsOf(w), (Vms{{0, 1057, 1707}, {1, 1179, 942}}));
  EXPECT_EQ(FlowsOf(w), (Flows{{0, 1, 60}}));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Workload v = GenerateWorkload(2, seed);
    ASSERT_EQ(v.flows.size(), 1u);
    EXPECT_EQ(v.flows[0].a, 0);
    EXPECT_EQ(v.flows[0].b, 1);
  }
}

TEST(WorkloadTest, TooFewVms) {
  EXPECT_THROW(GenerateWorkload(1, 1), Unsatisfiable);
  EXPECT_THROW(GenerateWorkload(0, 1), Unsatisfiable);
}

TEST(WorkloadTest, Deterministic) {
  EXPECT_EQ(SerializeWorkload(GenerateWorkload(5, 7)),
            SerializeWorkload(GenerateWorkload(5, 7)));
  EXPECT_NE(SerializeWorkload(GenerateWorkload(5, 7)),
            SerializeWorkload(GenerateWorkload(5, 8)));
}

TEST(WorkloadProperty, BoundsDegreesAndUniquePairs) {
  for (int n : {2, 3, 5, 10, 15}) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const Workload w = GenerateWorkload(n, seed);
      ASSERT_EQ(static_cast<int>(w.vms.size()), n);
      for (int i = 0; i < n; ++i) {
        const VmRequest& v = w.vms[i];
        ASSERT_EQ(v.id, i);
        ASSERT_GE(v.cpu_demand, 500);
        ASSERT_LE(v.cpu_demand, 2000);
        ASSERT_GE(v.mem_demand, 500);
        ASSERT_LE(v.mem_demand, 2000);
      }
      std::set<std::pair<int, int>> pairs;
      for (const Flow& f : w.flows) {
        ASSERT_LT(f.a, f.b);
        ASSERT_GE(f.rate, 40);
        ASSERT_LE(f.rate, 200);
        ASSERT_TRUE(pairs.insert({f.a, f.b}).second);
      }
      for (const auto& [id, degree] : w.Degrees()) {
        ASSERT_GE(degree, 1) << "vm " << id;
        ASSERT_LE(degree, n - 1);
      }
      ASSERT_NO_THROW(w.Validate());
    }
  }
}

TEST(WorkloadProperty, RoundTrip) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Workload w = GenerateWorkload(2 + static_cast<int>(seed % 14), seed);
    ASSERT_EQ(ParseWorkload(SerializeWorkload(w)), w);
  }
  GenerationParams wide;
  wide.rate_max = 400;
  wide.degree_max = 5;
  const Workload w = GenerateWorkload(8, 3, wide);
  EXPECT_EQ(ParseWorkload(SerializeWorkload(w)), w);
}

TEST(WorkloadTest, CustomBoundsAreHonoured) {
  GenerationParams p;
  p.cpu_min = p.cpu_max = 900;
  p.degree_min = p.degree_max = 2;
  const Workload w = GenerateWorkload(6, 4, p);
  for (const VmRequest& v : w.vms) EXPECT_EQ(v.cpu_demand, 900);
  for (const auto& [id, degree] : w.Degrees()) EXPECT_GE(degree, 2);
  p.cpu_min = 0;
  EXPECT_THROW(GenerateWorkload(6, 4, p), InvalidConfig);
}

const char* kFiveVms = R"({
  "seed": 1,
  "vms": [
    {"id": 0, "cpu": 1000, "mem": 1000},
    {"id": 1, "cpu": 1000, "mem": 1000},
    {"id": 2, "cpu": 1000, "mem": 1000},
    {"id": 3, "cpu": 1000, "mem": 1000},
    {"id": 4, "cpu": 1000, "mem": 1000}
  ],
  "flows": [
    {"a": 0, "b": FLOW_B, "rate": FLOW_RATE}
  ]
})";

std::string FiveVms(const std::string& b, const std::string& rate) {
  std::string s = kFiveVms;
  s.replace(s.find("FLOW_B"), 6, b);
  s.replace(s.find("FLOW_RATE"), 9, rate);
  return s;
}

TEST(WorkloadParseTest, AcceptsHandWritten) {
  const Workload w = ParseWorkload(FiveVms("1", "100"));
  EXPECT_EQ(w.vms.size(), 5u);
  EXPECT_EQ(FlowsOf(w), (Flows{{0, 1, 100}}));
}

TEST(WorkloadParseTest, DanglingReference) {
  EXPECT_THROW(ParseWorkload(FiveVms("99", "100")), ValidationError);
}

TEST(WorkloadParseTest, RateOutOfBounds) {
  EXPECT_THROW(ParseWorkload(FiveVms("1", "300")), ValidationError);
}

TEST(WorkloadParseTest, SelfLoopAndDuplicates) {
  EXPECT_THROW(ParseWorkload(FiveVms("0", "100")), ValidationError);
  std::string dup = FiveVms("1", "100");
  dup.replace(dup.find("\"flows\": ["), 10,
              "\"flows\": [{\"a\": 1, \"b\": 0, \"rate\": 50},");
  EXPECT_THROW(ParseWorkload(dup), ValidationError);
}

TEST(WorkloadParseTest, SyntaxErrorReportsLine) {
  std::string broken = FiveVms("1", "100");
  broken.replace(broken.find("\"mem\": 1000},\n    {\"id\": 2"), 12,
                 "\"mem\": 1000,,");
  try {
    ParseWorkload(broken);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos)
        << e.what();
  }
}

TEST(WorkloadParseTest, WrongTypeReportsField) {
  std::string bad = FiveVms("1", "\"fast\"");
  try {
    ParseWorkload(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("workload.flows[0].rate"),
              std::string::npos)
        << e.what();
  }
  EXPECT_THROW(ParseWorkload("{\"seed\": 1, \"vms\": []}"), ParseError);
  EXPECT_THROW(ParseWorkload("[]"), ParseError);
}

}  // namespace
}  // namespace pondc
