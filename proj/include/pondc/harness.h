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

#ifndef PONDC_HARNESS_H_
#define PONDC_HARNESS_H_

// Seeded experiment sweeps over workload size and subgroup size, comparing
// the optimal embedding with a baseline.
//
// Sweep CSV (one row per cell x seed x method, sorted by vm_count,
// servers_per_subgroup, seed, then optimal before the baseline):
//
//   vm_count,servers_per_subgroup,seed,method,status,optimal,total_w,
//   servers_activated,special_servers_activated,nodes_explored,config,
//   embedding[,elapsed_s]
//
//   status     ok | limit | infeasible | gave-up | error
//   optimal    1 when optimality was proved, else 0
//   total_w    "%.6f"; empty when no embedding exists
//   config     the run's topology, power and bound parameters as
//              key=value pairs joined by ';' (shortest round-trip numbers)
//   embedding  space-separated "vm@group.subgroup.index", VM-id order
//   elapsed_s  "%.6f", only written on request (it breaks byte-identical
//              reruns)
//
// Summary CSV (one row per vm_count x servers_per_subgroup):
//
//   vm_count,servers_per_subgroup,paired_seeds,optimal_mean_w,
//   baseline_mean_w,savings_pct,optimal_servers_mean,
//   baseline_servers_mean,optimal_special_mean,baseline_special_mean,
//   reference_savings_pct
//
// Watts and means use "%.3f", percentages "%.2f". A seed is paired when
// both methods produced an embedding; savings are (baseline - optimal) /
// baseline per paired seed, then averaged. reference_savings_pct carries the
// published 24 / 22 / 26 % figures for 5 / 10 / 15 VMs and is empty
// elsewhere.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pondc/power_model.h"
#include "pondc/solver.h"
#include "pondc/topology.h"
#include "pondc/workload.h"

namespace pondc {

enum class BaselineKind { kRoundRobin, kRandom };

std::string ToString(BaselineKind b);
// "round-robin" or "random". Throws InvalidConfig.
BaselineKind ParseBaselineKind(const std::string& s);

struct SweepSpec {
  std::vector<int> vm_counts = {5, 10, 15};
  std::vector<int> servers_per_subgroup = {2, 3, 4};
  std::vector<std::uint64_t> seeds;  // defaults to 1..20 when empty
  PowerParams params;
  SolveLimits limits;
  BaselineKind baseline = BaselineKind::kRoundRobin;
  // servers_per_subgroup here is overridden per cell.
  TopologyConfig topology;
  GenerationParams bounds;
  // Cells solved concurrently; the output does not depend on it.
  int threads = 1;

  // Fills default seeds, then throws InvalidConfig on empty lists or
  // repeated seeds.
  void Normalize();
};

// JSON mirror of SweepSpec: keys vm_counts, servers_per_subgroup, seeds,
// params, limits, baseline, topology, bounds, threads. All optional.
SweepSpec SweepSpecFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const SweepSpec& spec);

enum class CellStatus { kOk, kLimit, kInfeasible, kGaveUp, kError };
std::string ToString(CellStatus s);

struct SweepRow {
  int vm_count = 0;
  int servers_per_subgroup = 0;
  std::uint64_t seed = 0;
  std::string method;
  CellStatus status = CellStatus::kOk;
  bool optimal = false;
  std::optional<double> total_w;
  int servers_activated = 0;
  int special_servers_activated = 0;
  std::int64_t nodes_explored = 0;
  std::string config;
  std::optional<Embedding> embedding;
  double elapsed_s = 0;
  std::string error;  // not serialized
};

// Canonical key=value encoding of everything a row depends on besides
// (vm_count, servers_per_subgroup, seed).
std::string ConfigTag(const TopologyConfig& topology,
                      const PowerParams& params,
                      const GenerationParams& bounds);
struct RunConfig {
  TopologyConfig topology;
  PowerParams params;
  GenerationParams bounds;
};
// Throws ParseError.
RunConfig ParseConfigTag(const std::string& tag);

std::vector<SweepRow> RunSweep(SweepSpec spec);

std::string WriteSweepCsv(const std::vector<SweepRow>& rows,
                          bool with_timing = false);
// Throws ParseError.
std::vector<SweepRow> ParseSweepCsv(const std::string& text);

struct SummaryRow {
  int vm_count = 0;
  int servers_per_subgroup = 0;
  int paired_seeds = 0;
  double optimal_mean_w = 0;
  double baseline_mean_w = 0;
  double savings_pct = 0;
  double optimal_servers_mean = 0;
  double baseline_servers_mean = 0;
  double optimal_special_mean = 0;
  double baseline_special_mean = 0;
  std::optional<double> reference_savings_pct;
};

// Throws MixedSweep when rows disagree on config or carry more than one
// baseline method.
std::vector<SummaryRow> Summarize(const std::vector<SweepRow>& rows);
std::string WriteSummaryCsv(const std::vector<SummaryRow>& summary);

// Re-derives each row's workload and topology, recomputes power from the
// stored embedding and compares it with the stored figures. Returns one
// message per mismatch; empty means every row verified.
std::vector<std::string> AuditRows(const std::vector<SweepRow>& rows);

std::string FormatEmbedding(const Embedding& e);
Embedding ParseEmbedding(const std::string& text);

}  // namespace pondc

#endif  // PONDC_HARNESS_H_
