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

#include <algorithm>
#include <chrono>
#include <vector>

#include "pondc/rng.h"

namespace pondc {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<VmRequest> ById(const Workload& w) {
  std::vector<VmRequest> vms = w.vms;
  std::sort(vms.begin(), vms.end(),
            [](const VmRequest& a, const VmRequest& b) { return a.id < b.id; });
  return vms;
}

}  // namespace

SolveReport RoundRobinEmbed(const Topology& topology, const Workload& workload,
                            const PowerParams& params) {
  workload.Validate();
  params.Validate();
  const auto start = Clock::now();
  const TopologyConfig& c = topology.config();
  const int m = topology.num_servers();
  std::vector<double> cpu(m, 0), mem(m, 0);

  SolveReport report;
  report.method = SolveMethod::kRoundRobin;
  int cursor = 0;
  for (const VmRequest& vm : ById(workload)) {
    bool placed = false;
    for (int k = 0; k < m && !placed; ++k) {
      const int s = (cursor + k) % m;
      if (ExceedsCapacity(cpu[s] + vm.cpu_demand, c.server_cpu_capacity) ||
          ExceedsCapacity(mem[s] + vm.mem_demand, c.server_mem_capacity)) {
        continue;
      }
      cpu[s] += vm.cpu_demand;
      mem[s] += vm.mem_demand;
      report.embedding.assignment.emplace(vm.id, topology.ServerAt(s));
      cursor = (s + 1) % m;
      placed = true;
    }
    if (!placed) {
      throw Infeasible("round-robin: VM " + std::to_string(vm.id) +
                           " fits on no server (C1/C2)",
                       {});
    }
  }
  // Throws Infeasible naming any C3-C5 violation.
  report.power = TotalPower(topology, workload, report.embedding, params);
  report.nodes_explored = static_cast<std::int64_t>(workload.vms.size());
  report.elapsed_s =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

SolveReport RandomFeasibleEmbed(const Topology& topology,
                                const Workload& workload,
                                const PowerParams& params, std::uint64_t seed,
                                std::int64_t max_attempts) {
  workload.Validate();
  params.Validate();
  const auto start = Clock::now();
  const std::vector<VmRequest> vms = ById(workload);
  const int m = topology.num_servers();
  Rng rng(seed);

  SolveReport report;
  report.method = SolveMethod::kRandom;
  for (std::int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    Embedding e;
    for (const VmRequest& vm : vms) {
      e.assignment.emplace(vm.id,
                           topology.ServerAt(static_cast<int>(
                               rng.UniformInt(0, m - 1))));
    }
    const UsageReport usage = ComputeUsage(topology, workload, e);
    if (!CheckFeasibility(topology, usage).empty()) continue;
    report.embedding = std::move(e);
    report.power = PowerFromUsage(topology, usage, params);
    report.nodes_explored = attempt;
    report.elapsed_s =
        std::chrono::duration<double>(Clock::now() - start).count();
    return report;
  }
  throw GaveUp("random baseline found no feasible embedding in " +
                   std::to_string(max_attempts) + " attempts",
               max_attempts);
}

}  // namespace pondc
