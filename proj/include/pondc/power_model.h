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

#ifndef PONDC_POWER_MODEL_H_
#define PONDC_POWER_MODEL_H_

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "pondc/error.h"
#include "pondc/topology.h"
#include "pondc/workload.h"

namespace pondc {

enum class OnuMode { kFixedWhenActive, kTrafficProportional };

struct PowerParams {
  double p_idle = 201.0;    // W
  double p_max = 301.0;     // W
  double onu_power = 2.5;   // W
  OnuMode onu_mode = OnuMode::kFixedWhenActive;

  // Throws InvalidConfig.
  void Validate() const;

  friend bool operator==(const PowerParams&, const PowerParams&) = default;
};

std::string ToString(OnuMode mode);
// Accepts "FixedWhenActive" / "TrafficProportional" (also "fixed" /
// "proportional"). Throws InvalidConfig.
OnuMode ParseOnuMode(const std::string& s);

// Total map from VM id to hosting server. Special servers never host VMs.
struct Embedding {
  std::map<VmId, ServerAddress> assignment;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

// All vectors are indexed by the topology's flat indices.
struct UsageReport {
  std::vector<double> server_cpu;
  std::vector<double> server_mem;
  std::vector<int> server_vm_count;
  // Traffic entering or leaving the server's ONU (flows to other servers).
  std::vector<double> server_onu_traffic;
  std::vector<double> link_load;             // per subgroup
  std::vector<int> special_flow_count;       // distinct VM pairs forwarded
  std::vector<double> special_traffic;       // Mb/s forwarded

  friend bool operator==(const UsageReport&, const UsageReport&) = default;
};

enum class Constraint {
  kServerCpu,        // C1
  kServerMemory,     // C2
  kForwarding,       // C3: forwarding_fraction * flows <= 1
  kSubgroupLink,     // C4
  kSpecialOnuRate,   // C5
};

std::string ToString(Constraint c);

using ResourceLocation =
    std::variant<ServerAddress, SubgroupAddress, SpecialServerAddress>;

struct Violation {
  Constraint constraint;
  ResourceLocation location;
  double load = 0;
  double limit = 0;
  double margin = 0;  // load - limit, > 0

  std::string Describe() const;
};

class Infeasible : public Error {
 public:
  explicit Infeasible(std::vector<Violation> violations);
  Infeasible(const std::string& what, std::vector<Violation> violations)
      : Error(what), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct PowerBreakdown {
  double servers_w = 0;
  double special_servers_w = 0;
  double onus_w = 0;
  double total_w = 0;
  int activated_servers = 0;
  int activated_special_servers = 0;

  friend bool operator==(const PowerBreakdown&,
                         const PowerBreakdown&) = default;
};

// The comparison behind every capacity check: true when load is above limit
// by more than representation error (so 0.05 * 20 flows is exactly full).
bool ExceedsCapacity(double load, double limit);

// Throws ValidationError when the embedding is not total over the
// workload's VMs (or names VMs the workload lacks), UnknownNode for
// assignments outside the topology.
UsageReport ComputeUsage(const Topology& topology, const Workload& workload,
                         const Embedding& embedding);

// Checks C1-C5. Violations are returned, never thrown.
std::vector<Violation> CheckFeasibility(const Topology& topology,
                                        const UsageReport& usage);
std::vector<Violation> CheckFeasibility(const Topology& topology,
                                        const Workload& workload,
                                        const Embedding& embedding,
                                        const UsageReport& usage);

// Linear between idle and max for an active server; an inactive server is
// off and draws nothing. Throws OverCapacity when cpu_load > capacity.
double ServerPower(double cpu_load, double capacity, const PowerParams& params,
                   bool active = true);

// Zero flows means the special server is off. Throws OverCapacity when
// forwarding_fraction * flow_count exceeds 1.
double SpecialServerPower(int flow_count, double forwarding_fraction,
                          const PowerParams& params);

// Fixed mode: onu_power whenever the node is active. Proportional mode:
// onu_power * traffic / onu_rate. Throws OverCapacity when traffic > onu_rate.
double OnuPower(double traffic, double onu_rate, const PowerParams& params,
                bool active = true);

// Power of a usage report that has already passed CheckFeasibility.
PowerBreakdown PowerFromUsage(const Topology& topology,
                              const UsageReport& usage,
                              const PowerParams& params);

// Throws Infeasible carrying every violation.
PowerBreakdown TotalPower(const Topology& topology, const Workload& workload,
                          const Embedding& embedding,
                          const PowerParams& params);

}  // namespace pondc

#endif  // PONDC_POWER_MODEL_H_
