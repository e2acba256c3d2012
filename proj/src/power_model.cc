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

#include "pondc/power_model.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace pondc {
namespace {

// Absorbs representation error in products such as 0.05 * 20.
constexpr double kSlack = 1e-12;

}  // namespace

bool ExceedsCapacity(double load, double limit) {
  return load > limit + kSlack * std::max(1.0, std::abs(limit));
}

void PowerParams::Validate() const {
  if (!(p_idle >= 0) || !std::isfinite(p_idle)) {
    throw InvalidConfig("p_idle must be >= 0");
  }
  if (!(p_max >= p_idle) || !std::isfinite(p_max)) {
    throw InvalidConfig("p_max must be >= p_idle");
  }
  if (!(onu_power >= 0) || !std::isfinite(onu_power)) {
    throw InvalidConfig("onu_power must be >= 0");
  }
}

std::string ToString(OnuMode mode) {
  return mode == OnuMode::kFixedWhenActive ? "FixedWhenActive"
                                           : "TrafficProportional";
}

OnuMode ParseOnuMode(const std::string& s) {
  if (s == "FixedWhenActive" || s == "fixed") return OnuMode::kFixedWhenActive;
  if (s == "TrafficProportional" || s == "proportional") {
    return OnuMode::kTrafficProportional;
  }
  throw InvalidConfig("unknown onu_mode '" + s + "'");
}

std::string ToString(Constraint c) {
  switch (c) {
    case Constraint::kServerCpu:
      return "C1 server cpu";
    case Constraint::kServerMemory:
      return "C2 server memory";
    case Constraint::kForwarding:
      return "C3 special-server forwarding";
    case Constraint::kSubgroupLink:
      return "C4 subgroup link";
    case Constraint::kSpecialOnuRate:
      return "C5 special-server ONU rate";
  }
  return "?";
}

std::string Violation::Describe() const {
  std::ostringstream os;
  os << ToString(constraint) << " at "
     << std::visit([](const auto& a) { return ToString(a); }, location)
     << ": load " << load << " > limit " << limit << " (margin " << margin
     << ")";
  return os.str();
}

namespace {

std::string JoinViolations(const std::vector<Violation>& v) {
  std::string out = "infeasible embedding";
  for (const Violation& x : v) out += "; " + x.Describe();
  return out;
}

}  // namespace

Infeasible::Infeasible(std::vector<Violation> violations)
    : Error(JoinViolations(violations)), violations_(std::move(violations)) {}

UsageReport ComputeUsage(const Topology& topology, const Workload& workload,
                         const Embedding& embedding) {
  UsageReport u;
  const int ns = topology.num_servers();
  u.server_cpu.assign(ns, 0.0);
  u.server_mem.assign(ns, 0.0);
  u.server_vm_count.assign(ns, 0);
  u.server_onu_traffic.assign(ns, 0.0);
  u.link_load.assign(topology.num_subgroups(), 0.0);
  u.special_flow_count.assign(topology.num_special_servers(), 0);
  u.special_traffic.assign(topology.num_special_servers(), 0.0);

  if (embedding.assignment.size() != workload.vms.size()) {
    throw ValidationError("embedding covers " +
                          std::to_string(embedding.assignment.size()) +
                          " VMs, workload has " +
                          std::to_string(workload.vms.size()));
  }
  auto host_of = [&](VmId id) -> const ServerAddress& {
    auto it = embedding.assignment.find(id);
    if (it == embedding.assignment.end()) {
      throw ValidationError("VM " + std::to_string(id) + " is not assigned");
    }
    return it->second;
  };

  for (const VmRequest& vm : workload.vms) {
    const int s = topology.ServerIndex(host_of(vm.id));
    u.server_cpu[s] += vm.cpu_demand;
    u.server_mem[s] += vm.mem_demand;
    ++u.server_vm_count[s];
  }

  for (const Flow& f : workload.flows) {
    const ServerAddress& sa = host_of(f.a);
    const ServerAddress& sb = host_of(f.b);
    const RouteDescriptor route = ClassifyPath(topology, sa, sb);
    if (route.path_class == PathClass::kIntraServer) continue;
    u.server_onu_traffic[topology.ServerIndex(sa)] += f.rate;
    u.server_onu_traffic[topology.ServerIndex(sb)] += f.rate;
    for (const LinkTraversal& t : route.link_traversals) {
      u.link_load[topology.SubgroupIndex(t.subgroup)] +=
          static_cast<double>(t.multiplicity) * f.rate;
    }
    for (const SpecialServerAddress& g : route.special_servers) {
      ++u.special_flow_count[g.group];
      u.special_traffic[g.group] += f.rate;
    }
  }
  return u;
}

std::vector<Violation> CheckFeasibility(const Topology& topology,
                                        const UsageReport& usage) {
  const TopologyConfig& c = topology.config();
  std::vector<Violation> out;
  auto check = [&](Constraint k, ResourceLocation where, double load,
                   double limit) {
    if (ExceedsCapacity(load, limit)) {
      out.push_back({k, where, load, limit, load - limit});
    }
  };
  for (int s = 0; s < topology.num_servers(); ++s) {
    check(Constraint::kServerCpu, topology.ServerAt(s), usage.server_cpu[s],
          c.server_cpu_capacity);
  }
  for (int s = 0; s < topology.num_servers(); ++s) {
    check(Constraint::kServerMemory, topology.ServerAt(s),
          usage.server_mem[s], c.server_mem_capacity);
  }
  for (int g = 0; g < topology.num_special_servers(); ++g) {
    check(Constraint::kForwarding, SpecialServerAddress{g},
          c.forwarding_fraction * usage.special_flow_count[g], 1.0);
  }
  for (int q = 0; q < topology.num_subgroups(); ++q) {
    check(Constraint::kSubgroupLink, topology.SubgroupAt(q),
          usage.link_load[q], c.link_capacity);
  }
  for (int g = 0; g < topology.num_special_servers(); ++g) {
    check(Constraint::kSpecialOnuRate, SpecialServerAddress{g},
          usage.special_traffic[g], c.onu_rate);
  }
  return out;
}

std::vector<Violation> CheckFeasibility(const Topology& topology,
                                        const Workload& /*workload*/,
                                        const Embedding& /*embedding*/,
                                        const UsageReport& usage) {
  return CheckFeasibility(topology, usage);
}

double ServerPower(double cpu_load, double capacity, const PowerParams& params,
                   bool active) {
  if (ExceedsCapacity(cpu_load, capacity)) {
    throw OverCapacity("server cpu load " + std::to_string(cpu_load) +
                       " exceeds capacity " + std::to_string(capacity));
  }
  if (!active) return 0.0;
  return params.p_idle + (params.p_max - params.p_idle) * (cpu_load / capacity);
}

double SpecialServerPower(int flow_count, double forwarding_fraction,
                          const PowerParams& params) {
  const double utilization = forwarding_fraction * flow_count;
  if (ExceedsCapacity(utilization, 1.0)) {
    throw OverCapacity("special server utilization " +
                       std::to_string(utilization) + " exceeds 1");
  }
  if (flow_count == 0) return 0.0;
  return params.p_idle + (params.p_max - params.p_idle) * utilization;
}

double OnuPower(double traffic, double onu_rate, const PowerParams& params,
                bool active) {
  if (ExceedsCapacity(traffic, onu_rate)) {
    throw OverCapacity("ONU traffic " + std::to_string(traffic) +
                       " exceeds rate " + std::to_string(onu_rate));
  }
  if (!active) return 0.0;
  if (params.onu_mode == OnuMode::kFixedWhenActive) return params.onu_power;
  return params.onu_power * (traffic / onu_rate);
}

// Each component is accumulated as (active count, summed load) and turned
// into watts once. Loads are integral in practice, so the sums are exact and
// the result does not depend on node labelling or visiting order.
PowerBreakdown PowerFromUsage(const Topology& topology,
                              const UsageReport& usage,
                              const PowerParams& params) {
  const TopologyConfig& c = topology.config();
  PowerBreakdown out;
  double cpu_sum = 0;
  double onu_traffic = 0;
  for (int s = 0; s < topology.num_servers(); ++s) {
    if (usage.server_vm_count[s] == 0) continue;
    ++out.activated_servers;
    cpu_sum += usage.server_cpu[s];
    onu_traffic += usage.server_onu_traffic[s];
  }
  long flow_sum = 0;
  for (int g = 0; g < topology.num_special_servers(); ++g) {
    if (usage.special_flow_count[g] == 0) continue;
    ++out.activated_special_servers;
    flow_sum += usage.special_flow_count[g];
    onu_traffic += usage.special_traffic[g];
  }

  const double span = params.p_max - params.p_idle;
  out.servers_w = out.activated_servers * params.p_idle +
                  span * (cpu_sum / c.server_cpu_capacity);
  out.special_servers_w =
      out.activated_special_servers * params.p_idle +
      span * (c.forwarding_fraction * static_cast<double>(flow_sum));
  if (params.onu_mode == OnuMode::kFixedWhenActive) {
    out.onus_w = params.onu_power *
                 (out.activated_servers + out.activated_special_servers);
  } else {
    out.onus_w = params.onu_power * (onu_traffic / c.onu_rate);
  }
  out.total_w = out.servers_w + out.special_servers_w + out.onus_w;
  return out;
}

PowerBreakdown TotalPower(const Topology& topology, const Workload& workload,
                          const Embedding& embedding,
                          const PowerParams& params) {
  const UsageReport usage = ComputeUsage(topology, workload, embedding);
  std::vector<Violation> violations = CheckFeasibility(topology, usage);
  if (!violations.empty()) throw Infeasible(std::move(violations));
  return PowerFromUsage(topology, usage, params);
}

}  // namespace pondc
