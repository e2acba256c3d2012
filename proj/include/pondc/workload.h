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

#ifndef PONDC_WORKLOAD_H_
#define PONDC_WORKLOAD_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pondc {

using VmId = int;

struct VmRequest {
  VmId id = 0;
  int cpu_demand = 0;  // mega-cycles/s
  int mem_demand = 0;  // MB

  friend bool operator==(const VmRequest&, const VmRequest&) = default;
};

// Undirected traffic demand; stored with a < b.
struct Flow {
  VmId a = 0;
  VmId b = 0;
  int rate = 0;  // Mb/s

  friend bool operator==(const Flow&, const Flow&) = default;
};

// Sampling bounds. They double as validation bounds for parsed workloads.
struct GenerationParams {
  int cpu_min = 500;
  int cpu_max = 2000;
  int mem_min = 500;
  int mem_max = 2000;
  int rate_min = 40;
  int rate_max = 200;
  int degree_min = 1;
  int degree_max = 3;

  // Throws InvalidConfig.
  void Validate() const;

  friend bool operator==(const GenerationParams&,
                         const GenerationParams&) = default;
};

struct Workload {
  std::vector<VmRequest> vms;
  std::vector<Flow> flows;
  std::uint64_t seed = 0;
  GenerationParams generation_params;

  // Throws ValidationError on dangling or duplicate references, self loops,
  // or values outside generation_params. Degree targets are not enforced
  // here; a hand-written workload may contain isolated VMs.
  void Validate() const;

  // Flow count incident to each VM, keyed by id.
  std::map<VmId, int> Degrees() const;

  friend bool operator==(const Workload&, const Workload&) = default;
};

// Draw order, all from one Rng seeded with `seed`: for each VM in id order
// its cpu then mem demand; then each VM's desired degree; then, visiting VMs
// in id order, peers are chosen uniformly among non-adjacent VMs (and a rate
// drawn for each new flow) until the VM's degree reaches its target.
// Desired degrees are capped at n_vms - 1. Incoming edges can push a VM past
// its target; that is kept, not clamped.
// Throws Unsatisfiable when n_vms < 2.
Workload GenerateWorkload(int n_vms, std::uint64_t seed,
                          const GenerationParams& params = {});

// JSON document: {"seed", "vms": [{id, cpu, mem}], "flows": [{a, b, rate}],
// "bounds": {...}}. "bounds" is optional on input (defaults apply).
std::string SerializeWorkload(const Workload& w);
// Throws ParseError (with line and field context) or ValidationError.
Workload ParseWorkload(const std::string& text);

}  // namespace pondc

#endif  // PONDC_WORKLOAD_H_
