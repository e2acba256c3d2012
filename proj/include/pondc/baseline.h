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

#ifndef PONDC_BASELINE_H_
#define PONDC_BASELINE_H_

// Traffic-unaware comparators for the optimal embedding.

#include <cstdint>

#include "pondc/error.h"
#include "pondc/power_model.h"
#include "pondc/solver.h"
#include "pondc/topology.h"
#include "pondc/workload.h"

namespace pondc {

class GaveUp : public Error {
 public:
  GaveUp(const std::string& what, std::int64_t attempts)
      : Error(what), attempts_(attempts) {}
  std::int64_t attempts() const { return attempts_; }

 private:
  std::int64_t attempts_;
};

// VMs in id order go to servers in cyclic canonical order, one step per VM.
// A server whose cpu or memory would overflow is skipped and the scan moves
// on to the next one. Throws Infeasible when a VM fits nowhere or the result
// breaks C3-C5.
SolveReport RoundRobinEmbed(const Topology& topology, const Workload& workload,
                            const PowerParams& params);

// Uniform assignments (one Rng draw per VM, in id order) until one passes
// C1-C5. Throws GaveUp after max_attempts.
SolveReport RandomFeasibleEmbed(const Topology& topology,
                                const Workload& workload,
                                const PowerParams& params, std::uint64_t seed,
                                std::int64_t max_attempts = 100000);

}  // namespace pondc

#endif  // PONDC_BASELINE_H_
