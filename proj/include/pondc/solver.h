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

#ifndef PONDC_SOLVER_H_
#define PONDC_SOLVER_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pondc/error.h"
#include "pondc/power_model.h"
#include "pondc/topology.h"
#include "pondc/workload.h"

namespace pondc {

enum class SolveMethod { kBranchAndBound, kBruteForce, kRoundRobin, kRandom };

std::string ToString(SolveMethod m);

struct SolveLimits {
  double time_limit_s = std::numeric_limits<double>::infinity();
  std::int64_t node_limit = 0;  // 0 = unlimited

  // Throws InvalidConfig.
  void Validate() const;
};

struct SolveOptions {
  // Worker threads for branch-and-bound. The optimal value does not depend
  // on this; the canonical tie-broken embedding is only promised for 1.
  int threads = 1;
  // Number of bound-pruned and infeasibility-pruned nodes to re-expand
  // exhaustively after the search to check that pruning was sound. Only
  // nodes whose completion count is at most audit_completion_cap are kept.
  int audit_samples = 0;
  std::int64_t audit_completion_cap = 200000;
};

struct AuditReport {
  int checked = 0;
  int violations = 0;
  std::vector<std::string> details;
};

struct SolveReport {
  Embedding embedding;
  PowerBreakdown power;
  bool optimal = false;
  bool limit_hit = false;
  std::int64_t nodes_explored = 0;
  double elapsed_s = 0;
  SolveMethod method = SolveMethod::kBranchAndBound;
  AuditReport audit;
};

// A search limit expired before any feasible embedding was found. When an
// incumbent exists the solver returns it with optimal == false instead.
class LimitExceeded : public Error {
 public:
  LimitExceeded(const std::string& what, std::optional<SolveReport> incumbent)
      : Error(what), incumbent_(std::move(incumbent)) {}

  const std::optional<SolveReport>& incumbent() const { return incumbent_; }

 private:
  std::optional<SolveReport> incumbent_;
};

// Exact minimum-power embedding by depth-first branch-and-bound.
//
// VMs are branched in descending cpu demand (ties by id); candidate servers
// are visited in canonical order. Groups, subgroups within a group and
// servers within a subgroup are interchangeable, so a branch may only open
// the lowest-numbered unused member at each level. Every leaf is relabelled
// to its canonical form (members numbered by first use in VM-id order) before
// comparison; among co-optimal embeddings the lexicographically smallest
// assignment vector wins.
//
// Pruning bound = exact power already committed by the partial assignment
// + marginal cpu power of every unassigned VM
// + idle (and fixed ONU) power of the extra servers the remaining cpu and
//   memory demand cannot avoid opening
// + forwarding cost of flows whose assigned endpoint's subgroup has no room
//   left for the unassigned endpoint.
//
// Throws Infeasible when no embedding satisfies C1-C5, LimitExceeded when a
// limit expires before any incumbent exists.
SolveReport SolveOptimal(const Topology& topology, const Workload& workload,
                         const PowerParams& params,
                         const SolveLimits& limits = {},
                         const SolveOptions& options = {});

// Enumerates every assignment in lexicographic order (VMs by id, servers in
// canonical order). Throws TooLarge when servers^vms exceeds max_assignments,
// Infeasible when nothing passes C1-C5.
inline constexpr std::int64_t kBruteForceGuard = 10'000'000;
SolveReport BruteForceOptimal(const Topology& topology,
                              const Workload& workload,
                              const PowerParams& params,
                              std::int64_t max_assignments = kBruteForceGuard);

// Assignment vector in VM-id order, as flat server indices.
std::vector<int> AssignmentVector(const Topology& topology,
                                  const Embedding& embedding);

// Relabels groups, subgroups within a group and servers within a subgroup in
// order of first use by VM id. Power is invariant under this relabelling.
Embedding CanonicalForm(const Topology& topology, const Embedding& embedding);

}  // namespace pondc

#endif  // PONDC_SOLVER_H_
