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

#ifndef PONDC_LP_EXPORT_H_
#define PONDC_LP_EXPORT_H_

// Writes the embedding problem as a pure binary program in CPLEX LP text
// format, for cross-checking with external MILP solvers.
//
// Variables (all binary):
//   x_v<id>_s<g>_<sg>_<i>       VM <id> runs on server (g, sg, i)
//   y_s<g>_<sg>_<i>             server is active
//   z_g<g>                      special server of group g is active
//   f_p<a>_<b>_g<g>             flow between VMs a < b transits special g
//   c_p<a>_<b>_s<g>_<sg>_<i>    both endpoints of flow (a, b) on the server
//
// Transit indicators are bounded below by linear consequences of x (one
// inequality per source subgroup for inter-subgroup routes, one per
// direction for inter-group routes); minimization drives them to the exact
// route. Colocation indicators are bounded above by both x's; they enter
// link loads (and proportional ONU power) with negative coefficients, so
// both feasibility and the objective push them to the exact product.
//
// Objective:
//   sum_s (p_idle + onu) y_s + sum_{v,s} (p_max - p_idle) cpu_v / cap x_{v,s}
//   + sum_g (p_idle + onu) z_g + sum_{p,g} (p_max - p_idle) ff f_{p,g}
// where onu is onu_power in fixed mode and 0 in proportional mode; the
// proportional mode adds onu_power / onu_rate times every ONU's traffic.
//
// Coefficients are printed as shortest round-trip decimals.

#include <string>

#include "pondc/power_model.h"
#include "pondc/topology.h"
#include "pondc/workload.h"

namespace pondc {

std::string LpServerVar(VmId vm, const ServerAddress& s);
std::string LpActiveVar(const ServerAddress& s);
std::string LpSpecialVar(int group);
std::string LpTransitVar(VmId a, VmId b, int group);
std::string LpColocationVar(VmId a, VmId b, const ServerAddress& s);

std::string ExportLp(const Topology& topology, const Workload& workload,
                     const PowerParams& params);

}  // namespace pondc

#endif  // PONDC_LP_EXPORT_H_
