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

#ifndef PONDC_JSON_IO_H_
#define PONDC_JSON_IO_H_

// JSON mirrors of the configuration records and reports. Keys match the
// C++ field names. Missing keys keep their defaults; unknown keys are
// rejected with InvalidConfig so typos do not pass silently.

#include "json.hpp"
#include "pondc/power_model.h"
#include "pondc/solver.h"
#include "pondc/topology.h"
#include "pondc/workload.h"

namespace pondc {

nlohmann::json ToJson(const TopologyConfig& c);
TopologyConfig TopologyConfigFromJson(const nlohmann::json& j);

// onu_mode is written as "FixedWhenActive" or "TrafficProportional".
nlohmann::json ToJson(const PowerParams& p);
PowerParams PowerParamsFromJson(const nlohmann::json& j);

// {"time_limit": seconds or null, "node_limit": count (0 = unlimited)}.
nlohmann::json ToJson(const SolveLimits& l);
SolveLimits SolveLimitsFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const GenerationParams& p);
GenerationParams GenerationParamsFromJson(const nlohmann::json& j);

// [{"vm": id, "server": [g, sg, i]}, ...] in VM-id order.
nlohmann::json ToJson(const Embedding& e);
Embedding EmbeddingFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const PowerBreakdown& p);
nlohmann::json ToJson(const Topology& topology, const UsageReport& u);
nlohmann::json ToJson(const SolveReport& r);

}  // namespace pondc

#endif  // PONDC_JSON_IO_H_
