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

#include "pondc/json_io.h"

#include <cmath>
#include <set>
#include <string>

#include "pondc/error.h"

namespace pondc {
namespace {

using nlohmann::json;

void RejectUnknown(const json& j, const std::set<std::string>& known,
                   const char* what) {
  if (!j.is_object()) {
    throw InvalidConfig(std::string(what) + ": expected a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw InvalidConfig(std::string(what) + ": unknown key \"" + key + "\"");
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string(what) + "." + key + ": " + e.what());
  }
}

}  // namespace

json ToJson(const TopologyConfig& c) {
  return {{"num_groups", c.num_groups},
          {"subgroups_per_group", c.subgroups_per_group},
          {"servers_per_subgroup", c.servers_per_subgroup},
          {"server_cpu_capacity", c.server_cpu_capacity},
          {"server_mem_capacity", c.server_mem_capacity},
          {"special_cpu_capacity", c.special_cpu_capacity},
          {"forwarding_fraction", c.forwarding_fraction},
          {"link_capacity", c.link_capacity},
          {"onu_rate", c.onu_rate}};
}

TopologyConfig TopologyConfigFromJson(const json& j) {
  const char* what = "topology";
  RejectUnknown(j,
                {"num_groups", "subgroups_per_group", "servers_per_subgroup",
                 "server_cpu_capacity", "server_mem_capacity",
                 "special_cpu_capacity", "forwarding_fraction",
                 "link_capacity", "onu_rate"},
                what);
  TopologyConfig c;
  Read(j, "num_groups", c.num_groups, what);
  Read(j, "subgroups_per_group", c.subgroups_per_group, what);
  Read(j, "servers_per_subgroup", c.servers_per_subgroup, what);
  Read(j, "server_cpu_capacity", c.server_cpu_capacity, what);
  Read(j, "server_mem_capacity", c.server_mem_capacity, what);
  Read(j, "special_cpu_capacity", c.special_cpu_capacity, what);
  Read(j, "forwarding_fraction", c.forwarding_fraction, what);
  Read(j, "link_capacity", c.link_capacity, what);
  Read(j, "onu_rate", c.onu_rate, what);
  c.Validate();
  return c;
}

json ToJson(const PowerParams& p) {
  return {{"p_idle", p.p_idle},
          {"p_max", p.p_max},
          {"onu_power", p.onu_power},
          {"onu_mode", ToString(p.onu_mode)}};
}

PowerParams PowerParamsFromJson(const json& j) {
  const char* what = "params";
  RejectUnknown(j, {"p_idle", "p_max", "onu_power", "onu_mode"}, what);
  PowerParams p;
  Read(j, "p_idle", p.p_idle, what);
  Read(j, "p_max", p.p_max, what);
  Read(j, "onu_power", p.onu_power, what);
  std::string mode = ToString(p.onu_mode);
  Read(j, "onu_mode", mode, what);
  p.onu_mode = ParseOnuMode(mode);
  p.Validate();
  return p;
}

json ToJson(const SolveLimits& l) {
  json j;
  j["time_limit"] = std::isfinite(l.time_limit_s) ? json(l.time_limit_s)
                                                  : json(nullptr);
  j["node_limit"] = l.node_limit;
  return j;
}

SolveLimits SolveLimitsFromJson(const json& j) {
  const char* what = "limits";
  RejectUnknown(j, {"time_limit", "node_limit"}, what);
  SolveLimits l;
  if (auto it = j.find("time_limit"); it != j.end() && !it->is_null()) {
    Read(j, "time_limit", l.time_limit_s, what);
  }
  Read(j, "node_limit", l.node_limit, what);
  l.Validate();
  return l;
}

json ToJson(const GenerationParams& p) {
  return {{"cpu_min", p.cpu_min},       {"cpu_max", p.cpu_max},
          {"mem_min", p.mem_min},       {"mem_max", p.mem_max},
          {"rate_min", p.rate_min},     {"rate_max", p.rate_max},
          {"degree_min", p.degree_min}, {"degree_max", p.degree_max}};
}

GenerationParams GenerationParamsFromJson(const json& j) {
  const char* what = "bounds";
  RejectUnknown(j,
                {"cpu_min", "cpu_max", "mem_min", "mem_max", "rate_min",
                 "rate_max", "degree_min", "degree_max"},
                what);
  GenerationParams p;
  Read(j, "cpu_min", p.cpu_min, what);
  Read(j, "cpu_max", p.cpu_max, what);
  Read(j, "mem_min", p.mem_min, what);
  Read(j, "mem_max", p.mem_max, what);
  Read(j, "rate_min", p.rate_min, what);
  Read(j, "rate_max", p.rate_max, what);
  Read(j, "degree_min", p.degree_min, what);
  Read(j, "degree_max", p.degree_max, what);
  p.Validate();
  return p;
}

json ToJson(const Embedding& e) {
  json out = json::array();
  for (const auto& [id, s] : e.assignment) {
    out.push_back({{"vm", id}, {"server", {s.group, s.subgroup, s.index}}});
  }
  return out;
}

Embedding EmbeddingFromJson(const json& j) {
  if (!j.is_array()) throw ParseError("embedding: expected an array");
  Embedding e;
  for (const json& item : j) {
    try {
      const auto& s = item.at("server");
      ServerAddress a{s.at(0).get<int>(), s.at(1).get<int>(),
                      s.at(2).get<int>()};
      if (!e.assignment.emplace(item.at("vm").get<VmId>(), a).second) {
        throw ParseError("embedding: VM listed twice");
      }
    } catch (const json::exception& ex) {
      throw ParseError(std::string("embedding: ") + ex.what());
    }
  }
  return e;
}

json ToJson(const PowerBreakdown& p) {
  return {{"servers_w", p.servers_w},
          {"special_servers_w", p.special_servers_w},
          {"onus_w", p.onus_w},
          {"total_w", p.total_w},
          {"activated_servers", p.activated_servers},
          {"activated_special_servers", p.activated_special_servers}};
}

json ToJson(const Topology& topology, const UsageReport& u) {
  json servers = json::array();
  for (int s = 0; s < topology.num_servers(); ++s) {
    const ServerAddress& a = topology.ServerAt(s);
    servers.push_back({{"server", {a.group, a.subgroup, a.index}},
                       {"cpu_load", u.server_cpu[s]},
                       {"mem_load", u.server_mem[s]},
                       {"vms", u.server_vm_count[s]},
                       {"onu_traffic", u.server_onu_traffic[s]}});
  }
  json links = json::array();
  for (int q = 0; q < topology.num_subgroups(); ++q) {
    const SubgroupAddress a = topology.SubgroupAt(q);
    links.push_back(
        {{"subgroup", {a.group, a.subgroup}}, {"link_load", u.link_load[q]}});
  }
  json specials = json::array();
  for (int g = 0; g < topology.num_special_servers(); ++g) {
    specials.push_back({{"group", g},
                        {"flow_count", u.special_flow_count[g]},
                        {"forwarded_traffic", u.special_traffic[g]}});
  }
  return {{"servers", servers}, {"links", links}, {"special_servers", specials}};
}

json ToJson(const SolveReport& r) {
  json j = {{"method", ToString(r.method)},
            {"optimal", r.optimal},
            {"limit_hit", r.limit_hit},
            {"nodes_explored", r.nodes_explored},
            {"elapsed_s", r.elapsed_s},
            {"power", ToJson(r.power)},
            {"embedding", ToJson(r.embedding)}};
  if (r.audit.checked > 0) {
    j["audit"] = {{"checked", r.audit.checked},
                  {"violations", r.audit.violations},
                  {"details", r.audit.details}};
  }
  return j;
}

}  // namespace pondc
