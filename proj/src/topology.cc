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

#include "pondc/topology.h"

#include <cmath>
#include <sstream>

#include "pondc/error.h"

namespace pondc {

void TopologyConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidConfig(std::string("invalid topology: ") + what);
  };
  require(num_groups >= 1, "num_groups must be >= 1");
  require(subgroups_per_group >= 1, "subgroups_per_group must be >= 1");
  require(servers_per_subgroup >= 1, "servers_per_subgroup must be >= 1");
  require(std::isfinite(server_cpu_capacity) && server_cpu_capacity > 0,
          "server_cpu_capacity must be > 0");
  require(std::isfinite(server_mem_capacity) && server_mem_capacity > 0,
          "server_mem_capacity must be > 0");
  require(std::isfinite(special_cpu_capacity) && special_cpu_capacity > 0,
          "special_cpu_capacity must be > 0");
  require(forwarding_fraction > 0 && forwarding_fraction <= 1,
          "forwarding_fraction must be in (0, 1]");
  require(std::isfinite(link_capacity) && link_capacity > 0,
          "link_capacity must be > 0");
  require(std::isfinite(onu_rate) && onu_rate > 0, "onu_rate must be > 0");
}

Topology::Topology(const TopologyConfig& config) : config_(config) {
  config_.Validate();
  servers_.reserve(static_cast<std::size_t>(config_.num_groups) *
                   config_.subgroups_per_group * config_.servers_per_subgroup);
  for (int g = 0; g < config_.num_groups; ++g) {
    for (int sg = 0; sg < config_.subgroups_per_group; ++sg) {
      for (int i = 0; i < config_.servers_per_subgroup; ++i) {
        servers_.push_back({g, sg, i});
      }
    }
  }
}

std::vector<SpecialServerAddress> Topology::special_servers() const {
  std::vector<SpecialServerAddress> out;
  for (int g = 0; g < config_.num_groups; ++g) out.push_back({g});
  return out;
}

bool Topology::Contains(const ServerAddress& a) const {
  return a.group >= 0 && a.group < config_.num_groups && a.subgroup >= 0 &&
         a.subgroup < config_.subgroups_per_group && a.index >= 0 &&
         a.index < config_.servers_per_subgroup;
}

bool Topology::Contains(const SpecialServerAddress& a) const {
  return a.group >= 0 && a.group < config_.num_groups;
}

int Topology::ServerIndex(const ServerAddress& a) const {
  if (!Contains(a)) throw UnknownNode("unknown server " + ToString(a));
  return (a.group * config_.subgroups_per_group + a.subgroup) *
             config_.servers_per_subgroup +
         a.index;
}

int Topology::SubgroupIndex(const SubgroupAddress& a) const {
  if (a.group < 0 || a.group >= config_.num_groups || a.subgroup < 0 ||
      a.subgroup >= config_.subgroups_per_group) {
    throw UnknownNode("unknown subgroup " + ToString(a));
  }
  return a.group * config_.subgroups_per_group + a.subgroup;
}

const ServerAddress& Topology::ServerAt(int flat_index) const {
  if (flat_index < 0 || flat_index >= num_servers()) {
    throw UnknownNode("server index out of range: " +
                      std::to_string(flat_index));
  }
  return servers_[flat_index];
}

SubgroupAddress Topology::SubgroupAt(int flat_index) const {
  if (flat_index < 0 || flat_index >= num_subgroups()) {
    throw UnknownNode("subgroup index out of range: " +
                      std::to_string(flat_index));
  }
  return {flat_index / config_.subgroups_per_group,
          flat_index % config_.subgroups_per_group};
}

Topology BuildTopology(const TopologyConfig& config) {
  return Topology(config);
}

RouteDescriptor ClassifyPath(const Topology& topology, const ServerAddress& a,
                             const ServerAddress& b) {
  if (!topology.Contains(a)) throw UnknownNode("unknown server " + ToString(a));
  if (!topology.Contains(b)) throw UnknownNode("unknown server " + ToString(b));

  RouteDescriptor route;
  const SubgroupAddress sa{a.group, a.subgroup};
  const SubgroupAddress sb{b.group, b.subgroup};
  if (a == b) {
    route.path_class = PathClass::kIntraServer;
  } else if (sa == sb) {
    route.path_class = PathClass::kIntraSubgroup;
    route.link_traversals = {{sa, 2}};
  } else if (a.group == b.group) {
    route.path_class = PathClass::kInterSubgroup;
    route.special_servers = {{a.group}};
    route.link_traversals = {{sa, 1}, {sb, 1}};
  } else {
    route.path_class = PathClass::kInterGroup;
    route.special_servers = {{a.group}, {b.group}};
    route.link_traversals = {{sa, 1}, {sb, 1}};
  }
  return route;
}

std::string ToString(PathClass c) {
  switch (c) {
    case PathClass::kIntraServer:
      return "IntraServer";
    case PathClass::kIntraSubgroup:
      return "IntraSubgroup";
    case PathClass::kInterSubgroup:
      return "InterSubgroup";
    case PathClass::kInterGroup:
      return "InterGroup";
  }
  return "?";
}

std::string ToString(const ServerAddress& a) {
  std::ostringstream os;
  os << "server(" << a.group << "," << a.subgroup << "," << a.index << ")";
  return os.str();
}

std::string ToString(const SpecialServerAddress& a) {
  return "special(" + std::to_string(a.group) + ")";
}

std::string ToString(const SubgroupAddress& a) {
  return "subgroup(" + std::to_string(a.group) + "," +
         std::to_string(a.subgroup) + ")";
}

std::string ToString(const NodeAddress& a) {
  return std::visit([](const auto& x) { return ToString(x); }, a);
}

}  // namespace pondc
