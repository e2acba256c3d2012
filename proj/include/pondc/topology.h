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

#ifndef PONDC_TOPOLOGY_H_
#define PONDC_TOPOLOGY_H_

// Two-level PON data-centre fabric. Servers sit in subgroups that share one
// TDM-PON link; the subgroups of a group hang off a single special server
// which forwards inter-subgroup and inter-group traffic. Groups are joined by
// a passive AWGR, which is modelled as free.

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pondc {

struct TopologyConfig {
  int num_groups = 2;
  int subgroups_per_group = 2;
  int servers_per_subgroup = 3;
  double server_cpu_capacity = 2500.0;   // mega-cycles/s
  double server_mem_capacity = 8192.0;   // MB
  double special_cpu_capacity = 2500.0;  // mega-cycles/s
  double forwarding_fraction = 0.05;     // of special-server CPU per flow
  double link_capacity = 10000.0;        // Mb/s, per subgroup shared link
  double onu_rate = 10000.0;             // Mb/s

  // Throws InvalidConfig.
  void Validate() const;

  friend bool operator==(const TopologyConfig&,
                         const TopologyConfig&) = default;
};

struct ServerAddress {
  int group = 0;
  int subgroup = 0;
  int index = 0;

  friend auto operator<=>(const ServerAddress&,
                          const ServerAddress&) = default;
};

struct SpecialServerAddress {
  int group = 0;

  friend auto operator<=>(const SpecialServerAddress&,
                          const SpecialServerAddress&) = default;
};

struct SubgroupAddress {
  int group = 0;
  int subgroup = 0;

  friend auto operator<=>(const SubgroupAddress&,
                          const SubgroupAddress&) = default;
};

using NodeAddress = std::variant<ServerAddress, SpecialServerAddress>;

enum class PathClass { kIntraServer, kIntraSubgroup, kInterSubgroup,
                       kInterGroup };

struct LinkTraversal {
  SubgroupAddress subgroup;
  int multiplicity = 0;

  friend bool operator==(const LinkTraversal&, const LinkTraversal&) = default;
};

struct RouteDescriptor {
  PathClass path_class = PathClass::kIntraServer;
  // Source group first for inter-group routes.
  std::vector<SpecialServerAddress> special_servers;
  std::vector<LinkTraversal> link_traversals;

  friend bool operator==(const RouteDescriptor&,
                         const RouteDescriptor&) = default;
};

// Immutable once built. Servers are enumerated in canonical order
// (group, subgroup, index), which is also the order of their flat indices.
class Topology {
 public:
  explicit Topology(const TopologyConfig& config);

  const TopologyConfig& config() const { return config_; }

  int num_servers() const { return static_cast<int>(servers_.size()); }
  int num_special_servers() const { return config_.num_groups; }
  int num_subgroups() const {
    return config_.num_groups * config_.subgroups_per_group;
  }

  const std::vector<ServerAddress>& servers() const { return servers_; }
  std::vector<SpecialServerAddress> special_servers() const;

  bool Contains(const ServerAddress& a) const;
  bool Contains(const SpecialServerAddress& a) const;

  // Flat indices; throw UnknownNode when out of bounds.
  int ServerIndex(const ServerAddress& a) const;
  int SubgroupIndex(const SubgroupAddress& a) const;
  const ServerAddress& ServerAt(int flat_index) const;
  SubgroupAddress SubgroupAt(int flat_index) const;

 private:
  TopologyConfig config_;
  std::vector<ServerAddress> servers_;
};

Topology BuildTopology(const TopologyConfig& config);

// Route between two servers:
//   intra-server    no network resources;
//   intra-subgroup  own subgroup link twice (up and down);
//   inter-subgroup  source link, group special server, destination link;
//   inter-group     source link, source special server, AWGR, destination
//                   special server, destination link.
// Throws UnknownNode.
RouteDescriptor ClassifyPath(const Topology& topology, const ServerAddress& a,
                             const ServerAddress& b);

std::string ToString(PathClass c);
std::string ToString(const ServerAddress& a);
std::string ToString(const SpecialServerAddress& a);
std::string ToString(const SubgroupAddress& a);
std::string ToString(const NodeAddress& a);

}  // namespace pondc

#endif  // PONDC_TOPOLOGY_H_
