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

#include "pondc/lp_export.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pondc/text.h"

namespace pondc {
namespace {

std::string Suffix(const ServerAddress& s) {
  return std::to_string(s.group) + "_" + std::to_string(s.subgroup) + "_" +
         std::to_string(s.index);
}

// Linear expression that keeps first-insertion order and merges repeated
// variables.
class Expr {
 public:
  void Add(const std::string& var, double coef) {
    auto [it, inserted] = index_.try_emplace(var, terms_.size());
    if (inserted) {
      terms_.emplace_back(var, coef);
    } else {
      terms_[it->second].second += coef;
    }
  }

  std::string Render() const {
    std::ostringstream os;
    int written = 0;
    for (const auto& [var, coef] : terms_) {
      if (coef == 0) continue;
      if (written > 0 && written % 6 == 0) os << "\n   ";
      if (coef < 0) {
        os << (written == 0 ? "- " : " - ");
      } else if (written > 0) {
        os << " + ";
      }
      const double mag = std::abs(coef);
      if (mag != 1.0) os << FormatShortest(mag) << " ";
      os << var;
      ++written;
    }
    if (written == 0) os << "0 " << placeholder_;
    return os.str();
  }

  // Variable printed with a zero coefficient when every term vanished.
  void set_placeholder(std::string var) { placeholder_ = std::move(var); }

 private:
  std::vector<std::pair<std::string, double>> terms_;
  std::unordered_map<std::string, std::size_t> index_;
  std::string placeholder_;
};

class LpWriter {
 public:
  void Row(const std::string& name, const Expr& e, const char* sense,
           double rhs) {
    rows_ << " " << name << ": " << e.Render() << " " << sense << " "
          << FormatShortest(rhs) << "\n";
  }
  void Binary(const std::string& var) { binaries_.push_back(var); }

  std::string Finish(const std::string& header, const Expr& objective) const {
    std::ostringstream os;
    os << header << "Minimize\n power: " << objective.Render()
       << "\nSubject To\n"
       << rows_.str() << "Binaries\n";
    for (std::size_t k = 0; k < binaries_.size(); ++k) {
      os << " " << binaries_[k];
      if (k % 8 == 7 || k + 1 == binaries_.size()) os << "\n";
    }
    os << "End\n";
    return os.str();
  }

 private:
  std::ostringstream rows_;
  std::vector<std::string> binaries_;
};

}  // namespace

std::string LpServerVar(VmId vm, const ServerAddress& s) {
  return "x_v" + std::to_string(vm) + "_s" + Suffix(s);
}

std::string LpActiveVar(const ServerAddress& s) { return "y_s" + Suffix(s); }

std::string LpSpecialVar(int group) { return "z_g" + std::to_string(group); }

std::string LpTransitVar(VmId a, VmId b, int group) {
  return "f_p" + std::to_string(a) + "_" + std::to_string(b) + "_g" +
         std::to_string(group);
}

std::string LpColocationVar(VmId a, VmId b, const ServerAddress& s) {
  return "c_p" + std::to_string(a) + "_" + std::to_string(b) + "_s" +
         Suffix(s);
}

std::string ExportLp(const Topology& topology, const Workload& workload,
                     const PowerParams& params) {
  workload.Validate();
  params.Validate();
  const TopologyConfig& c = topology.config();
  const double span = params.p_max - params.p_idle;
  const bool proportional = params.onu_mode == OnuMode::kTrafficProportional;
  const double fixed_onu = proportional ? 0.0 : params.onu_power;
  const double onu_per_mbps = proportional ? params.onu_power / c.onu_rate : 0;

  std::vector<VmRequest> vms = workload.vms;
  std::sort(vms.begin(), vms.end(),
            [](const VmRequest& a, const VmRequest& b) { return a.id < b.id; });
  const std::vector<ServerAddress>& servers = topology.servers();

  auto in_subgroup = [&](int g, int sg) {
    std::vector<ServerAddress> out;
    for (const ServerAddress& s : servers) {
      if (s.group == g && s.subgroup == sg) out.push_back(s);
    }
    return out;
  };
  auto in_group = [&](int g) {
    std::vector<ServerAddress> out;
    for (const ServerAddress& s : servers) {
      if (s.group == g) out.push_back(s);
    }
    return out;
  };

  LpWriter lp;
  Expr objective;

  for (const ServerAddress& s : servers) {
    objective.Add(LpActiveVar(s), params.p_idle + fixed_onu);
  }
  for (const VmRequest& vm : vms) {
    for (const ServerAddress& s : servers) {
      objective.Add(LpServerVar(vm.id, s),
                    span * vm.cpu_demand / c.server_cpu_capacity);
    }
  }
  for (int g = 0; g < c.num_groups; ++g) {
    objective.Add(LpSpecialVar(g), params.p_idle + fixed_onu);
  }
  for (const Flow& f : workload.flows) {
    for (int g = 0; g < c.num_groups; ++g) {
      objective.Add(LpTransitVar(f.a, f.b, g),
                    span * c.forwarding_fraction +
                        onu_per_mbps * f.rate);
    }
    if (proportional) {
      // Server ONU traffic: rate at each endpoint unless colocated.
      for (const ServerAddress& s : servers) {
        objective.Add(LpServerVar(f.a, s), onu_per_mbps * f.rate);
        objective.Add(LpServerVar(f.b, s), onu_per_mbps * f.rate);
        objective.Add(LpColocationVar(f.a, f.b, s),
                      -2.0 * onu_per_mbps * f.rate);
      }
    }
  }
  objective.set_placeholder(LpActiveVar(servers.front()));

  // Every VM on exactly one server.
  for (const VmRequest& vm : vms) {
    Expr e;
    for (const ServerAddress& s : servers) e.Add(LpServerVar(vm.id, s), 1);
    lp.Row("assign_v" + std::to_string(vm.id), e, "=", 1);
  }
  // Activation linking both ways.
  for (const ServerAddress& s : servers) {
    for (const VmRequest& vm : vms) {
      Expr e;
      e.Add(LpServerVar(vm.id, s), 1);
      e.Add(LpActiveVar(s), -1);
      lp.Row("on_v" + std::to_string(vm.id) + "_s" + Suffix(s), e, "<=", 0);
    }
    Expr e;
    e.Add(LpActiveVar(s), 1);
    for (const VmRequest& vm : vms) e.Add(LpServerVar(vm.id, s), -1);
    lp.Row("idle_s" + Suffix(s), e, "<=", 0);
  }
  // C1, C2.
  for (const ServerAddress& s : servers) {
    Expr cpu, mem;
    for (const VmRequest& vm : vms) {
      cpu.Add(LpServerVar(vm.id, s), vm.cpu_demand);
      mem.Add(LpServerVar(vm.id, s), vm.mem_demand);
    }
    cpu.set_placeholder(LpActiveVar(s));
    mem.set_placeholder(LpActiveVar(s));
    lp.Row("cpu_s" + Suffix(s), cpu, "<=", c.server_cpu_capacity);
    lp.Row("mem_s" + Suffix(s), mem, "<=", c.server_mem_capacity);
  }
  // Colocation indicators.
  for (const Flow& f : workload.flows) {
    for (const ServerAddress& s : servers) {
      const std::string col = LpColocationVar(f.a, f.b, s);
      const std::string tag = "p" + std::to_string(f.a) + "_" +
                              std::to_string(f.b) + "_s" + Suffix(s);
      Expr ea, eb;
      ea.Add(col, 1);
      ea.Add(LpServerVar(f.a, s), -1);
      eb.Add(col, 1);
      eb.Add(LpServerVar(f.b, s), -1);
      lp.Row("cola_" + tag, ea, "<=", 0);
      lp.Row("colb_" + tag, eb, "<=", 0);
    }
  }
  // Transit indicators.
  for (const Flow& f : workload.flows) {
    const std::string tag =
        "p" + std::to_string(f.a) + "_" + std::to_string(f.b);
    for (int g = 0; g < c.num_groups; ++g) {
      const std::string fv = LpTransitVar(f.a, f.b, g);
      const std::vector<ServerAddress> group = in_group(g);
      // a in subgroup sg of g, b elsewhere in g.
      for (int sg = 0; sg < c.subgroups_per_group; ++sg) {
        if (c.subgroups_per_group == 1) break;
        Expr e;
        e.Add(fv, 1);
        for (const ServerAddress& s : group) {
          if (s.subgroup == sg) {
            e.Add(LpServerVar(f.a, s), -1);
          } else {
            e.Add(LpServerVar(f.b, s), -1);
          }
        }
        lp.Row("sub_" + tag + "_g" + std::to_string(g) + "_" +
                   std::to_string(sg),
               e, ">=", -1);
      }
      if (c.num_groups > 1) {
        // One endpoint in g, the other outside.
        Expr ea, eb;
        ea.Add(fv, 1);
        eb.Add(fv, 1);
        for (const ServerAddress& s : group) {
          ea.Add(LpServerVar(f.a, s), -1);
          ea.Add(LpServerVar(f.b, s), 1);
          eb.Add(LpServerVar(f.b, s), -1);
          eb.Add(LpServerVar(f.a, s), 1);
        }
        lp.Row("outa_" + tag + "_g" + std::to_string(g), ea, ">=", 0);
        lp.Row("outb_" + tag + "_g" + std::to_string(g), eb, ">=", 0);
      }
      Expr link;
      link.Add(fv, 1);
      link.Add(LpSpecialVar(g), -1);
      lp.Row("fwd_" + tag + "_g" + std::to_string(g), link, "<=", 0);
    }
  }
  // Special-server activation, C3, C5.
  for (int g = 0; g < c.num_groups; ++g) {
    const std::string gs = "g" + std::to_string(g);
    Expr idle, share, traffic;
    idle.Add(LpSpecialVar(g), 1);
    for (const Flow& f : workload.flows) {
      idle.Add(LpTransitVar(f.a, f.b, g), -1);
      share.Add(LpTransitVar(f.a, f.b, g), c.forwarding_fraction);
      traffic.Add(LpTransitVar(f.a, f.b, g), f.rate);
    }
    share.set_placeholder(LpSpecialVar(g));
    traffic.set_placeholder(LpSpecialVar(g));
    lp.Row("idle_" + gs, idle, "<=", 0);
    lp.Row("share_" + gs, share, "<=", 1);
    lp.Row("onu_" + gs, traffic, "<=", c.onu_rate);
  }
  // C4: subgroup link load.
  for (int g = 0; g < c.num_groups; ++g) {
    for (int sg = 0; sg < c.subgroups_per_group; ++sg) {
      Expr e;
      const std::vector<ServerAddress> members = in_subgroup(g, sg);
      for (const Flow& f : workload.flows) {
        for (const ServerAddress& s : members) {
          e.Add(LpServerVar(f.a, s), f.rate);
          e.Add(LpServerVar(f.b, s), f.rate);
          e.Add(LpColocationVar(f.a, f.b, s), -2.0 * f.rate);
        }
      }
      e.set_placeholder(LpActiveVar(members.front()));
      lp.Row("link_sg" + std::to_string(g) + "_" + std::to_string(sg), e,
             "<=", c.link_capacity);
    }
  }

  for (const VmRequest& vm : vms) {
    for (const ServerAddress& s : servers) lp.Binary(LpServerVar(vm.id, s));
  }
  for (const ServerAddress& s : servers) lp.Binary(LpActiveVar(s));
  for (int g = 0; g < c.num_groups; ++g) lp.Binary(LpSpecialVar(g));
  for (const Flow& f : workload.flows) {
    for (int g = 0; g < c.num_groups; ++g) {
      lp.Binary(LpTransitVar(f.a, f.b, g));
    }
  }
  for (const Flow& f : workload.flows) {
    for (const ServerAddress& s : servers) {
      lp.Binary(LpColocationVar(f.a, f.b, s));
    }
  }

  std::ostringstream header;
  header << "\\ VM embedding: " << vms.size() << " VMs, "
         << workload.flows.size() << " flows, " << servers.size()
         << " servers, " << c.num_groups << " groups\n"
         << "\\ onu_mode " << ToString(params.onu_mode) << "\n";
  return lp.Finish(header.str(), objective);
}

}  // namespace pondc
