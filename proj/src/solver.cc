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

#include "pondc/solver.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <tuple>

namespace pondc {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Ties closer than this are treated as equal power; the lexicographic rule
// decides between them.
double Tolerance(double value) {
  return 1e-9 * std::max(1.0, std::abs(value));
}

std::vector<VmId> SortedIds(const Workload& workload) {
  std::vector<VmId> ids;
  for (const VmRequest& vm : workload.vms) ids.push_back(vm.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Read-only view of the instance in index space: VMs are numbered by
// ascending id, servers by canonical flat index.
struct Instance {
  Instance(const Topology& topo, const Workload& w, const PowerParams& p)
      : topology(topo), workload(w), params(p) {
    const TopologyConfig& c = topo.config();
    per_subgroup = c.servers_per_subgroup;
    subgroups_per_group = c.subgroups_per_group;
    num_servers = topo.num_servers();
    num_subgroups = topo.num_subgroups();
    num_groups = c.num_groups;
    cap_cpu = c.server_cpu_capacity;
    cap_mem = c.server_mem_capacity;
    ff = c.forwarding_fraction;
    link_cap = c.link_capacity;
    onu_rate = c.onu_rate;
    span = p.p_max - p.p_idle;
    fixed_onu = p.onu_mode == OnuMode::kFixedWhenActive ? p.onu_power : 0.0;

    ids = SortedIds(w);
    n = static_cast<int>(ids.size());
    std::map<VmId, int> index;
    for (int v = 0; v < n; ++v) index[ids[v]] = v;
    cpu.resize(n);
    mem.resize(n);
    for (const VmRequest& vm : w.vms) {
      cpu[index[vm.id]] = vm.cpu_demand;
      mem[index[vm.id]] = vm.mem_demand;
    }
    total_cpu = std::accumulate(cpu.begin(), cpu.end(), 0LL);
    total_mem = std::accumulate(mem.begin(), mem.end(), 0LL);
    adj.resize(n);
    for (const Flow& f : w.flows) {
      const int a = index[f.a];
      const int b = index[f.b];
      adj[a].push_back({b, f.rate});
      adj[b].push_back({a, f.rate});
    }
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cpu[a] > cpu[b]; });
  }

  struct Edge {
    int other;
    long long rate;
  };

  const Topology& topology;
  const Workload& workload;
  PowerParams params;
  int n = 0;
  int per_subgroup = 0;
  int subgroups_per_group = 0;
  int num_servers = 0;
  int num_subgroups = 0;
  int num_groups = 0;
  double cap_cpu = 0, cap_mem = 0, ff = 0, link_cap = 0, onu_rate = 0;
  double span = 0;
  double fixed_onu = 0;
  std::vector<VmId> ids;
  std::vector<long long> cpu, mem;
  long long total_cpu = 0, total_mem = 0;
  std::vector<std::vector<Edge>> adj;
  std::vector<int> order;  // branching order over VM indices

  int SubgroupOf(int s) const { return s / per_subgroup; }
  int GroupOf(int s) const { return SubgroupOf(s) / subgroups_per_group; }

  Embedding ToEmbedding(const std::vector<int>& host) const {
    Embedding e;
    for (int v = 0; v < n; ++v) {
      e.assignment.emplace(ids[v], topology.ServerAt(host[v]));
    }
    return e;
  }
};

// Mutable search state with exact integer loads, so Undo restores it
// bit-for-bit.
class SearchState {
 public:
  explicit SearchState(const Instance& in)
      : in_(in),
        host_(in.n, -1),
        cpu_(in.num_servers, 0),
        mem_(in.num_servers, 0),
        count_(in.num_servers, 0),
        onu_(in.num_servers, 0),
        link_(in.num_subgroups, 0),
        spec_flows_(in.num_groups, 0),
        spec_traffic_(in.num_groups, 0),
        used_servers_(in.num_subgroups, 0),
        used_subgroups_(in.num_groups, 0) {}

  const std::vector<int>& host() const { return host_; }

  // Servers a VM may be placed on without producing a relabelled duplicate
  // of another branch, in canonical order.
  void Candidates(std::vector<int>& out) const {
    out.clear();
    const int sgs = in_.subgroups_per_group;
    const int per = in_.per_subgroup;
    for (int g = 0; g < in_.num_groups; ++g) {
      if (g > used_groups_) break;
      const int open_sgs = g < used_groups_ ? used_subgroups_[g] : 0;
      for (int sg = 0; sg < sgs && sg <= open_sgs; ++sg) {
        const int q = g * sgs + sg;
        const int open = used_servers_[q];
        for (int i = 0; i < per && i <= open; ++i) out.push_back(q * per + i);
      }
    }
  }

  // Applies the placement; returns false if it breaks C1-C5. Undo must be
  // called either way.
  bool Place(int v, int s) {
    const int q = in_.SubgroupOf(s);
    const int g = q / in_.subgroups_per_group;
    if (count_[s]++ == 0) {
      ++active_servers_;
      if (used_servers_[q]++ == 0) {
        if (used_subgroups_[g]++ == 0) ++used_groups_;
      }
    }
    host_[v] = s;
    cpu_[s] += in_.cpu[v];
    mem_[s] += in_.mem[v];
    assigned_cpu_ += in_.cpu[v];
    assigned_mem_ += in_.mem[v];
    bool ok = !ExceedsCapacity(static_cast<double>(cpu_[s]), in_.cap_cpu) &&
              !ExceedsCapacity(static_cast<double>(mem_[s]), in_.cap_mem);
    for (const Instance::Edge& e : in_.adj[v]) {
      const int t = host_[e.other];
      if (t < 0 || t == s) continue;
      ok &= Route(s, t, e.rate, +1);
    }
    return ok;
  }

  void Undo(int v, int s) {
    for (const Instance::Edge& e : in_.adj[v]) {
      const int t = host_[e.other];
      if (t < 0 || t == s) continue;
      Route(s, t, e.rate, -1);
    }
    cpu_[s] -= in_.cpu[v];
    mem_[s] -= in_.mem[v];
    assigned_cpu_ -= in_.cpu[v];
    assigned_mem_ -= in_.mem[v];
    host_[v] = -1;
    const int q = in_.SubgroupOf(s);
    const int g = q / in_.subgroups_per_group;
    if (--count_[s] == 0) {
      --active_servers_;
      if (--used_servers_[q] == 0) {
        if (--used_subgroups_[g] == 0) --used_groups_;
      }
    }
  }

  // Admissible lower bound on the total power of every completion, or
  // nullopt when no completion can be feasible.
  std::optional<double> Bound() const {
    const PowerParams& p = in_.params;
    const double committed = Committed();

    double bound = committed;
    const long long rem_cpu = in_.total_cpu - assigned_cpu_;
    const long long rem_mem = in_.total_mem - assigned_mem_;
    bound += in_.span * (static_cast<double>(rem_cpu) / in_.cap_cpu);

    // Servers that the remaining demand forces open.
    double residual_cpu = 0, residual_mem = 0;
    for (int s = 0; s < in_.num_servers; ++s) {
      if (count_[s] == 0) continue;
      residual_cpu += std::max(0.0, in_.cap_cpu - static_cast<double>(cpu_[s]));
      residual_mem += std::max(0.0, in_.cap_mem - static_cast<double>(mem_[s]));
    }
    const double need_cpu = static_cast<double>(rem_cpu) - residual_cpu;
    const double need_mem = static_cast<double>(rem_mem) - residual_mem;
    int extra = 0;
    if (need_cpu > 0) {
      extra = std::max(extra, static_cast<int>(std::ceil(
                                  need_cpu / in_.cap_cpu - 1e-9)));
    }
    if (need_mem > 0) {
      extra = std::max(extra, static_cast<int>(std::ceil(
                                  need_mem / in_.cap_mem - 1e-9)));
    }
    if (extra > in_.num_servers - active_servers_) return std::nullopt;
    bound += extra * (p.p_idle + in_.fixed_onu);

    // Flows that must leave their assigned endpoint's subgroup.
    forced_.assign(in_.num_groups, 0);
    forced_traffic_.assign(in_.num_groups, 0);
    for (int v = 0; v < in_.n; ++v) {
      if (host_[v] >= 0) continue;
      for (const Instance::Edge& e : in_.adj[v]) {
        const int t = host_[e.other];
        if (t < 0) continue;
        if (SubgroupHasRoom(in_.SubgroupOf(t), v)) continue;
        const int g = in_.GroupOf(t);
        ++forced_[g];
        forced_traffic_[g] += e.rate;
      }
    }
    long long forced_sum = 0;
    long long forced_traffic_sum = 0;
    for (int g = 0; g < in_.num_groups; ++g) {
      if (forced_[g] == 0) continue;
      const int flows = spec_flows_[g] + forced_[g];
      if (ExceedsCapacity(in_.ff * flows, 1.0) ||
          ExceedsCapacity(static_cast<double>(spec_traffic_[g] +
                                              forced_traffic_[g]),
                          in_.onu_rate)) {
        return std::nullopt;
      }
      if (spec_flows_[g] == 0) bound += p.p_idle + in_.fixed_onu;
      forced_sum += forced_[g];
      forced_traffic_sum += forced_traffic_[g];
    }
    bound += in_.span * (in_.ff * static_cast<double>(forced_sum));
    if (p.onu_mode == OnuMode::kTrafficProportional) {
      bound += p.onu_power *
               (static_cast<double>(forced_traffic_sum) / in_.onu_rate);
    }
    return bound;
  }

  long long spec_flows_total() const {
    return std::accumulate(spec_flows_.begin(), spec_flows_.end(), 0LL);
  }

 private:
  // Power of the nodes touched so far; mirrors PowerFromUsage.
  double Committed() const {
    const PowerParams& p = in_.params;
    double committed = active_servers_ * p.p_idle +
                       in_.span * (static_cast<double>(assigned_cpu_) /
                                   in_.cap_cpu);
    committed += active_specials_ * p.p_idle +
                 in_.span * (in_.ff * static_cast<double>(spec_flow_sum_));
    if (p.onu_mode == OnuMode::kFixedWhenActive) {
      committed += p.onu_power * (active_servers_ + active_specials_);
    } else {
      committed +=
          p.onu_power * (static_cast<double>(traffic_sum_) / in_.onu_rate);
    }
    return committed;
  }

  bool SubgroupHasRoom(int q, int v) const {
    const int per = in_.per_subgroup;
    if (used_servers_[q] < per) return true;  // an empty server remains
    for (int s = q * per; s < (q + 1) * per; ++s) {
      if (!ExceedsCapacity(static_cast<double>(cpu_[s] + in_.cpu[v]),
                           in_.cap_cpu) &&
          !ExceedsCapacity(static_cast<double>(mem_[s] + in_.mem[v]),
                           in_.cap_mem)) {
        return true;
      }
    }
    return false;
  }

  // Adds (sign = +1) or removes (-1) one flow between distinct servers;
  // returns whether every touched resource is still within capacity.
  bool Route(int s, int t, long long rate, int sign) {
    const long long r = sign * rate;
    onu_[s] += r;
    onu_[t] += r;
    traffic_sum_ += 2 * r;
    const int qs = in_.SubgroupOf(s);
    const int qt = in_.SubgroupOf(t);
    bool ok = true;
    if (qs == qt) {
      link_[qs] += 2 * r;
      return !ExceedsCapacity(static_cast<double>(link_[qs]), in_.link_cap);
    }
    link_[qs] += r;
    link_[qt] += r;
    ok &= !ExceedsCapacity(static_cast<double>(link_[qs]), in_.link_cap);
    ok &= !ExceedsCapacity(static_cast<double>(link_[qt]), in_.link_cap);
    const int gs = qs / in_.subgroups_per_group;
    const int gt = qt / in_.subgroups_per_group;
    ok &= Forward(gs, r, sign);
    if (gt != gs) ok &= Forward(gt, r, sign);
    return ok;
  }

  bool Forward(int g, long long r, int sign) {
    if (sign > 0 && spec_flows_[g] == 0) ++active_specials_;
    spec_flows_[g] += sign;
    if (sign < 0 && spec_flows_[g] == 0) --active_specials_;
    spec_flow_sum_ += sign;
    spec_traffic_[g] += r;
    traffic_sum_ += r;
    return !ExceedsCapacity(in_.ff * spec_flows_[g], 1.0) &&
           !ExceedsCapacity(static_cast<double>(spec_traffic_[g]),
                            in_.onu_rate);
  }

  const Instance& in_;
  std::vector<int> host_;
  std::vector<long long> cpu_, mem_;
  std::vector<int> count_;
  std::vector<long long> onu_;
  std::vector<long long> link_;
  std::vector<int> spec_flows_;
  std::vector<long long> spec_traffic_;
  std::vector<int> used_servers_;    // per subgroup; a prefix of indices
  std::vector<int> used_subgroups_;  // per group; a prefix of subgroups
  int used_groups_ = 0;              // a prefix of groups
  int active_servers_ = 0;
  int active_specials_ = 0;
  long long assigned_cpu_ = 0, assigned_mem_ = 0;
  long long spec_flow_sum_ = 0;
  long long traffic_sum_ = 0;  // all ONU traffic, servers and specials
  mutable std::vector<int> forced_;
  mutable std::vector<long long> forced_traffic_;
};

struct PrunedNode {
  std::vector<int> host;
  double bound = 0;  // +inf for infeasibility prunes
};

bool LexLess(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Incumbent shared by all workers.
class Incumbent {
 public:
  double value() const { return value_.load(std::memory_order_relaxed); }

  void Offer(std::vector<int> key, Embedding embedding, PowerBreakdown power) {
    std::lock_guard<std::mutex> lock(mu_);
    const double best = value_.load(std::memory_order_relaxed);
    const double tol = Tolerance(power.total_w);
    const bool better = power.total_w < best - tol;
    const bool tie = !better && power.total_w <= best + tol;
    if (!better && !(tie && LexLess(key, key_))) return;
    key_ = std::move(key);
    embedding_ = std::move(embedding);
    power_ = power;
    has_ = true;
    if (better) value_.store(power.total_w, std::memory_order_relaxed);
  }

  bool has() const { return has_; }
  const Embedding& embedding() const { return embedding_; }
  const PowerBreakdown& power() const { return power_; }

 private:
  std::mutex mu_;
  std::atomic<double> value_{std::numeric_limits<double>::infinity()};
  bool has_ = false;
  std::vector<int> key_;
  Embedding embedding_;
  PowerBreakdown power_;
};

struct Shared {
  const Instance* in = nullptr;
  SolveLimits limits;
  SolveOptions options;
  Clock::time_point start;
  Incumbent incumbent;
  std::atomic<std::int64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<int> audit_slots{0};
  std::mutex audit_mu;
  std::vector<PrunedNode> audit;
};

class Searcher {
 public:
  Searcher(Shared& shared, SearchState state)
      : sh_(shared), in_(*shared.in), state_(std::move(state)) {}

  void Run(int depth) { Dfs(depth); }

 private:
  void Dfs(int depth) {
    if (depth == in_.n) {
      Leaf();
      return;
    }
    const int v = in_.order[depth];
    std::vector<int> candidates;
    state_.Candidates(candidates);
    for (int s : candidates) {
      if (sh_.stop.load(std::memory_order_relaxed)) return;
      if (!CountNode()) return;
      const bool ok = state_.Place(v, s);
      if (!ok) {
        MaybeAudit(depth + 1, std::numeric_limits<double>::infinity());
      } else if (std::optional<double> lb = state_.Bound(); !lb) {
        MaybeAudit(depth + 1, std::numeric_limits<double>::infinity());
      } else {
        const double best = sh_.incumbent.value();
        if (*lb > best + Tolerance(best)) {
          MaybeAudit(depth + 1, *lb);
        } else {
          Dfs(depth + 1);
        }
      }
      state_.Undo(v, s);
    }
  }

  bool CountNode() {
    const std::int64_t n = sh_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (sh_.limits.node_limit > 0 && n > sh_.limits.node_limit) {
      sh_.stop = true;
      return false;
    }
    if ((n & 1023) == 0 && std::isfinite(sh_.limits.time_limit_s) &&
        SecondsSince(sh_.start) > sh_.limits.time_limit_s) {
      sh_.stop = true;
      return false;
    }
    return true;
  }

  void Leaf() {
    Embedding canonical =
        CanonicalForm(in_.topology, in_.ToEmbedding(state_.host()));
    // Place() already enforced C1-C5, so this cannot throw Infeasible.
    PowerBreakdown power =
        TotalPower(in_.topology, in_.workload, canonical, in_.params);
    std::vector<int> key = AssignmentVector(in_.topology, canonical);
    sh_.incumbent.Offer(std::move(key), std::move(canonical), power);
  }

  void MaybeAudit(int assigned, double bound) {
    if (sh_.options.audit_samples <= 0) return;
    if (sh_.audit_slots.load(std::memory_order_relaxed) >=
        sh_.options.audit_samples) {
      return;
    }
    double completions = std::pow(static_cast<double>(in_.num_servers),
                                  in_.n - assigned);
    if (completions > static_cast<double>(sh_.options.audit_completion_cap)) {
      return;
    }
    if (sh_.audit_slots.fetch_add(1) >= sh_.options.audit_samples) return;
    std::lock_guard<std::mutex> lock(sh_.audit_mu);
    sh_.audit.push_back({state_.host(), bound});
  }

  Shared& sh_;
  const Instance& in_;
  SearchState state_;
};

// Frontier of partial assignments at a fixed depth, in DFS order, used to
// hand independent subtrees to worker threads.
void CollectFrontier(const Instance& in, SearchState& state, int depth,
                     int target_depth,
                     std::vector<std::vector<std::pair<int, int>>>& out,
                     std::vector<std::pair<int, int>>& path) {
  if (depth == target_depth || depth == in.n) {
    out.push_back(path);
    return;
  }
  const int v = in.order[depth];
  std::vector<int> candidates;
  state.Candidates(candidates);
  for (int s : candidates) {
    if (state.Place(v, s) && state.Bound()) {
      path.emplace_back(v, s);
      CollectFrontier(in, state, depth + 1, target_depth, out, path);
      path.pop_back();
    }
    state.Undo(v, s);
  }
}

void RunAudit(const Instance& in, const std::vector<PrunedNode>& nodes,
              double final_best, AuditReport& report) {
  const Topology& topo = in.topology;
  for (const PrunedNode& node : nodes) {
    std::vector<int> host = node.host;
    std::vector<int> free;
    for (int v = 0; v < in.n; ++v) {
      if (host[v] < 0) free.push_back(v);
    }
    for (int v : free) host[v] = 0;
    double best = std::numeric_limits<double>::infinity();
    while (true) {
      const Embedding e = in.ToEmbedding(host);
      const UsageReport usage = ComputeUsage(topo, in.workload, e);
      if (CheckFeasibility(topo, usage).empty()) {
        best = std::min(best, PowerFromUsage(topo, usage, in.params).total_w);
      }
      std::size_t k = free.size();
      while (k > 0) {
        int& digit = host[free[k - 1]];
        if (++digit < in.num_servers) break;
        digit = 0;
        --k;
      }
      if (k == 0) break;
    }
    ++report.checked;
    const bool infeasible_prune = std::isinf(node.bound);
    std::string problem;
    if (infeasible_prune && std::isfinite(best)) {
      problem = "infeasibility prune has a feasible completion of " +
                std::to_string(best) + " W";
    } else if (!infeasible_prune && best < node.bound - Tolerance(best)) {
      problem = "bound " + std::to_string(node.bound) +
                " W exceeds best completion " + std::to_string(best) + " W";
    } else if (best < final_best - Tolerance(final_best)) {
      problem = "pruned subtree holds " + std::to_string(best) +
                " W, better than the incumbent";
    }
    if (!problem.empty()) {
      ++report.violations;
      report.details.push_back(problem);
    }
  }
}

}  // namespace

std::string ToString(SolveMethod m) {
  switch (m) {
    case SolveMethod::kBranchAndBound:
      return "optimal";
    case SolveMethod::kBruteForce:
      return "brute-force";
    case SolveMethod::kRoundRobin:
      return "round-robin";
    case SolveMethod::kRandom:
      return "random";
  }
  return "?";
}

void SolveLimits::Validate() const {
  if (!(time_limit_s > 0)) throw InvalidConfig("time_limit must be > 0");
  if (node_limit < 0) throw InvalidConfig("node_limit must be >= 0");
}

std::vector<int> AssignmentVector(const Topology& topology,
                                  const Embedding& embedding) {
  std::vector<int> out;
  out.reserve(embedding.assignment.size());
  for (const auto& [id, addr] : embedding.assignment) {
    out.push_back(topology.ServerIndex(addr));
  }
  return out;
}

Embedding CanonicalForm(const Topology& topology, const Embedding& embedding) {
  std::map<int, int> groups;
  std::map<std::pair<int, int>, int> subgroups;
  std::map<int, int> subgroups_in_group;
  std::map<std::tuple<int, int, int>, int> servers;
  std::map<std::pair<int, int>, int> servers_in_subgroup;
  Embedding out;
  for (const auto& [id, a] : embedding.assignment) {
    if (!topology.Contains(a)) throw UnknownNode("unknown " + ToString(a));
    auto [git, gnew] = groups.try_emplace(a.group, 0);
    if (gnew) git->second = static_cast<int>(groups.size()) - 1;
    const int g = git->second;
    auto [sit, snew] = subgroups.try_emplace({a.group, a.subgroup}, 0);
    if (snew) sit->second = subgroups_in_group[g]++;
    const int sg = sit->second;
    auto [iit, inew] = servers.try_emplace({a.group, a.subgroup, a.index}, 0);
    if (inew) iit->second = servers_in_subgroup[{g, sg}]++;
    out.assignment.emplace(id, ServerAddress{g, sg, iit->second});
  }
  return out;
}

SolveReport SolveOptimal(const Topology& topology, const Workload& workload,
                         const PowerParams& params, const SolveLimits& limits,
                         const SolveOptions& options) {
  workload.Validate();
  params.Validate();
  limits.Validate();
  if (options.threads < 1) throw InvalidConfig("threads must be >= 1");

  const Instance in(topology, workload, params);
  Shared shared;
  shared.in = &in;
  shared.limits = limits;
  shared.options = options;
  shared.start = Clock::now();

  if (options.threads == 1 || in.n < 2) {
    Searcher(shared, SearchState(in)).Run(0);
  } else {
    // Deepen until there is enough independent work per thread.
    std::vector<std::vector<std::pair<int, int>>> frontier;
    for (int depth = 1; depth <= in.n; ++depth) {
      SearchState state(in);
      std::vector<std::pair<int, int>> path;
      frontier.clear();
      CollectFrontier(in, state, 0, depth, frontier, path);
      if (frontier.size() >= static_cast<std::size_t>(4 * options.threads)) {
        break;
      }
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < options.threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t k = next++; k < frontier.size(); k = next++) {
          SearchState state(in);
          for (const auto& [v, s] : frontier[k]) state.Place(v, s);
          Searcher(shared, std::move(state))
              .Run(static_cast<int>(frontier[k].size()));
        }
      });
    }
    for (std::thread& w : workers) w.join();
  }

  SolveReport report;
  report.method = SolveMethod::kBranchAndBound;
  report.nodes_explored = shared.nodes.load();
  report.limit_hit = shared.stop.load();
  report.optimal = !report.limit_hit;
  if (!shared.incumbent.has()) {
    report.elapsed_s = SecondsSince(shared.start);
    if (report.limit_hit) {
      throw LimitExceeded("search limit reached after " +
                              std::to_string(report.nodes_explored) +
                              " nodes without a feasible embedding",
                          std::nullopt);
    }
    throw Infeasible("no embedding satisfies C1-C5", {});
  }
  report.embedding = shared.incumbent.embedding();
  report.power = shared.incumbent.power();
  if (!shared.audit.empty()) {
    RunAudit(in, shared.audit, report.power.total_w, report.audit);
  }
  report.elapsed_s = SecondsSince(shared.start);
  return report;
}

SolveReport BruteForceOptimal(const Topology& topology,
                              const Workload& workload,
                              const PowerParams& params,
                              std::int64_t max_assignments) {
  workload.Validate();
  params.Validate();
  const auto start = Clock::now();
  const std::vector<VmId> ids = SortedIds(workload);
  const int n = static_cast<int>(ids.size());
  const int m = topology.num_servers();

  std::int64_t total = 1;
  for (int v = 0; v < n; ++v) {
    if (total > max_assignments / m) {
      throw TooLarge(std::to_string(m) + "^" + std::to_string(n) +
                     " assignments exceed the brute-force guard of " +
                     std::to_string(max_assignments));
    }
    total *= m;
  }

  std::vector<int> digits(n, 0);
  Embedding current;
  for (VmId id : ids) current.assignment.emplace(id, topology.ServerAt(0));

  SolveReport report;
  report.method = SolveMethod::kBruteForce;
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  while (true) {
    ++report.nodes_explored;
    int v = 0;
    for (auto& [id, addr] : current.assignment) addr = topology.ServerAt(digits[v++]);
    const UsageReport usage = ComputeUsage(topology, workload, current);
    if (CheckFeasibility(topology, usage).empty()) {
      const PowerBreakdown power = PowerFromUsage(topology, usage, params);
      // Strict improvement only: the first assignment reached in
      // lexicographic order keeps ties.
      if (!found || power.total_w < best - Tolerance(best)) {
        best = power.total_w;
        report.embedding = current;
        report.power = power;
        found = true;
      }
    }
    int k = n;
    while (k > 0) {
      if (++digits[k - 1] < m) break;
      digits[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  report.elapsed_s = SecondsSince(start);
  if (!found) throw Infeasible("no embedding satisfies C1-C5", {});
  report.optimal = true;
  return report;
}

}  // namespace pondc
