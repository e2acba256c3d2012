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

#include "pondc/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "pondc/baseline.h"
#include "pondc/error.h"
#include "pondc/json_io.h"
#include "pondc/text.h"

namespace pondc {
namespace {

using nlohmann::json;

constexpr const char* kSweepHeader =
    "vm_count,servers_per_subgroup,seed,method,status,optimal,total_w,"
    "servers_activated,special_servers_activated,nodes_explored,config,"
    "embedding";

constexpr const char* kSummaryHeader =
    "vm_count,servers_per_subgroup,paired_seeds,optimal_mean_w,"
    "baseline_mean_w,savings_pct,optimal_servers_mean,baseline_servers_mean,"
    "optimal_special_mean,baseline_special_mean,reference_savings_pct";

const std::string kOptimalMethod = ToString(SolveMethod::kBranchAndBound);

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double ParseDouble(const std::string& s, const std::string& what) {
  double x = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ParseError(what + ": not a number: '" + s + "'");
  }
  return x;
}

template <typename Int>
Int ParseInt(const std::string& s, const std::string& what) {
  Int x = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ParseError(what + ": not an integer: '" + s + "'");
  }
  return x;
}

std::pair<int, int> ParseRange(const std::string& s, const std::string& what) {
  const auto dash = s.find('-');
  if (dash == std::string::npos) throw ParseError(what + ": expected lo-hi");
  return {ParseInt<int>(s.substr(0, dash), what),
          ParseInt<int>(s.substr(dash + 1), what)};
}

int MethodRank(const std::string& method) {
  return method == kOptimalMethod ? 0 : 1;
}

std::optional<double> ReferenceSavings(int vm_count) {
  switch (vm_count) {
    case 5:
      return 24.0;
    case 10:
      return 22.0;
    case 15:
      return 26.0;
    default:
      return std::nullopt;
  }
}

void Fill(SweepRow& row, const SolveReport& r) {
  row.total_w = r.power.total_w;
  row.servers_activated = r.power.activated_servers;
  row.special_servers_activated = r.power.activated_special_servers;
  row.nodes_explored = r.nodes_explored;
  row.optimal = r.optimal;
  row.embedding = r.embedding;
  row.elapsed_s = r.elapsed_s;
  row.status = r.limit_hit ? CellStatus::kLimit : CellStatus::kOk;
}

// Both rows of one (vm_count, servers_per_subgroup, seed) cell.
std::pair<SweepRow, SweepRow> RunCell(const SweepSpec& spec, int vm_count,
                                      int sps, std::uint64_t seed) {
  TopologyConfig tc = spec.topology;
  tc.servers_per_subgroup = sps;
  const std::string tag = ConfigTag(tc, spec.params, spec.bounds);

  SweepRow opt, base;
  for (SweepRow* row : {&opt, &base}) {
    row->vm_count = vm_count;
    row->servers_per_subgroup = sps;
    row->seed = seed;
    row->config = tag;
  }
  opt.method = kOptimalMethod;
  base.method = ToString(spec.baseline);

  const Topology topology(tc);
  const Workload workload = GenerateWorkload(vm_count, seed, spec.bounds);

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  try {
    Fill(opt, SolveOptimal(topology, workload, spec.params, spec.limits));
  } catch (const LimitExceeded& e) {
    opt.status = CellStatus::kLimit;
    opt.error = e.what();
    opt.elapsed_s = elapsed();
  } catch (const Infeasible& e) {
    opt.status = CellStatus::kInfeasible;
    opt.error = e.what();
    opt.optimal = true;  // infeasibility was proved
    opt.elapsed_s = elapsed();
  } catch (const Error& e) {
    opt.status = CellStatus::kError;
    opt.error = e.what();
  }

  try {
    if (spec.baseline == BaselineKind::kRoundRobin) {
      Fill(base, RoundRobinEmbed(topology, workload, spec.params));
    } else {
      Fill(base, RandomFeasibleEmbed(topology, workload, spec.params, seed));
    }
  } catch (const Infeasible& e) {
    base.status = CellStatus::kInfeasible;
    base.error = e.what();
  } catch (const GaveUp& e) {
    base.status = CellStatus::kGaveUp;
    base.error = e.what();
  } catch (const Error& e) {
    base.status = CellStatus::kError;
    base.error = e.what();
  }
  return {std::move(opt), std::move(base)};
}

}  // namespace

std::string ToString(BaselineKind b) {
  return b == BaselineKind::kRoundRobin ? ToString(SolveMethod::kRoundRobin)
                                        : ToString(SolveMethod::kRandom);
}

BaselineKind ParseBaselineKind(const std::string& s) {
  if (s == "round-robin") return BaselineKind::kRoundRobin;
  if (s == "random") return BaselineKind::kRandom;
  throw InvalidConfig("unknown baseline '" + s + "'");
}

std::string ToString(CellStatus s) {
  switch (s) {
    case CellStatus::kOk:
      return "ok";
    case CellStatus::kLimit:
      return "limit";
    case CellStatus::kInfeasible:
      return "infeasible";
    case CellStatus::kGaveUp:
      return "gave-up";
    case CellStatus::kError:
      return "error";
  }
  return "?";
}

void SweepSpec::Normalize() {
  if (seeds.empty()) {
    for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
  }
  if (vm_counts.empty()) throw InvalidConfig("vm_counts is empty");
  if (servers_per_subgroup.empty()) {
    throw InvalidConfig("servers_per_subgroup is empty");
  }
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() !=
      seeds.size()) {
    throw InvalidConfig("seeds must be distinct");
  }
  for (int n : vm_counts) {
    if (n < 2) throw InvalidConfig("vm_counts entries must be >= 2");
  }
  for (int s : servers_per_subgroup) {
    if (s < 1) throw InvalidConfig("servers_per_subgroup entries must be >= 1");
  }
  if (threads < 1) throw InvalidConfig("threads must be >= 1");
  params.Validate();
  limits.Validate();
  bounds.Validate();
  topology.Validate();
}

SweepSpec SweepSpecFromJson(const json& j) {
  if (!j.is_object()) throw InvalidConfig("sweep: expected a JSON object");
  static const std::set<std::string> known = {
      "vm_counts", "servers_per_subgroup", "seeds",  "params", "limits",
      "baseline",  "topology",             "bounds", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw InvalidConfig("sweep: unknown key \"" + key + "\"");
    }
  }
  SweepSpec spec;
  try {
    if (j.contains("vm_counts")) {
      spec.vm_counts = j["vm_counts"].get<std::vector<int>>();
    }
    if (j.contains("servers_per_subgroup")) {
      spec.servers_per_subgroup =
          j["servers_per_subgroup"].get<std::vector<int>>();
    }
    if (j.contains("seeds")) {
      spec.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    }
    if (j.contains("baseline")) {
      spec.baseline = ParseBaselineKind(j["baseline"].get<std::string>());
    }
    if (j.contains("threads")) spec.threads = j["threads"].get<int>();
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("sweep: ") + e.what());
  }
  if (j.contains("params")) spec.params = PowerParamsFromJson(j["params"]);
  if (j.contains("limits")) spec.limits = SolveLimitsFromJson(j["limits"]);
  if (j.contains("topology")) {
    spec.topology = TopologyConfigFromJson(j["topology"]);
  }
  if (j.contains("bounds")) {
    spec.bounds = GenerationParamsFromJson(j["bounds"]);
  }
  spec.Normalize();
  return spec;
}

json ToJson(const SweepSpec& spec) {
  return {{"vm_counts", spec.vm_counts},
          {"servers_per_subgroup", spec.servers_per_subgroup},
          {"seeds", spec.seeds},
          {"params", ToJson(spec.params)},
          {"limits", ToJson(spec.limits)},
          {"baseline", ToString(spec.baseline)},
          {"topology", ToJson(spec.topology)},
          {"bounds", ToJson(spec.bounds)},
          {"threads", spec.threads}};
}

std::string ConfigTag(const TopologyConfig& t, const PowerParams& p,
                      const GenerationParams& b) {
  auto range = [](int lo, int hi) {
    return std::to_string(lo) + "-" + std::to_string(hi);
  };
  std::ostringstream os;
  os << "groups=" << t.num_groups << ";subgroups=" << t.subgroups_per_group
     << ";cpu=" << FormatShortest(t.server_cpu_capacity)
     << ";mem=" << FormatShortest(t.server_mem_capacity)
     << ";special_cpu=" << FormatShortest(t.special_cpu_capacity)
     << ";ff=" << FormatShortest(t.forwarding_fraction)
     << ";link=" << FormatShortest(t.link_capacity)
     << ";onu_rate=" << FormatShortest(t.onu_rate)
     << ";p_idle=" << FormatShortest(p.p_idle)
     << ";p_max=" << FormatShortest(p.p_max)
     << ";onu_power=" << FormatShortest(p.onu_power)
     << ";onu_mode=" << ToString(p.onu_mode)
     << ";cpu_range=" << range(b.cpu_min, b.cpu_max)
     << ";mem_range=" << range(b.mem_min, b.mem_max)
     << ";rate_range=" << range(b.rate_min, b.rate_max)
     << ";degree_range=" << range(b.degree_min, b.degree_max);
  return os.str();
}

RunConfig ParseConfigTag(const std::string& tag) {
  std::map<std::string, std::string> kv;
  for (const std::string& part : Split(tag, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config tag: malformed entry '" + part + "'");
    }
    kv[part.substr(0, eq)] = part.substr(eq + 1);
  }
  auto get = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw ParseError(std::string("config tag: missing ") + key);
    }
    return it->second;
  };
  RunConfig rc;
  rc.topology.num_groups = ParseInt<int>(get("groups"), "groups");
  rc.topology.subgroups_per_group = ParseInt<int>(get("subgroups"), "subgroups");
  rc.topology.server_cpu_capacity = ParseDouble(get("cpu"), "cpu");
  rc.topology.server_mem_capacity = ParseDouble(get("mem"), "mem");
  rc.topology.special_cpu_capacity =
      ParseDouble(get("special_cpu"), "special_cpu");
  rc.topology.forwarding_fraction = ParseDouble(get("ff"), "ff");
  rc.topology.link_capacity = ParseDouble(get("link"), "link");
  rc.topology.onu_rate = ParseDouble(get("onu_rate"), "onu_rate");
  rc.params.p_idle = ParseDouble(get("p_idle"), "p_idle");
  rc.params.p_max = ParseDouble(get("p_max"), "p_max");
  rc.params.onu_power = ParseDouble(get("onu_power"), "onu_power");
  try {
    rc.params.onu_mode = ParseOnuMode(get("onu_mode"));
  } catch (const InvalidConfig& e) {
    throw ParseError(std::string("config tag: ") + e.what());
  }
  std::tie(rc.bounds.cpu_min, rc.bounds.cpu_max) =
      ParseRange(get("cpu_range"), "cpu_range");
  std::tie(rc.bounds.mem_min, rc.bounds.mem_max) =
      ParseRange(get("mem_range"), "mem_range");
  std::tie(rc.bounds.rate_min, rc.bounds.rate_max) =
      ParseRange(get("rate_range"), "rate_range");
  std::tie(rc.bounds.degree_min, rc.bounds.degree_max) =
      ParseRange(get("degree_range"), "degree_range");
  return rc;
}

std::vector<SweepRow> RunSweep(SweepSpec spec) {
  spec.Normalize();
  struct Cell {
    int vm_count;
    int sps;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int n : spec.vm_counts) {
    for (int sps : spec.servers_per_subgroup) {
      for (std::uint64_t seed : spec.seeds) cells.push_back({n, sps, seed});
    }
  }
  std::vector<std::pair<SweepRow, SweepRow>> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      results[k] = RunCell(spec, cells[k].vm_count, cells[k].sps,
                           cells[k].seed);
    }
  };
  if (spec.threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < spec.threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  std::vector<SweepRow> rows;
  rows.reserve(2 * results.size());
  for (auto& [opt, base] : results) {
    rows.push_back(std::move(opt));
    rows.push_back(std::move(base));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     return std::tuple(a.vm_count, a.servers_per_subgroup,
                                       a.seed, MethodRank(a.method),
                                       a.method) <
                            std::tuple(b.vm_count, b.servers_per_subgroup,
                                       b.seed, MethodRank(b.method),
                                       b.method);
                   });
  return rows;
}

std::string FormatEmbedding(const Embedding& e) {
  std::string out;
  for (const auto& [id, s] : e.assignment) {
    if (!out.empty()) out += ' ';
    out += std::to_string(id) + "@" + std::to_string(s.group) + "." +
           std::to_string(s.subgroup) + "." + std::to_string(s.index);
  }
  return out;
}

Embedding ParseEmbedding(const std::string& text) {
  Embedding e;
  std::istringstream is(text);
  std::string item;
  while (is >> item) {
    const auto at = item.find('@');
    if (at == std::string::npos) {
      throw ParseError("embedding: malformed entry '" + item + "'");
    }
    const std::vector<std::string> parts = Split(item.substr(at + 1), '.');
    if (parts.size() != 3) {
      throw ParseError("embedding: malformed server in '" + item + "'");
    }
    const VmId id = ParseInt<int>(item.substr(0, at), "embedding vm");
    const ServerAddress s{ParseInt<int>(parts[0], "embedding group"),
                          ParseInt<int>(parts[1], "embedding subgroup"),
                          ParseInt<int>(parts[2], "embedding index")};
    if (!e.assignment.emplace(id, s).second) {
      throw ParseError("embedding: VM " + std::to_string(id) + " twice");
    }
  }
  return e;
}

std::string WriteSweepCsv(const std::vector<SweepRow>& rows,
                          bool with_timing) {
  std::ostringstream os;
  os << kSweepHeader << (with_timing ? ",elapsed_s" : "") << "\n";
  for (const SweepRow& r : rows) {
    os << r.vm_count << ',' << r.servers_per_subgroup << ',' << r.seed << ','
       << r.method << ',' << ToString(r.status) << ',' << (r.optimal ? 1 : 0)
       << ',' << (r.total_w ? FormatFixed(*r.total_w, 6) : "") << ','
       << r.servers_activated << ',' << r.special_servers_activated << ','
       << r.nodes_explored << ',' << r.config << ','
       << (r.embedding ? FormatEmbedding(*r.embedding) : "");
    if (with_timing) os << ',' << FormatFixed(r.elapsed_s, 6);
    os << "\n";
  }
  return os.str();
}

std::vector<SweepRow> ParseSweepCsv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw ParseError("sweep csv: empty input");
  bool timing = false;
  if (line == std::string(kSweepHeader) + ",elapsed_s") {
    timing = true;
  } else if (line != kSweepHeader) {
    throw ParseError("sweep csv line 1: unexpected header");
  }
  const std::size_t columns = timing ? 13 : 12;
  std::vector<SweepRow> rows;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "sweep csv line " + std::to_string(line_no);
    const std::vector<std::string> f = Split(line, ',');
    if (f.size() != columns) {
      throw ParseError(where + ": expected " + std::to_string(columns) +
                       " fields, got " + std::to_string(f.size()));
    }
    SweepRow r;
    r.vm_count = ParseInt<int>(f[0], where + " vm_count");
    r.servers_per_subgroup = ParseInt<int>(f[1], where + " servers");
    r.seed = ParseInt<std::uint64_t>(f[2], where + " seed");
    r.method = f[3];
    static const std::map<std::string, CellStatus> statuses = {
        {"ok", CellStatus::kOk},
        {"limit", CellStatus::kLimit},
        {"infeasible", CellStatus::kInfeasible},
        {"gave-up", CellStatus::kGaveUp},
        {"error", CellStatus::kError}};
    auto st = statuses.find(f[4]);
    if (st == statuses.end()) throw ParseError(where + ": bad status");
    r.status = st->second;
    r.optimal = ParseInt<int>(f[5], where + " optimal") != 0;
    if (!f[6].empty()) r.total_w = ParseDouble(f[6], where + " total_w");
    r.servers_activated = ParseInt<int>(f[7], where + " servers_activated");
    r.special_servers_activated =
        ParseInt<int>(f[8], where + " special_servers_activated");
    r.nodes_explored =
        ParseInt<std::int64_t>(f[9], where + " nodes_explored");
    r.config = f[10];
    if (!f[11].empty()) r.embedding = ParseEmbedding(f[11]);
    if (timing) r.elapsed_s = ParseDouble(f[12], where + " elapsed_s");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SummaryRow> Summarize(const std::vector<SweepRow>& rows) {
  std::set<std::string> configs, baselines;
  for (const SweepRow& r : rows) {
    configs.insert(r.config);
    if (r.method != kOptimalMethod) baselines.insert(r.method);
  }
  if (configs.size() > 1) {
    throw MixedSweep("rows come from " + std::to_string(configs.size()) +
                     " different configurations");
  }
  if (baselines.size() > 1) {
    throw MixedSweep("rows carry more than one baseline method");
  }

  using CellKey = std::pair<int, int>;
  using SeedKey = std::tuple<int, int, std::uint64_t>;
  std::map<CellKey, std::set<std::uint64_t>> cell_seeds;
  std::map<SeedKey, const SweepRow*> opt, base;
  for (const SweepRow& r : rows) {
    cell_seeds[{r.vm_count, r.servers_per_subgroup}].insert(r.seed);
    const SeedKey key{r.vm_count, r.servers_per_subgroup, r.seed};
    (r.method == kOptimalMethod ? opt : base)[key] = &r;
  }

  std::vector<SummaryRow> out;
  for (const auto& [cell, seeds] : cell_seeds) {
    SummaryRow s;
    s.vm_count = cell.first;
    s.servers_per_subgroup = cell.second;
    s.reference_savings_pct = ReferenceSavings(cell.first);
    for (std::uint64_t seed : seeds) {
      const SeedKey key{cell.first, cell.second, seed};
      auto o = opt.find(key);
      auto b = base.find(key);
      if (o == opt.end() || b == base.end()) continue;
      if (!o->second->total_w || !b->second->total_w) continue;
      const double ow = *o->second->total_w;
      const double bw = *b->second->total_w;
      ++s.paired_seeds;
      s.optimal_mean_w += ow;
      s.baseline_mean_w += bw;
      s.savings_pct += bw > 0 ? 100.0 * (bw - ow) / bw : 0.0;
      s.optimal_servers_mean += o->second->servers_activated;
      s.baseline_servers_mean += b->second->servers_activated;
      s.optimal_special_mean += o->second->special_servers_activated;
      s.baseline_special_mean += b->second->special_servers_activated;
    }
    if (s.paired_seeds > 0) {
      const double n = s.paired_seeds;
      s.optimal_mean_w /= n;
      s.baseline_mean_w /= n;
      s.savings_pct /= n;
      s.optimal_servers_mean /= n;
      s.baseline_servers_mean /= n;
      s.optimal_special_mean /= n;
      s.baseline_special_mean /= n;
    }
    out.push_back(s);
  }
  return out;
}

std::string WriteSummaryCsv(const std::vector<SummaryRow>& summary) {
  std::ostringstream os;
  os << kSummaryHeader << "\n";
  for (const SummaryRow& s : summary) {
    os << s.vm_count << ',' << s.servers_per_subgroup << ',' << s.paired_seeds
       << ',' << FormatFixed(s.optimal_mean_w, 3) << ','
       << FormatFixed(s.baseline_mean_w, 3) << ','
       << FormatFixed(s.savings_pct, 2) << ','
       << FormatFixed(s.optimal_servers_mean, 3) << ','
       << FormatFixed(s.baseline_servers_mean, 3) << ','
       << FormatFixed(s.optimal_special_mean, 3) << ','
       << FormatFixed(s.baseline_special_mean, 3) << ','
       << (s.reference_savings_pct ? FormatFixed(*s.reference_savings_pct, 2)
                                   : "")
       << "\n";
  }
  return os.str();
}

std::vector<std::string> AuditRows(const std::vector<SweepRow>& rows) {
  std::vector<std::string> problems;
  for (const SweepRow& r : rows) {
    const std::string where = "row (" + std::to_string(r.vm_count) + ", " +
                              std::to_string(r.servers_per_subgroup) + ", " +
                              std::to_string(r.seed) + ", " + r.method + ")";
    if (!r.embedding) {
      if (r.total_w) problems.push_back(where + ": power without embedding");
      continue;
    }
    try {
      RunConfig rc = ParseConfigTag(r.config);
      rc.topology.servers_per_subgroup = r.servers_per_subgroup;
      const Topology topology(rc.topology);
      const Workload workload =
          GenerateWorkload(r.vm_count, r.seed, rc.bounds);
      const PowerBreakdown p =
          TotalPower(topology, workload, *r.embedding, rc.params);
      if (!r.total_w ||
          FormatFixed(p.total_w, 6) != FormatFixed(*r.total_w, 6)) {
        problems.push_back(where + ": stored power " +
                           (r.total_w ? FormatFixed(*r.total_w, 6) : "none") +
                           " W, recomputed " + FormatFixed(p.total_w, 6) +
                           " W");
      }
      if (p.activated_servers != r.servers_activated ||
          p.activated_special_servers != r.special_servers_activated) {
        problems.push_back(where + ": activation counts disagree");
      }
    } catch (const Error& e) {
      problems.push_back(where + ": " + e.what());
    }
  }
  return problems;
}

}  // namespace pondc
