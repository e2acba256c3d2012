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

// Command-line front end: generate, solve, baseline, sweep, summarize,
// export-lp and audit.
//
// Exit codes: 0 ok, 1 audit mismatch, 2 infeasible, 3 limit exceeded,
// 4 invalid input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pondc/baseline.h"
#include "pondc/harness.h"
#include "pondc/json_io.h"
#include "pondc/lp_export.h"
#include "pondc/power_model.h"
#include "pondc/solver.h"
#include "pondc/text.h"
#include "pondc/topology.h"
#include "pondc/workload.h"

namespace {

using nlohmann::json;
using namespace pondc;

constexpr int kExitOk = 0;
constexpr int kExitAudit = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitLimit = 3;
constexpr int kExitInvalid = 4;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json ReadJsonFile(const std::string& path) {
  try {
    return json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void Emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InvalidConfig("cannot write " + out_path);
  out << text;
}

struct ModelOptions {
  std::string topology_file;
  std::optional<int> groups, subgroups, servers;
  std::string params_file;
  std::string onu_mode;

  void Attach(CLI::App* app) {
    app->add_option("--topology", topology_file, "topology JSON file");
    app->add_option("--groups", groups, "number of groups");
    app->add_option("--subgroups", subgroups, "subgroups per group");
    app->add_option("--servers", servers, "servers per subgroup");
    app->add_option("--params", params_file, "power parameters JSON file");
    app->add_option("--onu-mode", onu_mode,
                    "FixedWhenActive or TrafficProportional");
  }

  TopologyConfig Topology() const {
    TopologyConfig c = topology_file.empty()
                           ? TopologyConfig{}
                           : TopologyConfigFromJson(ReadJsonFile(topology_file));
    if (groups) c.num_groups = *groups;
    if (subgroups) c.subgroups_per_group = *subgroups;
    if (servers) c.servers_per_subgroup = *servers;
    c.Validate();
    return c;
  }

  PowerParams Params() const {
    PowerParams p = params_file.empty()
                        ? PowerParams{}
                        : PowerParamsFromJson(ReadJsonFile(params_file));
    if (!onu_mode.empty()) p.onu_mode = ParseOnuMode(onu_mode);
    p.Validate();
    return p;
  }
};

std::string ReportCsv(const SolveReport& r) {
  std::ostringstream os;
  os << "method,optimal,total_w,servers_w,special_servers_w,onus_w,"
        "servers_activated,special_servers_activated,nodes_explored,"
        "embedding\n"
     << ToString(r.method) << ',' << (r.optimal ? 1 : 0) << ','
     << FormatFixed(r.power.total_w, 6) << ','
     << FormatFixed(r.power.servers_w, 6) << ','
     << FormatFixed(r.power.special_servers_w, 6) << ','
     << FormatFixed(r.power.onus_w, 6) << ',' << r.power.activated_servers
     << ',' << r.power.activated_special_servers << ',' << r.nodes_explored
     << ',' << FormatEmbedding(r.embedding) << "\n";
  return os.str();
}

std::string ReportText(const Topology& topology, const Workload& workload,
                       const SolveReport& r, const std::string& format) {
  if (format == "csv") return ReportCsv(r);
  json j = ToJson(r);
  j["usage"] = ToJson(topology, ComputeUsage(topology, workload, r.embedding));
  return j.dump(2) + "\n";
}

std::vector<std::uint64_t> ParseSeeds(const std::string& s) {
  // "1-20" or "1,2,7".
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoull(part));
      } else {
        const auto lo = std::stoull(part.substr(0, dash));
        const auto hi = std::stoull(part.substr(dash + 1));
        for (auto x = lo; x <= hi; ++x) out.push_back(x);
      }
    } catch (const std::exception&) {
      throw InvalidConfig("bad seed list '" + s + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power-minimal VM embedding for AWGR/server-based PON data "
               "centres"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a random workload");
  int gen_vms = 5;
  std::uint64_t gen_seed = 1;
  std::string gen_bounds, gen_out;
  gen->add_option("--vms", gen_vms, "number of VMs")->required();
  gen->add_option("--seed", gen_seed, "PRNG seed");
  gen->add_option("--bounds", gen_bounds, "generation bounds JSON file");
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "find the minimum-power embedding");
  ModelOptions solve_model;
  std::string solve_workload, solve_out, solve_format = "json";
  std::string solve_method = "optimal";
  double time_limit = 0;
  std::int64_t node_limit = 0;
  int threads = 1;
  int audit_samples = 0;
  solve_model.Attach(solve);
  solve->add_option("--workload", solve_workload, "workload JSON file")
      ->required();
  solve->add_option("--method", solve_method, "optimal or brute-force")
      ->check(CLI::IsMember({"optimal", "brute-force"}));
  solve->add_option("--time-limit", time_limit, "seconds (0 = none)");
  solve->add_option("--node-limit", node_limit, "search nodes (0 = none)");
  solve->add_option("--threads", threads, "branch-and-bound threads");
  solve->add_option("--audit", audit_samples,
                    "re-expand this many pruned nodes after the search");
  solve->add_option("--format", solve_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("-o,--output", solve_out, "output file (default stdout)");

  // baseline
  auto* base = app.add_subcommand("baseline", "run a non-optimized embedding");
  ModelOptions base_model;
  std::string base_workload, base_out, base_format = "json";
  std::string base_kind = "round-robin";
  std::uint64_t base_seed = 1;
  base_model.Attach(base);
  base->add_option("--workload", base_workload, "workload JSON file")
      ->required();
  base->add_option("--baseline", base_kind, "round-robin or random")
      ->check(CLI::IsMember({"round-robin", "random"}));
  base->add_option("--seed", base_seed, "seed for the random baseline");
  base->add_option("--format", base_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  base->add_option("-o,--output", base_out, "output file (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run an experiment sweep");
  std::string sweep_config, sweep_out, sweep_format = "csv";
  std::vector<int> sweep_vms, sweep_servers;
  std::string sweep_seeds, sweep_baseline;
  double sweep_time_limit = 0;
  int sweep_threads = 0;
  bool sweep_timing = false;
  sweep->add_option("--config", sweep_config, "sweep JSON file");
  sweep->add_option("--vm-counts", sweep_vms, "e.g. 5,10,15")
      ->delimiter(',');
  sweep->add_option("--servers", sweep_servers, "servers per subgroup list")
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_seeds, "e.g. 1-20 or 1,4,9");
  sweep->add_option("--baseline", sweep_baseline, "round-robin or random")
      ->check(CLI::IsMember({"round-robin", "random"}));
  sweep->add_option("--time-limit", sweep_time_limit,
                    "per-solve seconds (0 = none)");
  sweep->add_option("--threads", sweep_threads, "cells solved in parallel");
  sweep->add_flag("--timing", sweep_timing, "append elapsed_s to the CSV");
  sweep->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("-o,--output", sweep_out, "output file (default stdout)");

  // summarize
  auto* summ = app.add_subcommand("summarize", "aggregate a sweep CSV");
  std::string summ_in, summ_out, summ_format = "csv";
  summ->add_option("--input", summ_in, "sweep CSV file")->required();
  summ->add_option("--format", summ_format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));
  summ->add_option("-o,--output", summ_out, "output file (default stdout)");

  // export-lp
  auto* lp = app.add_subcommand("export-lp", "write the binary program");
  ModelOptions lp_model;
  std::string lp_workload, lp_out;
  lp_model.Attach(lp);
  lp->add_option("--workload", lp_workload, "workload JSON file")->required();
  lp->add_option("-o,--output", lp_out, "output file (default stdout)");

  // audit
  auto* audit = app.add_subcommand("audit", "recompute every sweep row");
  std::string audit_in;
  audit->add_option("--input", audit_in, "sweep CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*gen) {
      GenerationParams bounds =
          gen_bounds.empty() ? GenerationParams{}
                             : GenerationParamsFromJson(ReadJsonFile(gen_bounds));
      Emit(SerializeWorkload(GenerateWorkload(gen_vms, gen_seed, bounds)),
           gen_out);
      return kExitOk;
    }

    if (*solve) {
      const Topology topology(solve_model.Topology());
      const PowerParams params = solve_model.Params();
      const Workload workload = ParseWorkload(ReadFile(solve_workload));
      SolveReport report;
      if (solve_method == "brute-force") {
        report = BruteForceOptimal(topology, workload, params);
      } else {
        SolveLimits limits;
        if (time_limit > 0) limits.time_limit_s = time_limit;
        limits.node_limit = node_limit;
        SolveOptions options;
        options.threads = threads;
        options.audit_samples = audit_samples;
        report = SolveOptimal(topology, workload, params, limits, options);
      }
      Emit(ReportText(topology, workload, report, solve_format), solve_out);
      if (report.audit.violations > 0) return kExitAudit;
      return report.limit_hit ? kExitLimit : kExitOk;
    }

    if (*base) {
      const Topology topology(base_model.Topology());
      const PowerParams params = base_model.Params();
      const Workload workload = ParseWorkload(ReadFile(base_workload));
      const SolveReport report =
          base_kind == "random"
              ? RandomFeasibleEmbed(topology, workload, params, base_seed)
              : RoundRobinEmbed(topology, workload, params);
      Emit(ReportText(topology, workload, report, base_format), base_out);
      return kExitOk;
    }

    if (*sweep) {
      SweepSpec spec = sweep_config.empty()
                           ? SweepSpec{}
                           : SweepSpecFromJson(ReadJsonFile(sweep_config));
      if (!sweep_vms.empty()) spec.vm_counts = sweep_vms;
      if (!sweep_servers.empty()) spec.servers_per_subgroup = sweep_servers;
      if (!sweep_seeds.empty()) spec.seeds = ParseSeeds(sweep_seeds);
      if (!sweep_baseline.empty()) {
        spec.baseline = ParseBaselineKind(sweep_baseline);
      }
      if (sweep_time_limit > 0) spec.limits.time_limit_s = sweep_time_limit;
      if (sweep_threads > 0) spec.threads = sweep_threads;
      const std::vector<SweepRow> rows = RunSweep(spec);
      if (sweep_format == "csv") {
        Emit(WriteSweepCsv(rows, sweep_timing), sweep_out);
      } else {
        json out = json::array();
        for (const SweepRow& r : rows) {
          json j = {{"vm_count", r.vm_count},
                    {"servers_per_subgroup", r.servers_per_subgroup},
                    {"seed", r.seed},
                    {"method", r.method},
                    {"status", ToString(r.status)},
                    {"optimal", r.optimal},
                    {"total_w", r.total_w ? json(*r.total_w) : json(nullptr)},
                    {"servers_activated", r.servers_activated},
                    {"special_servers_activated",
                     r.special_servers_activated},
                    {"nodes_explored", r.nodes_explored},
                    {"config", r.config}};
          if (r.embedding) j["embedding"] = ToJson(*r.embedding);
          if (sweep_timing) j["elapsed_s"] = r.elapsed_s;
          out.push_back(std::move(j));
        }
        Emit(json{{"spec", ToJson(spec)}, {"rows", out}}.dump(2) + "\n",
             sweep_out);
      }
      return kExitOk;
    }

    if (*summ) {
      const std::vector<SummaryRow> summary =
          Summarize(ParseSweepCsv(ReadFile(summ_in)));
      if (summ_format == "csv") {
        Emit(WriteSummaryCsv(summary), summ_out);
      } else {
        json out = json::array();
        for (const SummaryRow& s : summary) {
          out.push_back(
              {{"vm_count", s.vm_count},
               {"servers_per_subgroup", s.servers_per_subgroup},
               {"paired_seeds", s.paired_seeds},
               {"optimal_mean_w", s.optimal_mean_w},
               {"baseline_mean_w", s.baseline_mean_w},
               {"savings_pct", s.savings_pct},
               {"optimal_servers_mean", s.optimal_servers_mean},
               {"baseline_servers_mean", s.baseline_servers_mean},
               {"optimal_special_mean", s.optimal_special_mean},
               {"baseline_special_mean", s.baseline_special_mean},
               {"reference_savings_pct", s.reference_savings_pct
                                             ? json(*s.reference_savings_pct)
                                             : json(nullptr)}});
        }
        Emit(out.dump(2) + "\n", summ_out);
      }
      return kExitOk;
    }

    if (*lp) {
      const Topology topology(lp_model.Topology());
      const Workload workload = ParseWorkload(ReadFile(lp_workload));
      Emit(ExportLp(topology, workload, lp_model.Params()), lp_out);
      return kExitOk;
    }

    if (*audit) {
      const std::vector<SweepRow> rows = ParseSweepCsv(ReadFile(audit_in));
      const std::vector<std::string> problems = AuditRows(rows);
      for (const std::string& p : problems) std::cerr << p << "\n";
      std::cout << rows.size() << " rows audited, " << problems.size()
                << " mismatches\n";
      return problems.empty() ? kExitOk : kExitAudit;
    }
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const LimitExceeded& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return kExitLimit;
  } catch (const GaveUp& e) {
    std::cerr << "gave up: " << e.what() << "\n";
    return kExitLimit;
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
