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

// Acceptance suite. Prints one "[PASS]" or "[FAIL]" line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "pondc/baseline.h"
#include "pondc/harness.h"
#include "pondc/lp_export.h"
#include "pondc/solver.h"
#include "test_support.h"

namespace pondc {
namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void Report(int n, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("[%s] criterion %d %s: %s\n", ok ? "PASS" : "FAIL", n,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string Fmt(const char* format, double a = 0, double b = 0,
                double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Topology Fabric(int g, int sg, int n) {
  TopologyConfig c;
  c.num_groups = g;
  c.subgroups_per_group = sg;
  c.servers_per_subgroup = n;
  return BuildTopology(c);
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

void OracleEquivalence() {
  const PowerParams params;
  int compared = 0, mismatches = 0;
  double slowest = 0;
  std::string first;
  for (std::uint64_t seed = 1; compared < 60 && seed <= 400; ++seed) {
    const testing::Instance in = testing::RandomSmallInstance(seed);
    const Topology t(in.config);
    const auto start = Clock::now();
    SolveReport brute, bnb;
    bool brute_inf = false, bnb_inf = false;
    try {
      brute = BruteForceOptimal(t, in.workload, params);
    } catch (const Infeasible&) {
      brute_inf = true;
    }
    try {
      bnb = SolveOptimal(t, in.workload, params);
    } catch (const Infeasible&) {
      bnb_inf = true;
    }
    slowest = std::max(slowest, Seconds(start));
    if (brute_inf != bnb_inf) {
      ++mismatches;
      if (first.empty()) first = "feasibility differs, seed " + std::to_string(seed);
      continue;
    }
    if (brute_inf) continue;
    ++compared;
    const bool feasible =
        CheckFeasibility(t, ComputeUsage(t, in.workload, brute.embedding))
            .empty() &&
        CheckFeasibility(t, ComputeUsage(t, in.workload, bnb.embedding))
            .empty();
    if (brute.power.total_w != bnb.power.total_w || !feasible ||
        !bnb.optimal) {
      ++mismatches;
      if (first.empty()) first = "seed " + std::to_string(seed);
    }
  }
  Report(1, "oracle equivalence",
         compared >= 50 && mismatches == 0 && slowest < 10,
         std::to_string(compared) + " feasible instances, " +
             std::to_string(mismatches) + " mismatches" +
             (first.empty() ? "" : " (" + first + ")") +
             Fmt(", slowest pair %.3f s", slowest));
}

void WorkedInstances() {
  const PowerParams params;
  const Topology t = Fabric(2, 2, 2);
  const Workload pair =
      testing::MakeWorkload({{1000, 1000}, {1000, 1000}}, {{0, 1, 100}});
  const Workload blocked =
      testing::MakeWorkload({{2000, 1000}, {2000, 1000}}, {{0, 1, 100}});
  const double opt = SolveOptimal(t, pair, params).power.total_w;
  const double rr = RoundRobinEmbed(t, pair, params).power.total_w;
  const double blk = SolveOptimal(t, blocked, params).power.total_w;
  Report(2, "worked instances", opt == 283.5 && rr == 487.0 && blk == 567.0,
         Fmt("optimal %.4g W, round-robin %.4g W, cpu-blocked %.4g W", opt,
             rr, blk));
}

// Optimal rows keyed by (vm_count, servers_per_subgroup, seed).
using RowMap = std::map<std::tuple<int, int, std::uint64_t>, const SweepRow*>;

void Monotonicity(const SweepSpec& spec, const RowMap& optimal) {
  int checked = 0, violations = 0, unproven = 0;
  std::string first;
  const double inf = std::numeric_limits<double>::infinity();
  for (int n : spec.vm_counts) {
    for (std::uint64_t seed : spec.seeds) {
      std::vector<double> w;
      for (int sps : spec.servers_per_subgroup) {
        const SweepRow* r = optimal.at({n, sps, seed});
        unproven += !r->optimal;
        w.push_back(r->total_w.value_or(inf));
      }
      ++checked;
      for (std::size_t k = 1; k < w.size(); ++k) {
        if (w[k - 1] < w[k]) {
          ++violations;
          if (first.empty()) {
            first = "vms " + std::to_string(n) + " seed " + std::to_string(seed);
          }
        }
      }
    }
  }
  Report(3, "monotonicity in servers per subgroup",
         violations == 0 && unproven == 0,
         std::to_string(checked) + " (vm_count, seed) chains, " +
             std::to_string(violations) + " violations" +
             (first.empty() ? "" : " (" + first + ")") + ", " +
             std::to_string(unproven) + " unproven cells");
}

void SpecialServerTrends(const SweepSpec& spec, const RowMap& optimal) {
  constexpr double kTolerance = 0.1;
  std::map<std::pair<int, int>, double> mean;
  std::string table;
  for (int n : spec.vm_counts) {
    for (int sps : spec.servers_per_subgroup) {
      double sum = 0;
      int count = 0;
      for (std::uint64_t seed : spec.seeds) {
        const SweepRow* r = optimal.at({n, sps, seed});
        if (!r->total_w) continue;
        sum += r->special_servers_activated;
        ++count;
      }
      mean[{n, sps}] = count ? sum / count : 0;
      table += " " + std::to_string(n) + "/" + std::to_string(sps) +
               Fmt("=%.2f", mean[{n, sps}]);
    }
  }
  bool ok = true;
  for (int n : spec.vm_counts) {
    for (std::size_t k = 1; k < spec.servers_per_subgroup.size(); ++k) {
      ok &= mean[{n, spec.servers_per_subgroup[k]}] <=
            mean[{n, spec.servers_per_subgroup[k - 1]}] + kTolerance;
    }
  }
  for (int sps : spec.servers_per_subgroup) {
    for (std::size_t k = 1; k < spec.vm_counts.size(); ++k) {
      ok &= mean[{spec.vm_counts[k], sps}] >=
            mean[{spec.vm_counts[k - 1], sps}] - kTolerance;
    }
  }
  Report(4, "special-server trends", ok,
         "mean activated special servers (vms/servers):" + table);
}

void SavingsBracket(const std::vector<SweepRow>& rows, const RowMap& optimal) {
  int worse = 0, paired = 0;
  for (const SweepRow& r : rows) {
    if (r.method == "optimal" || r.servers_per_subgroup != 3 || !r.total_w) {
      continue;
    }
    const SweepRow* o = optimal.at({r.vm_count, 3, r.seed});
    if (!o->total_w) continue;
    ++paired;
    worse += *o->total_w > *r.total_w;
  }
  bool ok = worse == 0;
  std::string detail;
  std::string reference;
  for (const SummaryRow& s : Summarize(rows)) {
    if (s.servers_per_subgroup != 3) continue;
    ok &= s.paired_seeds > 0 && s.savings_pct >= 10 && s.savings_pct <= 45;
    detail += " " + std::to_string(s.vm_count) +
              Fmt(" VMs %.2f%%", s.savings_pct) + " over " +
              std::to_string(s.paired_seeds) + " seeds;";
    if (s.reference_savings_pct) {
      reference += (reference.empty() ? "" : "/") +
                   Fmt("%.0f", *s.reference_savings_pct);
    }
  }
  Report(5, "savings bracket", ok,
         "round-robin, 3 servers/subgroup:" + detail + " optimal above " +
             "baseline on " + std::to_string(worse) + " of " +
             std::to_string(paired) + " paired seeds; published reference " +
             reference + "%");
}

void PowerProperties() {
  const PowerParams params;
  const auto d = testing::DecompositionSuite(1000, params);
  const auto m = testing::MonotonicitySuite(1000, params);
  const auto r = testing::RelabelingSuite(1000, params);
  const auto c = testing::ColocationSuite(1000);
  std::string detail;
  for (const auto& [name, s] :
       {std::pair{"decomposition", &d}, std::pair{"monotonicity", &m},
        std::pair{"relabeling", &r}, std::pair{"colocation", &c}}) {
    detail += std::string(detail.empty() ? "" : ", ") + name + " " +
              std::to_string(s->cases - s->failures) + "/" +
              std::to_string(s->cases);
    if (!s->ok()) detail += " (" + s->first_failure + ")";
  }
  Report(6, "power-model properties",
         d.ok() && m.ok() && r.ok() && c.ok() && d.cases >= 1000 &&
             m.cases >= 1000 && r.cases >= 1000 && c.cases >= 1000,
         detail);
}

void LpConsistency() {
  const PowerParams params;
  int checked = 0, bad = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; checked < 20 && seed < 400; ++seed) {
    const testing::Instance in = testing::RandomSmallInstance(seed, 5);
    const Topology t(in.config);
    SolveReport oracle;
    try {
      oracle = BruteForceOptimal(t, in.workload, params);
    } catch (const Infeasible&) {
      continue;
    }
    ++checked;
    const testing::LpModel m =
        testing::ParseLp(ExportLp(t, in.workload, params));
    const auto values = testing::LpValuesFor(t, in.workload, oracle.embedding);
    const double gap =
        std::abs(m.objective.Evaluate(values) - oracle.power.total_w);
    worst = std::max(worst, gap);
    bad += gap > 1e-6 || !testing::ViolatedRows(m, values).empty();
  }
  Report(7, "LP export consistency", checked == 20 && bad == 0,
         std::to_string(checked) + " instances, " + std::to_string(bad) +
             Fmt(" failures, largest objective gap %.3g W", worst));
}

void ScaleRuntime(const SweepSpec& spec, const RowMap& optimal) {
  double slowest = 0;
  std::int64_t nodes = 0, total_nodes = 0;
  int proven = 0, cells = 0;
  for (std::uint64_t seed : spec.seeds) {
    const SweepRow* r = optimal.at({15, 4, seed});
    ++cells;
    proven += r->optimal && r->status == CellStatus::kOk;
    total_nodes += r->nodes_explored;
    if (r->elapsed_s >= slowest) {
      slowest = r->elapsed_s;
      nodes = r->nodes_explored;
    }
  }
  Report(8, "scale and runtime", proven == cells && slowest < 120,
         "15 VMs on 2x2x4: " + std::to_string(proven) + "/" +
             std::to_string(cells) + " seeds proven optimal" +
             Fmt(", slowest %.2f s", slowest) + " (" + std::to_string(nodes) +
             " nodes), " + std::to_string(total_nodes) + " nodes in total");
}

int Run() {
  OracleEquivalence();
  WorkedInstances();

  SweepSpec spec;  // 5/10/15 VMs x 2/3/4 servers x seeds 1..20, round-robin
  spec.Normalize();
  // Cells run in parallel; solver timing is measured per cell. Wall time is
  // only pessimistic when cores are shared.
  spec.threads = std::max(1u, std::thread::hardware_concurrency());
  const auto start = Clock::now();
  const std::vector<SweepRow> rows = RunSweep(spec);
  std::printf("default sweep: %zu rows in %.1f s\n", rows.size(),
              Seconds(start));
  RowMap optimal;
  for (const SweepRow& r : rows) {
    if (r.method == "optimal") {
      optimal[{r.vm_count, r.servers_per_subgroup, r.seed}] = &r;
    }
  }
  if (rows.size() != 360 || optimal.size() != 180) {
    std::printf("unexpected sweep shape\n");
    ++failures;
  }
  Monotonicity(spec, optimal);
  SpecialServerTrends(spec, optimal);
  SavingsBracket(rows, optimal);
  PowerProperties();
  LpConsistency();
  ScaleRuntime(spec, optimal);

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace pondc

int main() { return pondc::Run(); }
