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

#include "pondc/workload.h"

#include <algorithm>
#include <set>
#include <utility>

#include "json.hpp"
#include "pondc/error.h"
#include "pondc/rng.h"

namespace pondc {
namespace {

using nlohmann::json;

void CheckRange(int value, int lo, int hi, const std::string& what) {
  if (value < lo || value > hi) {
    throw ValidationError(what + " = " + std::to_string(value) +
                          " outside [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  }
}

int LineOf(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte,
                                         '\n'));
}

const json& Field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(path + ": missing field \"" + key + "\"");
  }
  return *it;
}

int IntField(const json& obj, const char* key, const std::string& path) {
  const json& v = Field(obj, key, path);
  if (!v.is_number_integer()) {
    throw ParseError(path + "." + key + ": expected an integer");
  }
  const auto x = v.get<std::int64_t>();
  if (x < INT32_MIN || x > INT32_MAX) {
    throw ParseError(path + "." + key + ": integer out of range");
  }
  return static_cast<int>(x);
}

}  // namespace

void GenerationParams::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidConfig(std::string("invalid bounds: ") + what);
  };
  require(0 < cpu_min && cpu_min <= cpu_max, "need 0 < cpu_min <= cpu_max");
  require(0 < mem_min && mem_min <= mem_max, "need 0 < mem_min <= mem_max");
  require(0 < rate_min && rate_min <= rate_max,
          "need 0 < rate_min <= rate_max");
  require(1 <= degree_min && degree_min <= degree_max,
          "need 1 <= degree_min <= degree_max");
}

void Workload::Validate() const {
  const GenerationParams& p = generation_params;
  std::set<VmId> ids;
  for (const VmRequest& vm : vms) {
    const std::string where = "vm " + std::to_string(vm.id);
    if (!ids.insert(vm.id).second) {
      throw ValidationError("duplicate " + where);
    }
    CheckRange(vm.cpu_demand, p.cpu_min, p.cpu_max, where + " cpu");
    CheckRange(vm.mem_demand, p.mem_min, p.mem_max, where + " mem");
  }
  std::set<std::pair<VmId, VmId>> pairs;
  for (const Flow& f : flows) {
    const std::string where =
        "flow (" + std::to_string(f.a) + ", " + std::to_string(f.b) + ")";
    if (!ids.contains(f.a) || !ids.contains(f.b)) {
      throw ValidationError(where + " references an unknown VM");
    }
    if (f.a == f.b) throw ValidationError(where + " is a self loop");
    if (!pairs.insert(std::minmax(f.a, f.b)).second) {
      throw ValidationError("duplicate " + where);
    }
    CheckRange(f.rate, p.rate_min, p.rate_max, where + " rate");
  }
}

std::map<VmId, int> Workload::Degrees() const {
  std::map<VmId, int> deg;
  for (const VmRequest& vm : vms) deg[vm.id] = 0;
  for (const Flow& f : flows) {
    ++deg[f.a];
    ++deg[f.b];
  }
  return deg;
}

Workload GenerateWorkload(int n_vms, std::uint64_t seed,
                          const GenerationParams& params) {
  if (n_vms < 2) {
    throw Unsatisfiable("need at least 2 VMs to form a flow, got " +
                        std::to_string(n_vms));
  }
  params.Validate();

  Rng rng(seed);
  Workload w;
  w.seed = seed;
  w.generation_params = params;
  w.vms.reserve(n_vms);
  for (int v = 0; v < n_vms; ++v) {
    VmRequest vm;
    vm.id = v;
    vm.cpu_demand = static_cast<int>(rng.UniformInt(params.cpu_min,
                                                    params.cpu_max));
    vm.mem_demand = static_cast<int>(rng.UniformInt(params.mem_min,
                                                    params.mem_max));
    w.vms.push_back(vm);
  }

  std::vector<int> target(n_vms);
  for (int v = 0; v < n_vms; ++v) {
    target[v] = std::min<int>(
        static_cast<int>(rng.UniformInt(params.degree_min, params.degree_max)),
        n_vms - 1);
  }

  std::vector<std::vector<bool>> adjacent(n_vms,
                                          std::vector<bool>(n_vms, false));
  std::vector<int> degree(n_vms, 0);
  std::vector<int> candidates;
  for (int v = 0; v < n_vms; ++v) {
    while (degree[v] < target[v]) {
      candidates.clear();
      for (int u = 0; u < n_vms; ++u) {
        if (u != v && !adjacent[v][u]) candidates.push_back(u);
      }
      if (candidates.empty()) break;
      const int u = candidates[rng.UniformInt(
          0, static_cast<std::int64_t>(candidates.size()) - 1)];
      const int rate =
          static_cast<int>(rng.UniformInt(params.rate_min, params.rate_max));
      adjacent[v][u] = adjacent[u][v] = true;
      ++degree[v];
      ++degree[u];
      w.flows.push_back({std::min(u, v), std::max(u, v), rate});
    }
  }
  return w;
}

std::string SerializeWorkload(const Workload& w) {
  json doc;
  doc["seed"] = w.seed;
  json vms = json::array();
  for (const VmRequest& vm : w.vms) {
    vms.push_back({{"id", vm.id}, {"cpu", vm.cpu_demand},
                   {"mem", vm.mem_demand}});
  }
  json flows = json::array();
  for (const Flow& f : w.flows) {
    flows.push_back({{"a", f.a}, {"b", f.b}, {"rate", f.rate}});
  }
  const GenerationParams& p = w.generation_params;
  doc["vms"] = std::move(vms);
  doc["flows"] = std::move(flows);
  doc["bounds"] = {{"cpu_min", p.cpu_min},       {"cpu_max", p.cpu_max},
                   {"mem_min", p.mem_min},       {"mem_max", p.mem_max},
                   {"rate_min", p.rate_min},     {"rate_max", p.rate_max},
                   {"degree_min", p.degree_min}, {"degree_max", p.degree_max}};
  return doc.dump(2) + "\n";
}

Workload ParseWorkload(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(LineOf(text, e.byte)) + ": " +
                     e.what());
  }

  Workload w;
  const json& seed = Field(doc, "seed", "workload");
  if (!seed.is_number_integer()) {
    throw ParseError("workload.seed: expected an integer");
  }
  w.seed = seed.get<std::uint64_t>();

  if (auto it = doc.find("bounds"); it != doc.end()) {
    GenerationParams& p = w.generation_params;
    const std::string path = "workload.bounds";
    p.cpu_min = IntField(*it, "cpu_min", path);
    p.cpu_max = IntField(*it, "cpu_max", path);
    p.mem_min = IntField(*it, "mem_min", path);
    p.mem_max = IntField(*it, "mem_max", path);
    p.rate_min = IntField(*it, "rate_min", path);
    p.rate_max = IntField(*it, "rate_max", path);
    p.degree_min = IntField(*it, "degree_min", path);
    p.degree_max = IntField(*it, "degree_max", path);
    try {
      p.Validate();
    } catch (const InvalidConfig& e) {
      throw ValidationError(e.what());
    }
  }

  const json& vms = Field(doc, "vms", "workload");
  if (!vms.is_array()) throw ParseError("workload.vms: expected an array");
  for (std::size_t i = 0; i < vms.size(); ++i) {
    const std::string path = "workload.vms[" + std::to_string(i) + "]";
    w.vms.push_back({IntField(vms[i], "id", path),
                     IntField(vms[i], "cpu", path),
                     IntField(vms[i], "mem", path)});
  }
  const json& flows = Field(doc, "flows", "workload");
  if (!flows.is_array()) throw ParseError("workload.flows: expected an array");
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const std::string path = "workload.flows[" + std::to_string(i) + "]";
    Flow f{IntField(flows[i], "a", path), IntField(flows[i], "b", path),
           IntField(flows[i], "rate", path)};
    if (f.a > f.b) std::swap(f.a, f.b);
    w.flows.push_back(f);
  }
  w.Validate();
  return w;
}

}  // namespace pondc
