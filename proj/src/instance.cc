// Copyright 2026 The Safeflow Authors
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

#include "safeflow/instance.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "safeflow/errors.h"
#include "safeflow/random.h"

namespace safeflow {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

const json& require(const json& object, const std::string& key,
                    const std::string& path) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(path.empty() ? key : path + "." + key,
                     "missing required field");
  }
  return *it;
}

int read_int(const json& object, const std::string& key,
             const std::string& path) {
  const json& v = require(object, key, path);
  const std::string where = path.empty() ? key : path + "." + key;
  if (!v.is_number_integer()) throw ParseError(where, "expected an integer");
  const auto value = v.get<long long>();
  if (value < INT32_MIN || value > INT32_MAX) {
    throw ParseError(where, "integer out of range");
  }
  return static_cast<int>(value);
}

double read_double(const json& object, const std::string& key,
                   const std::string& path) {
  const json& v = require(object, key, path);
  if (!v.is_number()) {
    throw ParseError(path.empty() ? key : path + "." + key,
                     "expected a number");
  }
  return v.get<double>();
}

const json& read_array(const json& object, const std::string& key) {
  const json& v = require(object, key, "");
  if (!v.is_array()) throw ParseError(key, "expected an array");
  return v;
}

std::vector<std::vector<bool>> reachability(const Instance& g) {
  const auto adj = out_edges(g);
  std::vector<std::vector<bool>> reach(g.node_count,
                                       std::vector<bool>(g.node_count));
  std::vector<int> stack;
  for (int s = 0; s < g.node_count; ++s) {
    stack.assign(1, s);
    reach[s][s] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e : adj[v]) {
        const int w = g.edges[e].to;
        if (!reach[s][w]) {
          reach[s][w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return reach;
}

}  // namespace

std::vector<std::vector<int>> out_edges(const Instance& instance) {
  std::vector<std::vector<int>> adj(std::max(instance.node_count, 0));
  for (const Edge& e : instance.edges) {
    if (e.from >= 0 && e.from < instance.node_count) adj[e.from].push_back(e.id);
  }
  return adj;
}

std::string Violation::to_string() const {
  switch (subject) {
    case Subject::kEdge:
      return "edge " + std::to_string(id) + ": " + message;
    case Subject::kDemand:
      return "demand " + std::to_string(id) + ": " + message;
    case Subject::kInstance:
      break;
  }
  return message;
}

ValidationResult validate(const Instance& instance, DemandBound bound) {
  ValidationResult result;
  auto add = [&](Violation::Subject subject, int id, std::string message) {
    result.violations.push_back({subject, id, std::move(message)});
  };
  using S = Violation::Subject;
  const int n = instance.node_count;
  if (n <= 0) add(S::kInstance, -1, "node count must be positive");
  if (instance.edges.empty()) add(S::kInstance, -1, "at least one edge is required");
  auto in_range = [n](int v) { return v >= 0 && v < n; };

  for (std::size_t j = 0; j < instance.edges.size(); ++j) {
    const Edge& e = instance.edges[j];
    const int id = static_cast<int>(j);
    if (e.id != id) add(S::kEdge, id, "id must equal its position " + std::to_string(j));
    if (!in_range(e.from) || !in_range(e.to)) add(S::kEdge, id, "endpoint out of range");
    if (e.from == e.to) add(S::kEdge, id, "self-loops are not allowed");
    if (!(e.capacity > 0.0) || !std::isfinite(e.capacity)) {
      add(S::kEdge, id, "capacity must be > 0");
    }
    if (!(e.cost > 0.0) || !std::isfinite(e.cost)) add(S::kEdge, id, "cost must be > 0");
  }
  for (std::size_t i = 0; i < instance.demands.size(); ++i) {
    const Demand& d = instance.demands[i];
    const int id = static_cast<int>(i);
    if (d.id != id) add(S::kDemand, id, "id must equal its position " + std::to_string(i));
    if (!in_range(d.source) || !in_range(d.target)) {
      add(S::kDemand, id, "terminal out of range");
    }
    if (d.source == d.target) add(S::kDemand, id, "source must differ from target");
    if (!(d.value > 0.0) || !std::isfinite(d.value)) {
      add(S::kDemand, id, "value must be > 0");
    } else if (bound == DemandBound::kNormalized && d.value > 1.0) {
      add(S::kDemand, id, "demand exceeds 1 (run normalize)");
    }
  }
  return result;
}

NormalizedInstance normalize(const Instance& instance) {
  double largest = 0.0;
  for (const Demand& d : instance.demands) {
    if (!(d.value > 0.0)) {
      throw InvalidInstanceError("demand " + std::to_string(d.id) +
                                 ": value must be > 0");
    }
    largest = std::max(largest, d.value);
  }
  for (const Edge& e : instance.edges) {
    if (!(e.capacity > 0.0)) {
      throw InvalidInstanceError("edge " + std::to_string(e.id) +
                                 ": capacity must be > 0");
    }
  }
  NormalizedInstance out{instance, 1.0};
  if (largest <= 1.0) return out;
  out.scale = largest;
  for (Demand& d : out.instance.demands) d.value /= largest;
  for (Edge& e : out.instance.edges) e.capacity /= largest;
  return out;
}

Instance generate_random(const GeneratorParams& p) {
  if (p.nodes < 2) throw InvalidInstanceError("generator needs at least 2 nodes");
  if (!(p.edge_prob > 0.0 && p.edge_prob <= 1.0)) {
    throw InvalidInstanceError("edge probability must be in (0, 1]");
  }
  if (p.commodities < 1) throw InvalidInstanceError("commodity count must be >= 1");
  auto check_range = [](const Range& r, const char* what, bool unit) {
    if (!(r.lo > 0.0 && r.lo <= r.hi) || (unit && r.hi > 1.0)) {
      throw InvalidInstanceError(std::string(what) + " range is invalid");
    }
  };
  check_range(p.capacity, "capacity", false);
  check_range(p.cost, "cost", false);
  check_range(p.demand, "demand", true);

  Rng rng(p.seed);
  for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
    Instance g;
    g.node_count = p.nodes;
    for (int u = 0; u < p.nodes; ++u) {
      for (int v = 0; v < p.nodes; ++v) {
        if (u == v || !rng.bernoulli(p.edge_prob)) continue;
        Edge e;
        e.id = g.edge_count();
        e.from = u;
        e.to = v;
        e.capacity = rng.uniform(p.capacity.lo, p.capacity.hi);
        e.cost = rng.uniform(p.cost.lo, p.cost.hi);
        g.edges.push_back(e);
      }
    }
    if (g.edges.empty()) continue;
    const auto reach = reachability(g);
    std::vector<std::pair<int, int>> pairs;
    for (int s = 0; s < p.nodes; ++s) {
      for (int t = 0; t < p.nodes; ++t) {
        if (s != t && reach[s][t]) pairs.emplace_back(s, t);
      }
    }
    if (pairs.empty()) continue;
    for (int i = 0; i < p.commodities; ++i) {
      const auto [s, t] = pairs[rng.below(pairs.size())];
      g.demands.push_back({i, s, t, rng.uniform(p.demand.lo, p.demand.hi)});
    }
    return g;
  }
  throw GenerationFailedError("no connected terminal pair after " +
                              std::to_string(p.max_attempts) + " graph draws");
}

std::string to_json(const Instance& instance) {
  nlohmann::ordered_json doc;
  doc["version"] = kSchemaVersion;
  doc["nodes"] = instance.node_count;
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : instance.edges) {
    edges.push_back({{"from", e.from},
                     {"to", e.to},
                     {"capacity", e.capacity},
                     {"cost", e.cost}});
  }
  auto& demands = doc["demands"] = nlohmann::ordered_json::array();
  for (const Demand& d : instance.demands) {
    demands.push_back(
        {{"source", d.source}, {"target", d.target}, {"value", d.value}});
  }
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", e.what());
  }
  if (!doc.is_object()) throw ParseError("", "top level must be an object");
  const json& version = require(doc, "version", "");
  if (!version.is_number_integer()) throw ParseError("version", "expected an integer");
  if (version.get<long long>() != kSchemaVersion) {
    throw SchemaVersionError(version.get<long long>());
  }

  Instance out;
  out.node_count = read_int(doc, "nodes", "");
  const json& edges = read_array(doc, "edges");
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const std::string path = "edges[" + std::to_string(j) + "]";
    const json& e = edges[j];
    if (!e.is_object()) throw ParseError(path, "expected an object");
    out.edges.push_back({static_cast<int>(j), read_int(e, "from", path),
                         read_int(e, "to", path),
                         read_double(e, "capacity", path),
                         read_double(e, "cost", path)});
  }
  const json& demands = read_array(doc, "demands");
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const std::string path = "demands[" + std::to_string(i) + "]";
    const json& d = demands[i];
    if (!d.is_object()) throw ParseError(path, "expected an object");
    out.demands.push_back({static_cast<int>(i), read_int(d, "source", path),
                           read_int(d, "target", path),
                           read_double(d, "value", path)});
  }
  return out;
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(buffer.str());
}

void write_instance(const Instance& instance,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << to_json(instance);
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace safeflow
