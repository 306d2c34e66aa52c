// Copyright 2026 The tradius Authors
//
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tradius/dynamics.hpp"
#include "tradius/errors.hpp"
#include "tradius/failure_model.hpp"
#include "tradius/graph.hpp"
#include "tradius/parallel.hpp"
#include "tradius/radius.hpp"
#include "tradius/union_find.hpp"

namespace tradius {

using VertexId = std::uint32_t;

/// A (node, view) pair together with the patterns realizing it.
struct IFVertex {
  std::size_t node = 0;
  NodeSet view;
  /// Indices into the pattern class, ascending. Node is correct in each.
  std::vector<std::uint32_t> realizers;
};

/// Information-flow graph after `round` rounds over a pattern class.
///
/// Vertices are the distinct (correct node, view) pairs, sorted by node then
/// view bitmask. Two vertices are adjacent iff one pattern realizes both.
class IFGraph {
 public:
  const Graph& graph() const { return graph_; }
  int round() const { return round_; }
  const std::string& description() const { return description_; }
  std::size_t pattern_count() const { return configs_.size(); }
  std::span<const IFVertex> vertices() const { return vertices_; }
  /// Unordered pairs (a < b), sorted.
  std::span<const std::pair<VertexId, VertexId>> edges() const { return edges_; }

  /// Vertices of config(G, r, phi) for pattern index i, ascending.
  std::span<const VertexId> config(std::size_t i) const { return configs_.at(i); }

  std::optional<VertexId> find(std::size_t node, NodeSet view) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), std::pair{node, view},
                               [](const IFVertex& x, const std::pair<std::size_t, NodeSet>& k) {
                                 return std::pair{x.node, x.view} < k;
                               });
    if (it == vertices_.end() || it->node != node || it->view != view) return std::nullopt;
    return static_cast<VertexId>(it - vertices_.begin());
  }

 private:
  friend IFGraph build_if_graph(const Graph&, int, const PatternClass&, const Options&);

  Graph graph_ = Graph({1}, {});
  int round_ = 0;
  std::string description_;
  std::vector<IFVertex> vertices_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::vector<VertexId>> configs_;
};

inline IFGraph build_if_graph(const Graph& g, int r, const PatternClass& patterns,
                              const Options& opts = {}) {
  if (r < 0) throw ParameterError("round must be >= 0");
  const std::size_t n = g.size();
  const std::size_t count = patterns.members.size();
  if (count > std::numeric_limits<std::uint32_t>::max())
    throw ParameterError("pattern class too large");
  for (const auto& phi : patterns.members) phi.validate(g);

  // View of every node under every pattern; faulty nodes get an empty marker.
  std::vector<NodeSet> views(count * n);
  parallel_scan(count, opts.threads, 0, [&](int&, std::size_t begin, std::size_t end) {
    Flood sim(g, r);
    for (std::size_t i = begin; i < end; ++i) {
      sim.run(patterns.members[i]);
      for (std::size_t v = 0; v < n; ++v)
        if (patterns.members[i].is_correct(v)) views[i * n + v] = sim.known(v, r);
    }
  });

  IFGraph out;
  out.graph_ = g;
  out.round_ = r;
  out.description_ = patterns.description;

  std::vector<std::pair<std::size_t, NodeSet>> keys;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t v = 0; v < n; ++v)
      if (patterns.members[i].is_correct(v)) keys.emplace_back(v, views[i * n + v]);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  out.vertices_.reserve(keys.size());
  for (auto [v, w] : keys) out.vertices_.push_back({v, w, {}});

  out.configs_.resize(count);
  std::vector<std::uint64_t> packed;
  for (std::size_t i = 0; i < count; ++i) {
    auto& cfg = out.configs_[i];
    for (std::size_t v = 0; v < n; ++v) {
      if (!patterns.members[i].is_correct(v)) continue;
      const VertexId id = *out.find(v, views[i * n + v]);
      out.vertices_[id].realizers.push_back(static_cast<std::uint32_t>(i));
      cfg.push_back(id);
    }
    std::sort(cfg.begin(), cfg.end());
    for (std::size_t a = 0; a < cfg.size(); ++a)
      for (std::size_t b = a + 1; b < cfg.size(); ++b)
        if (cfg[a] != cfg[b])
          packed.push_back((std::uint64_t{cfg[a]} << 32) | cfg[b]);
  }
  std::sort(packed.begin(), packed.end());
  packed.erase(std::unique(packed.begin(), packed.end()), packed.end());
  out.edges_.reserve(packed.size());
  for (auto p : packed)
    out.edges_.emplace_back(static_cast<VertexId>(p >> 32), static_cast<VertexId>(p));
  return out;
}

/// Connected components of an IF graph, ordered by smallest vertex.
struct IFComponents {
  std::vector<std::vector<VertexId>> members;
  std::vector<std::size_t> component_of;
};

inline IFComponents connected_components_if(const IFGraph& ifg) {
  const std::size_t count = ifg.vertices().size();
  DisjointSets sets(count);
  for (auto [a, b] : ifg.edges()) sets.unite(a, b);
  IFComponents out;
  out.component_of.assign(count, 0);
  std::vector<std::size_t> root_to_comp(count, static_cast<std::size_t>(-1));
  for (std::size_t x = 0; x < count; ++x) {
    const std::size_t root = sets.find(x);
    if (root_to_comp[root] == static_cast<std::size_t>(-1)) {
      root_to_comp[root] = out.members.size();
      out.members.emplace_back();
    }
    out.component_of[x] = root_to_comp[root];
    out.members[root_to_comp[root]].push_back(static_cast<VertexId>(x));
  }
  return out;
}

/// Identifiers present in every view of the component.
inline NodeSet common_knowledge(const IFGraph& ifg, std::span<const VertexId> component) {
  NodeSet acc = ifg.graph().all();
  for (VertexId x : component) acc &= ifg.vertices()[x].view;
  return acc;
}

/// Whether v's pair is in every view of `component`, which must be one of
/// the connected components of `ifg`.
inline bool dominates(const IFGraph& ifg, NodeId v, std::span<const VertexId> component) {
  const std::size_t idx = ifg.graph().index(v);
  std::vector<VertexId> sorted(component.begin(), component.end());
  std::sort(sorted.begin(), sorted.end());
  const auto comps = connected_components_if(ifg);
  if (std::find(comps.members.begin(), comps.members.end(), sorted) == comps.members.end())
    throw ParameterError("vertex set is not a connected component of the IF graph");
  return common_knowledge(ifg, sorted).contains(idx);
}

/// A vertex of the component whose view lacks `missing`.
struct NonDomination {
  NodeId missing = 0;
  VertexId vertex = 0;
};

struct ComponentVerdict {
  std::size_t component = 0;
  /// Smallest dominating node, if any.
  std::optional<NodeId> dominator;
  /// When undominated: for every node, the first component vertex missing it.
  std::vector<NonDomination> witnesses;
};

struct DominationCertificate {
  std::vector<ComponentVerdict> components;
};

struct Solvability {
  bool solvable = true;
  DominationCertificate certificate;
};

inline Solvability solvability(const IFGraph& ifg, const IFComponents& comps) {
  const Graph& g = ifg.graph();
  Solvability out;
  for (std::size_t c = 0; c < comps.members.size(); ++c) {
    ComponentVerdict verdict{c, std::nullopt, {}};
    const NodeSet common = common_knowledge(ifg, comps.members[c]);
    if (!common.empty()) {
      verdict.dominator = g.id(common.front());
    } else {
      out.solvable = false;
      for (std::size_t v = 0; v < g.size(); ++v)
        for (VertexId x : comps.members[c])
          if (!ifg.vertices()[x].view.contains(v)) {
            verdict.witnesses.push_back({g.id(v), x});
            break;
          }
    }
    out.certificate.components.push_back(std::move(verdict));
  }
  return out;
}

/// Oblivious consensus is solvable in r rounds under `patterns` iff every IF
/// component has a dominating node.
inline Solvability consensus_solvable(const Graph& g, int r, const PatternClass& patterns,
                                      const Options& opts = {}) {
  const IFGraph ifg = build_if_graph(g, r, patterns, opts);
  return solvability(ifg, connected_components_if(ifg));
}

inline std::string view_label(const Graph& g, std::size_t node, NodeSet view) {
  std::string s = std::to_string(g.id(node)) + ":{";
  bool first = true;
  for (std::size_t u : view) {
    if (!first) s += ',';
    s += std::to_string(g.id(u));
    first = false;
  }
  return s + "}";
}

inline Json vertex_to_json(const IFGraph& ifg, VertexId x) {
  const auto& vx = ifg.vertices()[x];
  Json j;
  j["id"] = x;
  j["node"] = ifg.graph().id(vx.node);
  j["view"] = ifg.graph().to_ids(vx.view);
  return j;
}

inline Json certificate_to_json(const IFGraph& ifg, const DominationCertificate& cert) {
  Json out = Json::array();
  for (const auto& v : cert.components) {
    Json j;
    j["component"] = v.component;
    if (v.dominator) {
      j["dominator"] = *v.dominator;
    } else {
      j["dominator"] = nullptr;
      Json w = Json::array();
      for (const auto& miss : v.witnesses) {
        Json m;
        m["missing"] = miss.missing;
        m["vertex"] = vertex_to_json(ifg, miss.vertex);
        w.push_back(std::move(m));
      }
      j["witnesses"] = std::move(w);
    }
    out.push_back(std::move(j));
  }
  return out;
}

/// Serializes an IF graph as "dot" (components as clusters) or "json".
inline std::string export_if_graph(const IFGraph& ifg, std::string_view format) {
  const Graph& g = ifg.graph();
  const auto comps = connected_components_if(ifg);
  if (format == "dot") {
    std::ostringstream os;
    os << "graph IF {\n";
    os << "  label=\"IF round " << ifg.round() << " " << ifg.description() << "\";\n";
    for (std::size_t c = 0; c < comps.members.size(); ++c) {
      os << "  subgraph cluster_" << c << " {\n";
      os << "    label=\"component " << c << "\";\n";
      for (VertexId x : comps.members[c]) {
        const auto& vx = ifg.vertices()[x];
        os << "    v" << x << " [label=\"" << view_label(g, vx.node, vx.view) << "\"];\n";
      }
      os << "  }\n";
    }
    for (auto [a, b] : ifg.edges()) os << "  v" << a << " -- v" << b << ";\n";
    os << "}\n";
    return os.str();
  }
  if (format == "json") {
    Json j;
    j["round"] = ifg.round();
    j["patterns"] = ifg.description();
    j["pattern_count"] = ifg.pattern_count();
    Json vs = Json::array();
    for (VertexId x = 0; x < ifg.vertices().size(); ++x) {
      Json v = vertex_to_json(ifg, x);
      v["component"] = comps.component_of[x];
      v["realizers"] = ifg.vertices()[x].realizers;
      vs.push_back(std::move(v));
    }
    j["vertices"] = std::move(vs);
    Json es = Json::array();
    for (auto [a, b] : ifg.edges()) es.push_back(Json::array({a, b}));
    j["edges"] = std::move(es);
    j["components"] = comps.members;
    return j.dump() + "\n";
  }
  throw ParameterError("unsupported export format \"" + std::string(format) +
                       "\" (expected dot or json)");
}

}  // namespace tradius
