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


// Exhaustive invariant checks. Each returns an empty string when the
// property holds and a description of the first violation otherwise.

#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "tradius/tradius.hpp"

namespace checks {

using namespace tradius;

constexpr std::uint64_t kFloodBudget = 2000000;
constexpr std::uint64_t kIFBudget = 2000000;

/// Every (graph, t) with n <= max_n whose pattern space, enumerated up to
/// round n + horizon_extra, has at most `budget` members.
inline std::vector<std::tuple<std::string, Graph, int>> cases(std::size_t max_n,
                                                               std::uint64_t budget,
                                                               int horizon_extra = 0) {
  std::vector<std::tuple<std::string, Graph, int>> out;
  for (auto& [name, g] : oracle::small_graphs(max_n))
    for (int t = 0; t < static_cast<int>(g.size()); ++t)
      if (oracle::pattern_count_formula(g, t, static_cast<int>(g.size()) + horizon_extra) <= budget)
        out.emplace_back(name, g, t);
  return out;
}

inline std::string where(const Graph& g, const FailurePattern& phi) {
  return pattern_to_json(g, phi).dump();
}

/// Below connectivity, a source reaches every correct node iff it reaches one.
inline std::string all_or_nothing_broadcast(const Graph& g, int t) {
  if (t >= connectivity(g)) return {};
  Flood sim(g, settle_rounds(g));
  for (const auto& phi : enumerate_patterns(g, t, static_cast<int>(g.size()))) {
    sim.run(phi);
    for (std::size_t v = 0; v < g.size(); ++v)
      if (sim.ecc(v, sim.correct()).has_value() != sim.reaches_any(v, sim.correct()))
        return "node " + std::to_string(g.id(v)) + " under " + where(g, phi);
  }
  return {};
}

/// Per component, a source reaches all of it or none of it.
inline std::string all_or_nothing_components(const Graph& g, int t) {
  Flood sim(g, settle_rounds(g));
  for (const auto& phi : enumerate_patterns(g, t, static_cast<int>(g.size()))) {
    sim.run(phi);
    for (NodeSet c : components(g, phi).components)
      for (std::size_t v = 0; v < g.size(); ++v)
        if (sim.ecc(v, c).has_value() != sim.reaches_any(v, c))
          return "node " + std::to_string(g.id(v)) + " under " + where(g, phi);
  }
  return {};
}

/// No (pattern, component) pair is missed by every node.
inline std::string omega_infinity_intersection_empty(const Graph& g, int t) {
  Flood sim(g, settle_rounds(g));
  for (const auto& phi : enumerate_patterns(g, t, static_cast<int>(g.size()))) {
    sim.run(phi);
    for (NodeSet c : components(g, phi).components) {
      bool someone = false;
      for (std::size_t v = 0; v < g.size() && !someone; ++v) someone = sim.ecc(v, c).has_value();
      if (!someone) return "pair unreached by all nodes under " + where(g, phi);
    }
  }
  return {};
}

inline std::string naive_bound_below_radius(const Graph& g, int t) {
  if (t >= connectivity(g)) return {};
  const int naive = naive_lower_bound(g, t);
  const int R = radius(g, t).value;
  if (naive > R) return "naive " + std::to_string(naive) + " > radius " + std::to_string(R);
  return {};
}

/// Each pattern's configuration is a clique lying inside one component.
inline std::string configs_are_connected_cliques(const Graph& g, int t, int r) {
  const PatternClass cls = all_patterns(g, t);
  const IFGraph ifg = build_if_graph(g, r, cls);
  const IFComponents comps = connected_components_if(ifg);
  const auto edges = ifg.edges();
  auto linked = [&](VertexId a, VertexId b) {
    return std::binary_search(edges.begin(), edges.end(), std::pair{std::min(a, b), std::max(a, b)});
  };
  Flood sim(g, r);
  for (std::size_t i = 0; i < cls.members.size(); ++i) {
    sim.run(cls.members[i]);
    std::vector<VertexId> config;
    for (std::size_t v : sim.correct()) {
      const auto x = ifg.find(v, sim.view(v, r));
      if (!x) return "missing vertex under " + where(g, cls.members[i]);
      config.push_back(*x);
    }
    for (std::size_t a = 0; a < config.size(); ++a) {
      if (comps.component_of[config[a]] != comps.component_of[config[0]])
        return "configuration split under " + where(g, cls.members[i]);
      for (std::size_t b = a + 1; b < config.size(); ++b)
        if (!linked(config[a], config[b])) return "non-clique under " + where(g, cls.members[i]);
    }
  }
  return {};
}

/// Solvable at r implies solvable at r+1, for r up to n.
inline std::string solvability_monotone(const Graph& g, int t) {
  const PatternClass cls = all_patterns(g, t);
  bool before = false;
  for (int r = 0; r <= static_cast<int>(g.size()); ++r) {
    const bool now = consensus_solvable(g, r, cls).solvable;
    if (before && !now) return "solvable at " + std::to_string(r - 1) + " but not at " + std::to_string(r);
    before = now;
  }
  return {};
}

/// Crash rounds past n are indistinguishable from crash round n: views up
/// to round n-1, components and reachability agree, and the radius is the
/// same whether patterns are enumerated up to round n or n+2.
inline std::string horizon_canonical(const Graph& g, int t) {
  const int n = static_cast<int>(g.size());
  Flood wide(g, n - 1);
  Flood cut(g, n - 1);
  Flood wide_all(g, n + 2);
  Flood cut_all(g, n + 2);
  for (const auto& psi : enumerate_patterns(g, t, n + 2)) {
    std::vector<CrashEntry> entries(psi.entries().begin(), psi.entries().end());
    for (auto& e : entries) e.round = std::min(e.round, n);
    const FailurePattern phi(entries);
    wide.run(psi);
    cut.run(phi);
    for (std::size_t v = 0; v < g.size(); ++v)
      for (int r = 0; r <= n - 1; ++r)
        if (wide.reported(v, r) && cut.reported(v, r) && wide.view(v, r) != cut.view(v, r))
          return "view differs under " + where(g, psi);
    if (!(components(g, psi) == components(g, phi))) return "components differ";
    wide_all.run(psi);
    cut_all.run(phi);
    for (NodeSet c : components(g, psi).components)
      for (std::size_t v = 0; v < g.size(); ++v)
        if (wide_all.ecc(v, c) != cut_all.ecc(v, c))
          return "eccentricity differs under " + where(g, psi);
  }
  const auto a = radius(g, t, {.horizon = n});
  const auto b = radius(g, t, {.horizon = n + 2});
  if (a.value != b.value || a.node_ecc != b.node_ecc) return "radius differs across horizons";
  return {};
}

}  // namespace checks
