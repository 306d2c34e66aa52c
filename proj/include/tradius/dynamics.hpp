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
#include <optional>
#include <string>
#include <vector>

#include "tradius/errors.hpp"
#include "tradius/failure_model.hpp"
#include "tradius/graph.hpp"
#include "tradius/node_set.hpp"

namespace tradius {

/// A round count, or nullopt for "never" (unreachable / infinite eccentricity).
using Rounds = std::optional<int>;

/// Rounds after which flooding can no longer change any view: shortest
/// causal paths are simple, so they have at most n-1 hops.
inline int settle_rounds(const Graph& g) { return static_cast<int>(g.size()) - 1; }

/// Identifiers whose pair `owner` holds after `round` rounds.
struct View {
  NodeId owner = 0;
  int round = 0;
  std::vector<NodeId> known;

  bool operator==(const View&) const = default;
};

/// Full-information flooding under one failure pattern.
///
/// In round r every node that has not crashed before r sends its round r-1
/// knowledge to its neighbors, except that a node crashing at round r skips
/// its blocked neighbors. A node crashing at round r still receives during r
/// and is inert afterwards. A Flood object can be re-run on further patterns
/// to reuse its buffers.
class Flood {
 public:
  Flood(const Graph& g, int rounds) : graph_(&g), rounds_(rounds) {
    if (rounds < 0) throw ParameterError("rounds must be >= 0");
    const std::size_t n = g.size();
    known_.assign(static_cast<std::size_t>(rounds + 1) * n, NodeSet{});
    arrival_.assign(n * n, -1);
    crash_round_.assign(n, 0);
    blocked_.assign(n, NodeSet{});
  }

  Flood(const Graph& g, const FailurePattern& phi, int rounds) : Flood(g, rounds) { run(phi); }

  void run(const FailurePattern& phi) {
    const Graph& g = *graph_;
    const std::size_t n = g.size();
    std::fill(crash_round_.begin(), crash_round_.end(), 0);
    for (const auto& e : phi.entries()) {
      crash_round_[e.node] = e.round;
      blocked_[e.node] = e.blocked;
    }
    faulty_ = phi.faulty();

    for (std::size_t v = 0; v < n; ++v) known_[v] = NodeSet::single(v);
    for (int r = 1; r <= rounds_; ++r) {
      const NodeSet* prev = &known_[static_cast<std::size_t>(r - 1) * n];
      NodeSet* cur = &known_[static_cast<std::size_t>(r) * n];
      for (std::size_t v = 0; v < n; ++v) cur[v] = prev[v];
      for (std::size_t u = 0; u < n; ++u) {
        const int f = crash_round_[u];
        if (f != 0 && f < r) continue;
        NodeSet targets = g.neighbors(u);
        if (f == r) targets -= blocked_[u];
        for (std::size_t w : targets) {
          const int fw = crash_round_[w];
          if (fw == 0 || fw >= r) cur[w] |= prev[u];
        }
      }
    }

    std::fill(arrival_.begin(), arrival_.end(), std::int8_t{-1});
    for (std::size_t w = 0; w < n; ++w) arrival_[w * n + w] = 0;
    for (int r = 1; r <= rounds_; ++r) {
      for (std::size_t w = 0; w < n; ++w) {
        const NodeSet fresh = known_[static_cast<std::size_t>(r) * n + w] -
                              known_[static_cast<std::size_t>(r - 1) * n + w];
        for (std::size_t s : fresh) arrival_[s * n + w] = static_cast<std::int8_t>(r);
      }
    }
  }

  const Graph& graph() const { return *graph_; }
  int rounds() const { return rounds_; }
  NodeSet faulty() const { return faulty_; }
  NodeSet correct() const { return graph_->all() - faulty_; }
  /// 0 for correct nodes.
  int crash_round(std::size_t node) const { return crash_round_[node]; }

  /// Whether view(node, r) is meaningful: r within the simulated horizon and
  /// the node has not crashed by round r.
  bool reported(std::size_t node, int r) const {
    if (r < 0 || r > rounds_) return false;
    const int f = crash_round_[node];
    return f == 0 || r < f;
  }

  NodeSet view(std::size_t node, int r) const {
    if (!reported(node, r))
      throw ParameterError("no view for node " + std::to_string(graph_->id(node)) +
                           " at round " + std::to_string(r));
    return known(node, r);
  }

  /// Raw knowledge, including what a crashing node received during its crash round.
  NodeSet known(std::size_t node, int r) const {
    return known_[static_cast<std::size_t>(r) * graph_->size() + node];
  }

  /// First round by which `target` holds the pair of `source`.
  Rounds arrival(std::size_t source, std::size_t target) const {
    const std::int8_t a = arrival_[source * graph_->size() + target];
    if (a < 0) return std::nullopt;
    return a;
  }

  /// Rounds for `source` to reach every node of `targets`; nullopt if some
  /// target is never reached. 0 for an empty target set.
  Rounds ecc(std::size_t source, NodeSet targets) const {
    int worst = 0;
    for (std::size_t w : targets) {
      const std::int8_t a = arrival_[source * graph_->size() + w];
      if (a < 0) return std::nullopt;
      worst = std::max<int>(worst, a);
    }
    return worst;
  }

  /// Whether some node of `targets` ever hears from `source`.
  bool reaches_any(std::size_t source, NodeSet targets) const {
    for (std::size_t w : targets)
      if (arrival_[source * graph_->size() + w] >= 0) return true;
    return false;
  }

 private:
  const Graph* graph_;
  int rounds_;
  std::vector<NodeSet> known_;
  std::vector<std::int8_t> arrival_;
  std::vector<int> crash_round_;
  std::vector<NodeSet> blocked_;
  NodeSet faulty_;
};

/// Every reported view up to `rounds`, ordered by (owner, round).
inline std::vector<View> flood(const Graph& g, const FailurePattern& phi, int rounds) {
  Flood sim(g, phi, rounds);
  std::vector<View> out;
  for (std::size_t v = 0; v < g.size(); ++v)
    for (int r = 0; r <= rounds && sim.reported(v, r); ++r)
      out.push_back({g.id(v), r, g.to_ids(sim.view(v, r))});
  return out;
}

inline Rounds causal_distance(const Graph& g, const FailurePattern& phi, NodeId source,
                              NodeId target) {
  const std::size_t s = g.index(source);
  const std::size_t w = g.index(target);
  if (s == w) return 0;
  Flood sim(g, phi, settle_rounds(g));
  return sim.arrival(s, w);
}

/// Rounds for v's broadcast to reach every correct node; nullopt if it never does.
inline Rounds ecc_global(const Graph& g, const FailurePattern& phi, NodeId v) {
  Flood sim(g, phi, settle_rounds(g));
  return sim.ecc(g.index(v), sim.correct());
}

/// Rounds for v's broadcast to cover component `c` of comp(G, phi).
inline Rounds ecc_component(const Graph& g, const FailurePattern& phi, NodeId v, NodeSet c) {
  if (!components(g, phi).contains(c))
    throw ParameterError("set is not a connected component of the surviving graph");
  Flood sim(g, phi, settle_rounds(g));
  return sim.ecc(g.index(v), c);
}

}  // namespace tradius
