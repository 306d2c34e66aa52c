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
#include <string>
#include <utility>
#include <vector>

#include "tradius/dynamics.hpp"
#include "tradius/errors.hpp"
#include "tradius/failure_model.hpp"
#include "tradius/graph.hpp"
#include "tradius/parallel.hpp"

namespace tradius {

/// A finite, explicitly listed set of failure patterns.
struct PatternClass {
  std::string description;
  std::vector<FailurePattern> members;
};

/// A (pattern, component) pair; `component` belongs to comp(G, pattern).
struct OmegaPair {
  FailurePattern pattern;
  NodeSet component;

  bool operator==(const OmegaPair&) const = default;
};

struct OmegaSet {
  std::vector<OmegaPair> pairs;
};

/// Flood every pattern of `space` for `rounds` rounds and fold the results.
///
/// `fn(state, index, pattern, flood, components)` sees each pattern exactly
/// once; per-worker states come back unmerged.
template <class State, class Fn>
std::vector<State> scan_patterns(const PatternSpace& space, int rounds, unsigned threads,
                                 const State& init, Fn&& fn) {
  return parallel_scan(
      static_cast<std::size_t>(space.size()), threads, init,
      [&](State& state, std::size_t begin, std::size_t end) {
        Flood sim(space.graph(), rounds);
        for (std::size_t i = begin; i < end; ++i) {
          const FailurePattern phi = space.at(i);
          sim.run(phi);
          const auto& comps = space.block_of(i).components;
          fn(state, static_cast<std::uint64_t>(i), phi, sim, std::span<const NodeSet>(comps));
        }
      });
}

/// Whether t < kappa(G), i.e. failures can never disconnect the graph.
inline bool below_connectivity(const Graph& g, int t) { return t < connectivity(g); }

inline void require_below_connectivity(const Graph& g, int t, const char* what) {
  if (!below_connectivity(g, t))
    throw RegimeError(std::string(what) + " requires t < kappa(G) = " +
                      std::to_string(connectivity(g)) + " (t=" + std::to_string(t) +
                      "); use the component-wise (Omega) analyses instead");
}

/// The canonical class of all patterns with at most t failures.
inline PatternClass all_patterns(const Graph& g, int t, const Options& opts = {}) {
  const int te = clamp_t(g, t, opts.warnings);
  return {"all(t=" + std::to_string(te) + ")",
          enumerate_patterns(g, te, resolve_horizon(g, opts.horizon))};
}

/// Patterns in which v's broadcast reaches every correct node. Needs t < kappa(G).
inline PatternClass phi_star(const Graph& g, int t, NodeId v, const Options& opts = {}) {
  const int te = clamp_t(g, t, opts.warnings);
  require_below_connectivity(g, te, "phi_star");
  const std::size_t src = g.index(v);
  PatternSpace space(g, te, resolve_horizon(g, opts.horizon));
  std::vector<char> keep(static_cast<std::size_t>(space.size()), 0);
  scan_patterns(space, settle_rounds(g), opts.threads, 0,
                [&](int&, std::uint64_t i, const FailurePattern&, const Flood& sim,
                    std::span<const NodeSet>) {
                  keep[i] = sim.ecc(src, sim.correct()).has_value() ? 1 : 0;
                });
  PatternClass out{"phi_star(v=" + std::to_string(v) + ",t=" + std::to_string(te) + ")", {}};
  for (std::uint64_t i = 0; i < space.size(); ++i)
    if (keep[i]) out.members.push_back(space.at(i));
  return out;
}

/// Splits Omega_all into (Omega*_v, Omega^inf_v) by whether v's broadcast
/// covers the component.
inline std::pair<OmegaSet, OmegaSet> omega_partition(const Graph& g, int t, NodeId v,
                                                     const Options& opts = {}) {
  const int te = clamp_t(g, t, opts.warnings);
  const std::size_t src = g.index(v);
  PatternSpace space(g, te, resolve_horizon(g, opts.horizon));
  Flood sim(g, settle_rounds(g));
  std::pair<OmegaSet, OmegaSet> out;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const FailurePattern phi = space.at(i);
    sim.run(phi);
    for (NodeSet c : space.block_of(i).components) {
      auto& side = sim.ecc(src, c) ? out.first : out.second;
      side.pairs.push_back({phi, c});
    }
  }
  return out;
}

/// Largest finite ecc(v, phi, C) over the pairs of `s`; 0 when none is finite.
inline int ecc_over(const Graph& g, NodeId v, const OmegaSet& s) {
  const std::size_t src = g.index(v);
  Flood sim(g, settle_rounds(g));
  int worst = 0;
  for (const auto& [phi, c] : s.pairs) {
    sim.run(phi);
    if (auto e = sim.ecc(src, c)) worst = std::max(worst, *e);
  }
  return worst;
}

struct RadiusResult {
  int value = 0;
  NodeId witness = 0;
  /// Effective t after clamping to n-1.
  int t = 0;
  int kappa = 0;
  bool below_connectivity = true;
  std::uint64_t patterns = 0;
  /// ecc(v, Omega_all) per node index.
  std::vector<int> node_ecc;
  /// Nodes whose ecc fell back to the empty-max value 0 (no finite pair at all).
  std::vector<NodeId> empty_max;
};

/// radius(G, t) = min over v of ecc(v, Omega_all), smallest-id witness.
///
/// The component-wise formulation is used in both regimes; for t < kappa it
/// coincides with the min-max over Phi*_v (see radius_phi_star).
inline RadiusResult radius(const Graph& g, int t, const Options& opts = {}) {
  const std::size_t n = g.size();
  RadiusResult res;
  res.t = clamp_t(g, t, opts.warnings);
  res.kappa = connectivity(g);
  res.below_connectivity = res.t < res.kappa;
  PatternSpace space(g, res.t, resolve_horizon(g, opts.horizon));
  res.patterns = space.size();

  struct Acc {
    std::vector<int> worst;
    std::vector<char> finite;
  };
  const Acc init{std::vector<int>(n, 0), std::vector<char>(n, 0)};
  auto parts = scan_patterns(space, settle_rounds(g), opts.threads, init,
                             [&](Acc& acc, std::uint64_t, const FailurePattern&,
                                 const Flood& sim, std::span<const NodeSet> comps) {
                               for (NodeSet c : comps)
                                 for (std::size_t v = 0; v < n; ++v)
                                   if (auto e = sim.ecc(v, c)) {
                                     acc.worst[v] = std::max(acc.worst[v], *e);
                                     acc.finite[v] = 1;
                                   }
                             });
  res.node_ecc.assign(n, 0);
  std::vector<char> finite(n, 0);
  for (const auto& p : parts)
    for (std::size_t v = 0; v < n; ++v) {
      res.node_ecc[v] = std::max(res.node_ecc[v], p.worst[v]);
      finite[v] = finite[v] || p.finite[v];
    }
  res.value = std::numeric_limits<int>::max();
  for (std::size_t v = 0; v < n; ++v) {
    if (!finite[v]) res.empty_max.push_back(g.id(v));
    if (res.node_ecc[v] < res.value) {
      res.value = res.node_ecc[v];
      res.witness = g.id(v);
    }
  }
  return res;
}

/// min over v of max over Phi*_v of ecc(v, phi), the global-eccentricity
/// formulation. Needs t < kappa(G).
inline int radius_phi_star(const Graph& g, int t, const Options& opts = {}) {
  const std::size_t n = g.size();
  const int te = clamp_t(g, t, opts.warnings);
  require_below_connectivity(g, te, "radius_phi_star");
  PatternSpace space(g, te, resolve_horizon(g, opts.horizon));
  auto parts = scan_patterns(space, settle_rounds(g), opts.threads, std::vector<int>(n, 0),
                             [&](std::vector<int>& worst, std::uint64_t, const FailurePattern&,
                                 const Flood& sim, std::span<const NodeSet>) {
                               for (std::size_t v = 0; v < n; ++v)
                                 if (auto e = sim.ecc(v, sim.correct()))
                                   worst[v] = std::max(worst[v], *e);
                             });
  int best = std::numeric_limits<int>::max();
  for (std::size_t v = 0; v < n; ++v) {
    int worst = 0;
    for (const auto& p : parts) worst = std::max(worst, p[v]);
    best = std::min(best, worst);
  }
  return best;
}

/// max over phi of min over v of ecc(v, phi), infinite eccentricities skipped.
/// Needs t < kappa(G).
inline int naive_lower_bound(const Graph& g, int t, const Options& opts = {}) {
  const std::size_t n = g.size();
  const int te = clamp_t(g, t, opts.warnings);
  require_below_connectivity(g, te, "naive_lower_bound");
  PatternSpace space(g, te, resolve_horizon(g, opts.horizon));
  auto parts = scan_patterns(space, settle_rounds(g), opts.threads, 0,
                             [&](int& best, std::uint64_t, const FailurePattern&,
                                 const Flood& sim, std::span<const NodeSet>) {
                               int fastest = std::numeric_limits<int>::max();
                               for (std::size_t v = 0; v < n; ++v)
                                 if (auto e = sim.ecc(v, sim.correct()))
                                   fastest = std::min(fastest, *e);
                               if (fastest != std::numeric_limits<int>::max())
                                 best = std::max(best, fastest);
                             });
  return *std::max_element(parts.begin(), parts.end());
}

}  // namespace tradius
