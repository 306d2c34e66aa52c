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

#include "tradius/dynamics.hpp"
#include "tradius/errors.hpp"
#include "tradius/failure_model.hpp"
#include "tradius/graph.hpp"
#include "tradius/if_graph.hpp"
#include "tradius/parallel.hpp"
#include "tradius/radius.hpp"

namespace tradius {

/// One application of the successor operation to the pivot's crash entry.
struct SuccessorStep {
  FailurePattern before;
  FailurePattern after;
  NodeId pivot = 0;
  /// 1: blocked set all faulty; 2: exactly one correct member; 3: two or more.
  int rule = 0;
  /// The correct neighbor whose view may differ at the pivot's crash round.
  NodeId witness = 0;
};

namespace detail {

inline std::string pattern_text(const Graph& g, const FailurePattern& phi) {
  return pattern_to_json(g, phi).dump();
}

inline NodeSet round_one_crashers(const FailurePattern& phi) {
  NodeSet out;
  for (const auto& e : phi.entries())
    if (e.round == 1) out.insert(e.node);
  return out;
}

inline FailurePattern worst_pattern_at(const Graph& g, int t, NodeId v, int R, int horizon) {
  const std::size_t src = g.index(v);
  PatternSpace space(g, t, horizon);
  Flood sim(g, settle_rounds(g));
  std::optional<FailurePattern> found;
  for (std::uint64_t i = 0; i < space.size() && !found; ++i) {
    FailurePattern psi = space.at(i);
    sim.run(psi);
    const Rounds e = sim.ecc(src, sim.correct());
    if (e && *e >= R) found = std::move(psi);
  }
  if (!found)
    throw ConsistencyError("no pattern in Phi*_" + std::to_string(v) + " reaches eccentricity " +
                           std::to_string(R));

  FailurePattern phi = *found;
  for (const auto& e : found->entries())
    if (e.node != src && e.round == 1) phi = phi.with(clean_crash(g, e.node, 2));

  sim.run(phi);
  const Rounds e = sim.ecc(src, sim.correct());
  if (!e || *e < R)
    throw ConsistencyError("delaying round-1 crashes changed the eccentricity of node " +
                           std::to_string(v) + " in " + pattern_text(g, phi));
  return phi;
}

}  // namespace detail

/// Worst-case pattern for v: v broadcasts, needs at least radius(G, t) rounds,
/// and no other node crashes at round 1. The first such pattern in canonical
/// order, after delaying other round-1 crashes to clean round-2 crashes.
inline FailurePattern worst_pattern(const Graph& g, int t, NodeId v, const Options& opts = {}) {
  const int te = clamp_t(g, t, opts.warnings);
  require_below_connectivity(g, te, "worst_pattern");
  g.index(v);
  return detail::worst_pattern_at(g, te, v, radius(g, te, opts).value,
                                  resolve_horizon(g, opts.horizon));
}

/// Definition-7 successor of phi with respect to `pivot`, which must crash
/// last. Witness choices take the smallest identifier.
inline SuccessorStep successor(const Graph& g, const FailurePattern& phi, NodeId pivot) {
  phi.validate(g);
  const std::size_t u = g.index(pivot);
  const CrashEntry* entry = phi.find(u);
  if (entry == nullptr)
    throw ParameterError("successor pivot " + std::to_string(pivot) + " does not crash");
  if (entry->round != phi.last_round())
    throw ParameterError("successor pivot " + std::to_string(pivot) + " does not crash last");

  const NodeSet correct = g.all() - phi.faulty();
  const NodeSet blocked_correct = entry->blocked & correct;
  SuccessorStep step{phi, phi, pivot, 0, 0};
  CrashEntry next = *entry;
  if (blocked_correct.empty()) {
    const NodeSet candidates = g.neighbors(u) & correct;
    if (candidates.empty())
      throw ConsistencyError("crashing node " + std::to_string(pivot) + " has no correct neighbor");
    const std::size_t w = candidates.front();
    step.rule = 1;
    step.witness = g.id(w);
    next.round += 1;
    next.blocked = g.neighbors(u);
    next.blocked.erase(w);
  } else if (blocked_correct.size() == 1) {
    step.rule = 2;
    step.witness = g.id(blocked_correct.front());
    next.round += 1;
    next.blocked = g.neighbors(u);
  } else {
    const std::size_t w = blocked_correct.front();
    step.rule = 3;
    step.witness = g.id(w);
    next.blocked.erase(w);
  }
  step.after = phi.with(next);
  return step;
}

/// A consecutive pair in a chain: a successor step or the removal of a crasher.
struct ChainLink {
  NodeId pivot = 0;
  /// Successor rule 1-3, or 0 when the pivot is made correct.
  int rule = 0;
  std::optional<NodeId> witness;
  /// Smallest node correct in both patterns with equal views at round R-1.
  NodeId shared = 0;
};

struct Chain {
  NodeId target = 0;
  int radius = 0;
  /// Crashers of the start pattern in processing order.
  std::vector<NodeId> order;
  /// patterns.front() is the worst pattern, patterns.back() the failure-free one.
  std::vector<FailurePattern> patterns;
  /// links[j] joins patterns[j] and patterns[j+1].
  std::vector<ChainLink> links;
};

namespace detail {

inline std::optional<NodeId> shared_view_node(const Graph& g, const FailurePattern& a,
                                              const FailurePattern& b, int rounds) {
  Flood fa(g, a, rounds);
  Flood fb(g, b, rounds);
  for (std::size_t w : g.all() - a.faulty() - b.faulty())
    if (fa.view(w, rounds) == fb.view(w, rounds)) return g.id(w);
  return std::nullopt;
}

}  // namespace detail

/// Indistinguishability chain from `start` to the failure-free pattern at
/// round R-1. Every link is checked; a failure throws ConsistencyError naming
/// the node and step.
inline Chain chain_from(const Graph& g, NodeId v, const FailurePattern& start, int R) {
  if (R < 1) throw ParameterError("chains need radius >= 1");
  const int horizon = std::max(static_cast<int>(g.size()), R + 1);
  Chain chain;
  chain.target = v;
  chain.radius = R;
  chain.patterns.push_back(start);

  std::vector<CrashEntry> crashers(start.entries().begin(), start.entries().end());
  std::stable_sort(crashers.begin(), crashers.end(),
                   [](const CrashEntry& a, const CrashEntry& b) {
                     if (a.round != b.round) return a.round > b.round;
                     return a.node < b.node;
                   });
  for (const auto& e : crashers) chain.order.push_back(g.id(e.node));

  auto fail = [&](const std::string& what) {
    throw ConsistencyError("chain for node " + std::to_string(v) + ", step " +
                           std::to_string(chain.links.size()) + ": " + what);
  };
  auto link = [&](const FailurePattern& next, ChainLink l) {
    const FailurePattern& prev = chain.patterns.back();
    const auto shared = detail::shared_view_node(g, prev, next, R - 1);
    if (!shared)
      fail("no correct node keeps its view at round " + std::to_string(R - 1) + " between " +
           detail::pattern_text(g, prev) + " and " + detail::pattern_text(g, next));
    if (next.last_round() > horizon) fail("crash round beyond the chain horizon");
    l.shared = *shared;
    chain.links.push_back(l);
    chain.patterns.push_back(next);
  };

  FailurePattern current = start;
  for (std::size_t i = 0; i < crashers.size(); ++i) {
    const std::size_t u = crashers[i].node;
    while (current.find(u)->round < R) {
      const SuccessorStep step = successor(g, current, g.id(u));
      const NodeSet r1_before = detail::round_one_crashers(step.before);
      const NodeSet r1_after = detail::round_one_crashers(step.after);
      if (r1_after.size() > 1) fail("more than one node crashes at round 1");
      if (!r1_before.contains(r1_after)) fail("a new node crashes at round 1");
      link(step.after, {g.id(u), step.rule, step.witness, 0});
      current = step.after;
    }
    current = current.without(u);
    link(current, {g.id(u), 0, std::nullopt, 0});
  }
  if (!current.empty()) fail("chain does not end at the failure-free pattern");
  return chain;
}

inline Chain build_chain(const Graph& g, int t, NodeId v, const Options& opts = {}) {
  const int te = clamp_t(g, t, opts.warnings);
  require_below_connectivity(g, te, "build_chain");
  const int R = radius(g, te, opts).value;
  return chain_from(g, v, detail::worst_pattern_at(g, te, v, R, resolve_horizon(g, opts.horizon)),
                    R);
}

struct LowerBoundCertificate {
  int radius = 0;
  int t = 0;
  /// IF(G, radius-1, all patterns) and its components.
  std::size_t if_vertices = 0;
  std::size_t if_components = 0;
  /// Component holding config(failure-free, radius-1).
  std::size_t component = 0;
  std::vector<Chain> chains;
  /// Per node (same order as chains): a vertex of config(worst pattern) whose view misses it.
  std::vector<IFVertex> witnesses;
  /// consensus_solvable(G, radius-1, all patterns) as computed independently.
  bool solvable_below = false;
};

/// Certifies that no oblivious algorithm solves consensus in radius-1 rounds.
inline LowerBoundCertificate certify_lower_bound(const Graph& g, int t, const Options& opts = {}) {
  const int te = clamp_t(g, t, opts.warnings);
  require_below_connectivity(g, te, "certify_lower_bound");
  const RadiusResult rad = radius(g, te, opts);
  const int R = rad.value;
  if (R < 1) throw ParameterError("certify_lower_bound needs radius >= 1");

  LowerBoundCertificate cert;
  cert.radius = R;
  cert.t = te;

  const PatternClass all = all_patterns(g, te, opts);
  const IFGraph ifg = build_if_graph(g, R - 1, all, opts);
  const IFComponents comps = connected_components_if(ifg);
  cert.if_vertices = ifg.vertices().size();
  cert.if_components = comps.members.size();

  auto component_of = [&](const FailurePattern& phi, NodeId v, std::size_t step) {
    Flood sim(g, phi, R - 1);
    std::optional<std::size_t> comp;
    for (std::size_t w : sim.correct()) {
      const auto x = ifg.find(w, sim.view(w, R - 1));
      if (!x)
        throw ConsistencyError("chain for node " + std::to_string(v) + ", step " +
                               std::to_string(step) + ": view missing from the IF graph");
      if (comp && *comp != comps.component_of[*x])
        throw ConsistencyError("chain for node " + std::to_string(v) + ", step " +
                               std::to_string(step) + ": configuration spans two components");
      comp = comps.component_of[*x];
    }
    return *comp;
  };
  cert.component = component_of(FailurePattern{}, 0, 0);

  cert.chains.resize(g.size());
  parallel_for(g.size(), opts.threads, [&](std::size_t i) {
    const FailurePattern start =
        detail::worst_pattern_at(g, te, g.id(i), R, resolve_horizon(g, opts.horizon));
    cert.chains[i] = chain_from(g, g.id(i), start, R);
  });

  for (std::size_t i = 0; i < g.size(); ++i) {
    const Chain& chain = cert.chains[i];
    for (std::size_t j = 0; j < chain.patterns.size(); ++j)
      if (component_of(chain.patterns[j], chain.target, j) != cert.component)
        throw ConsistencyError("chain for node " + std::to_string(chain.target) + ", step " +
                               std::to_string(j) + ": left the failure-free component");
    Flood sim(g, chain.patterns.front(), R - 1);
    std::optional<IFVertex> miss;
    for (std::size_t w : sim.correct()) {
      const NodeSet view = sim.view(w, R - 1);
      if (!view.contains(i)) {
        miss = ifg.vertices()[*ifg.find(w, view)];
        break;
      }
    }
    if (!miss)
      throw ConsistencyError("node " + std::to_string(chain.target) +
                             " is heard by every correct node of its worst pattern by round " +
                             std::to_string(R - 1));
    cert.witnesses.push_back(*miss);
  }

  cert.solvable_below = solvability(ifg, comps).solvable;
  if (cert.solvable_below)
    throw ConsistencyError("IF graph at round " + std::to_string(R - 1) +
                           " reports consensus solvable despite the certificate");
  return cert;
}

inline Json step_to_json(const Graph& g, const SuccessorStep& s) {
  Json j;
  j["pivot"] = s.pivot;
  j["case"] = s.rule;
  j["witness"] = s.witness;
  j["before"] = pattern_to_json(g, s.before);
  j["after"] = pattern_to_json(g, s.after);
  return j;
}

inline Json chain_to_json(const Graph& g, const Chain& c) {
  Json j;
  j["node"] = c.target;
  j["order"] = c.order;
  Json ps = Json::array();
  for (const auto& p : c.patterns) ps.push_back(pattern_to_json(g, p));
  j["patterns"] = std::move(ps);
  Json ls = Json::array();
  for (const auto& l : c.links) {
    Json x;
    x["pivot"] = l.pivot;
    x["case"] = l.rule == 0 ? Json("remove") : Json(l.rule);
    x["witness"] = l.witness ? Json(*l.witness) : Json(nullptr);
    x["shared"] = l.shared;
    ls.push_back(std::move(x));
  }
  j["links"] = std::move(ls);
  return j;
}

inline Json certificate_to_json(const Graph& g, const LowerBoundCertificate& cert) {
  Json j;
  j["radius"] = cert.radius;
  j["t"] = cert.t;
  j["round"] = cert.radius - 1;
  j["if_vertices"] = cert.if_vertices;
  j["if_components"] = cert.if_components;
  j["component"] = cert.component;
  j["solvable_below"] = cert.solvable_below;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < cert.chains.size(); ++i) {
    Json n;
    n["node"] = cert.chains[i].target;
    n["worst_pattern"] = pattern_to_json(g, cert.chains[i].patterns.front());
    const IFVertex& w = cert.witnesses[i];
    n["witness"] = {{"node", g.id(w.node)}, {"view", g.to_ids(w.view)}};
    n["chain"] = chain_to_json(g, cert.chains[i]);
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

}  // namespace tradius
