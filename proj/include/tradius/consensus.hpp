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
#include <map>
#include <optional>
#include <span>
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

namespace tradius {

enum class Regime { below_connectivity, general };

inline std::string_view regime_tag(Regime r) {
  return r == Regime::below_connectivity ? "t<kappa" : "t>=kappa";
}

/// Ordered broadcasters s_1, s_2, ... and the eccentricity bound attained
/// when each was selected (per_index_ecc[0] is radius(G, t)).
struct CoreSequence {
  std::vector<NodeId> sources;
  std::vector<int> per_index_ecc;
  Regime regime = Regime::below_connectivity;
};

using Value = std::int64_t;
using Inputs = std::map<NodeId, Value>;

struct ExecutionResult {
  std::map<NodeId, Value> outputs;
  int rounds_used = 0;
  /// Position in the core sequence of the source each correct node adopted
  /// (0-based); for the flood-all baseline, the adopted node's identifier.
  std::map<NodeId, std::size_t> chosen;
};

namespace detail {

inline constexpr std::uint8_t kNever = 0xFF;

/// Index of the smallest candidate minimizing value; candidates are node indices.
inline std::size_t argmin_node(const std::vector<int>& value, const std::vector<char>& allowed) {
  std::size_t best = value.size();
  for (std::size_t v = 0; v < value.size(); ++v)
    if (allowed[v] && (best == value.size() || value[v] < value[best])) best = v;
  return best;
}

/// Rows of per-node eccentricities (kNever for infinite), one per residual item.
struct Residual {
  std::size_t width = 0;
  std::vector<std::uint8_t> ecc;

  std::size_t size() const { return width == 0 ? 0 : ecc.size() / width; }
  std::uint8_t at(std::size_t row, std::size_t v) const { return ecc[row * width + v]; }

  /// max finite ecc of v over the rows; 0 when v covers none of them.
  int worst(std::size_t v) const {
    int w = 0;
    for (std::size_t row = 0; row < size(); ++row)
      if (at(row, v) != kNever) w = std::max<int>(w, at(row, v));
    return w;
  }

  /// Keeps only rows that v fails to cover.
  void drop_covered_by(std::size_t v) {
    std::vector<std::uint8_t> kept;
    for (std::size_t row = 0; row < size(); ++row)
      if (at(row, v) == kNever)
        kept.insert(kept.end(), ecc.begin() + static_cast<std::ptrdiff_t>(row * width),
                    ecc.begin() + static_cast<std::ptrdiff_t>((row + 1) * width));
    ecc = std::move(kept);
  }
};

inline std::uint8_t encode(Rounds e) {
  return e ? static_cast<std::uint8_t>(*e) : kNever;
}

}  // namespace detail

/// Core sequence over whole failure patterns (global broadcast). Needs
/// t < kappa(G); yields exactly t+1 sources.
inline CoreSequence core_sequence_classic(const Graph& g, int t, const Options& opts = {}) {
  const std::size_t n = g.size();
  const int te = clamp_t(g, t, opts.warnings);
  require_below_connectivity(g, te, "core_sequence_classic");
  PatternSpace space(g, te, resolve_horizon(g, opts.horizon));

  auto parts = scan_patterns(space, settle_rounds(g), opts.threads, detail::Residual{n, {}},
                             [&](detail::Residual& acc, std::uint64_t, const FailurePattern&,
                                 const Flood& sim, std::span<const NodeSet>) {
                               for (std::size_t v = 0; v < n; ++v)
                                 acc.ecc.push_back(detail::encode(sim.ecc(v, sim.correct())));
                             });
  detail::Residual residual{n, {}};
  for (auto& p : parts) residual.ecc.insert(residual.ecc.end(), p.ecc.begin(), p.ecc.end());

  CoreSequence core;
  core.regime = Regime::below_connectivity;
  std::vector<char> allowed(n, 1);
  for (int i = 0; i <= te; ++i) {
    std::vector<int> value(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      if (allowed[v]) value[v] = residual.worst(v);
    const std::size_t s = detail::argmin_node(value, allowed);
    core.sources.push_back(g.id(s));
    core.per_index_ecc.push_back(value[s]);
    allowed[s] = 0;
    residual.drop_covered_by(s);
  }
  if (residual.size() != 0)
    throw ConsistencyError("classic core sequence of length t+1 leaves patterns uncovered");
  return core;
}

/// Core sequence over (pattern, component) pairs; valid for every t.
///
/// s_1 minimizes ecc(v, Omega_all). Each later source minimizes its worst
/// finite eccentricity over the pairs no earlier source reaches, among nodes
/// not yet chosen. Stops once every pair is covered by some source.
inline CoreSequence core_sequence_general(const Graph& g, int t, const Options& opts = {}) {
  const std::size_t n = g.size();
  const RadiusResult rad = radius(g, t, opts);
  const std::size_t first = g.index(rad.witness);
  PatternSpace space(g, rad.t, resolve_horizon(g, opts.horizon));

  auto parts = scan_patterns(space, settle_rounds(g), opts.threads, detail::Residual{n, {}},
                             [&](detail::Residual& acc, std::uint64_t, const FailurePattern&,
                                 const Flood& sim, std::span<const NodeSet> comps) {
                               for (NodeSet c : comps) {
                                 if (sim.ecc(first, c)) continue;
                                 for (std::size_t v = 0; v < n; ++v)
                                   acc.ecc.push_back(detail::encode(sim.ecc(v, c)));
                               }
                             });
  detail::Residual residual{n, {}};
  for (auto& p : parts) residual.ecc.insert(residual.ecc.end(), p.ecc.begin(), p.ecc.end());

  CoreSequence core;
  core.regime = rad.below_connectivity ? Regime::below_connectivity : Regime::general;
  core.sources.push_back(rad.witness);
  core.per_index_ecc.push_back(rad.value);
  std::vector<char> allowed(n, 1);
  allowed[first] = 0;
  while (residual.size() != 0) {
    if (core.sources.size() == n)
      throw ConsistencyError("every node chosen yet some (pattern, component) pair is uncovered");
    std::vector<int> value(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      if (allowed[v]) value[v] = residual.worst(v);
    const std::size_t s = detail::argmin_node(value, allowed);
    core.sources.push_back(g.id(s));
    core.per_index_ecc.push_back(value[s]);
    allowed[s] = 0;
    residual.drop_covered_by(s);
  }
  return core;
}

namespace detail {

inline void require_total(const Graph& g, const Inputs& inputs) {
  for (NodeId v : g.ids())
    if (!inputs.contains(v))
      throw ParameterError("no input value for node " + std::to_string(v));
}

}  // namespace detail

/// Floods `rounds` rounds under phi; each correct node adopts the input of
/// the first core source in its view.
inline ExecutionResult run_with_core(const Graph& g, const CoreSequence& core, int rounds,
                                     const Inputs& inputs, const FailurePattern& phi) {
  detail::require_total(g, inputs);
  phi.validate(g);
  std::vector<std::size_t> sources;
  for (NodeId s : core.sources) sources.push_back(g.index(s));
  Flood sim(g, phi, rounds);
  ExecutionResult res;
  res.rounds_used = rounds;
  for (std::size_t v : sim.correct()) {
    const NodeSet view = sim.view(v, rounds);
    std::size_t i = 0;
    while (i < sources.size() && !view.contains(sources[i])) ++i;
    if (i == sources.size())
      throw ProtocolError("node " + std::to_string(g.id(v)) + " heard from no core source");
    res.outputs[g.id(v)] = inputs.at(core.sources[i]);
    res.chosen[g.id(v)] = i;
  }
  return res;
}

/// The core-sequence algorithm: radius(G, t) rounds of flooding, then adopt
/// the first core source heard.
inline ExecutionResult run_consensus(const Graph& g, int t, const Inputs& inputs,
                                     const FailurePattern& phi, const Options& opts = {}) {
  const RadiusResult rad = radius(g, t, opts);
  return run_with_core(g, core_sequence_general(g, rad.t, opts), rad.value, inputs, phi);
}

/// n-1 rounds of flooding, then adopt the input of the smallest identifier heard.
inline ExecutionResult run_floodall_baseline(const Graph& g, const Inputs& inputs,
                                             const FailurePattern& phi) {
  detail::require_total(g, inputs);
  phi.validate(g);
  const int rounds = settle_rounds(g);
  Flood sim(g, phi, rounds);
  ExecutionResult res;
  res.rounds_used = rounds;
  for (std::size_t v : sim.correct()) {
    const NodeId pick = g.id(sim.view(v, rounds).front());
    res.outputs[g.id(v)] = inputs.at(pick);
    res.chosen[g.id(v)] = static_cast<std::size_t>(pick);
  }
  return res;
}

enum class Algorithm { core, baseline };
enum class Task { consensus, local_consensus };

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "core") return Algorithm::core;
  if (s == "baseline") return Algorithm::baseline;
  throw ParameterError("unknown algorithm \"" + std::string(s) + "\" (expected core|baseline)");
}

inline Task parse_task(std::string_view s) {
  if (s == "consensus") return Task::consensus;
  if (s == "local" || s == "local_consensus") return Task::local_consensus;
  throw ParameterError("unknown task \"" + std::string(s) + "\" (expected consensus|local)");
}

struct Counterexample {
  FailurePattern pattern;
  std::string reason;
  std::vector<NodeId> nodes;
  std::map<NodeId, Value> outputs;
};

struct Verdict {
  bool pass = true;
  std::uint64_t patterns = 0;
  int rounds = 0;
  std::optional<CoreSequence> core;
  std::optional<Counterexample> counterexample;
};

/// Runs the algorithm on every canonical pattern with inputs x_v = v and
/// checks termination, validity and (global or per-component) agreement.
/// The counterexample, if any, is the earliest failing pattern in canonical order.
inline Verdict verify_task(const Graph& g, int t, Algorithm algorithm, Task task,
                           const Options& opts = {}) {
  const int te = clamp_t(g, t, opts.warnings);
  Verdict verdict;
  std::optional<CoreSequence> core;
  if (algorithm == Algorithm::core) {
    const RadiusResult rad = radius(g, te, opts);
    core = core_sequence_general(g, te, opts);
    verdict.rounds = rad.value;
  } else {
    verdict.rounds = settle_rounds(g);
  }
  verdict.core = core;
  Inputs inputs;
  for (NodeId v : g.ids()) inputs[v] = v;

  PatternSpace space(g, te, resolve_horizon(g, opts.horizon));
  verdict.patterns = space.size();

  struct Found {
    std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
    Counterexample example;
  };
  auto check = [&](std::uint64_t i, const FailurePattern& phi, Found& found) {
    ExecutionResult res;
    try {
      res = algorithm == Algorithm::core ? run_with_core(g, *core, verdict.rounds, inputs, phi)
                                         : run_floodall_baseline(g, inputs, phi);
    } catch (const ProtocolError& e) {
      found = {i, {phi, std::string("termination: ") + e.what(), {}, {}}};
      return;
    }
    for (const auto& [v, y] : res.outputs)
      if (!inputs.contains(static_cast<NodeId>(y))) {
        found = {i, {phi, "validity", {v}, res.outputs}};
        return;
      }
    std::vector<NodeSet> groups;
    if (task == Task::consensus)
      groups.push_back(g.all() - phi.faulty());
    else
      groups = components(g, phi).components;
    for (NodeSet grp : groups) {
      std::vector<NodeId> members = g.to_ids(grp);
      for (NodeId v : members)
        if (res.outputs.at(v) != res.outputs.at(members.front())) {
          found = {i, {phi, "agreement", members, res.outputs}};
          return;
        }
    }
  };

  auto parts = parallel_scan(static_cast<std::size_t>(space.size()), opts.threads, Found{},
                             [&](Found& found, std::size_t begin, std::size_t end) {
                               for (std::size_t i = begin; i < end && i < found.index; ++i) {
                                 Found here;
                                 check(i, space.at(i), here);
                                 if (here.index < found.index) {
                                   found = std::move(here);
                                   break;
                                 }
                               }
                             });
  const Found* first = nullptr;
  for (const auto& p : parts)
    if (p.index != std::numeric_limits<std::uint64_t>::max() &&
        (first == nullptr || p.index < first->index))
      first = &p;
  if (first) {
    verdict.pass = false;
    verdict.counterexample = first->example;
  }
  return verdict;
}

inline Json core_to_json(const CoreSequence& core) {
  Json j;
  j["sources"] = core.sources;
  j["per_index_ecc"] = core.per_index_ecc;
  j["regime"] = regime_tag(core.regime);
  return j;
}

inline Json counterexample_to_json(const Graph& g, const Counterexample& c) {
  Json j;
  j["reason"] = c.reason;
  j["pattern"] = pattern_to_json(g, c.pattern);
  j["nodes"] = c.nodes;
  Json outs = Json::object();
  for (const auto& [v, y] : c.outputs) outs[std::to_string(v)] = y;
  j["outputs"] = std::move(outs);
  return j;
}

}  // namespace tradius
