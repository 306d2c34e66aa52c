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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tradius/errors.hpp"
#include "tradius/graph.hpp"
#include "tradius/node_set.hpp"

namespace tradius {

/// One faulty node: it crashes at `round` and, during that round, its
/// message does not reach the neighbors in `blocked` (indices, non-empty).
struct CrashEntry {
  std::size_t node = 0;
  NodeSet blocked;
  int round = 1;

  bool operator==(const CrashEntry&) const = default;
  auto operator<=>(const CrashEntry&) const = default;
};

/// A crash entry spelled with identifiers, for building patterns by hand.
struct Crash {
  NodeId node = 0;
  std::vector<NodeId> blocked;
  int round = 1;
};

/// A failure pattern: at most one CrashEntry per node, kept sorted by node.
/// The default-constructed pattern is the failure-free one.
class FailurePattern {
 public:
  FailurePattern() = default;

  explicit FailurePattern(std::vector<CrashEntry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const CrashEntry& a, const CrashEntry& b) { return a.node < b.node; });
    for (const auto& e : entries_) {
      if (faulty_.contains(e.node))
        throw ParameterError("failure pattern lists a node twice");
      faulty_.insert(e.node);
    }
  }

  static FailurePattern from_ids(const Graph& g, const std::vector<Crash>& crashes) {
    std::vector<CrashEntry> entries;
    entries.reserve(crashes.size());
    for (const auto& c : crashes)
      entries.push_back({g.index(c.node), g.to_set(c.blocked), c.round});
    FailurePattern out(std::move(entries));
    out.validate(g);
    return out;
  }

  /// Checks blocked sets are non-empty subsets of the neighborhood and rounds
  /// are positive. Throws ParameterError.
  void validate(const Graph& g) const {
    for (const auto& e : entries_) {
      if (e.node >= g.size()) throw ParameterError("crash entry for a node outside the graph");
      const std::string who = "node " + std::to_string(g.id(e.node));
      if (e.round < 1) throw ParameterError(who + ": crash round must be >= 1");
      if (e.blocked.empty()) throw ParameterError(who + ": blocked set must be non-empty");
      if (!g.neighbors(e.node).contains(e.blocked))
        throw ParameterError(who + ": blocked set must contain only neighbors");
    }
  }

  std::span<const CrashEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  NodeSet faulty() const { return faulty_; }
  bool is_correct(std::size_t node) const { return !faulty_.contains(node); }

  const CrashEntry* find(std::size_t node) const {
    if (!faulty_.contains(node)) return nullptr;
    for (const auto& e : entries_)
      if (e.node == node) return &e;
    return nullptr;
  }

  /// Latest crash round; 0 for the failure-free pattern.
  int last_round() const {
    int r = 0;
    for (const auto& e : entries_) r = std::max(r, e.round);
    return r;
  }

  /// Copy with `node` made correct.
  FailurePattern without(std::size_t node) const {
    std::vector<CrashEntry> rest;
    for (const auto& e : entries_)
      if (e.node != node) rest.push_back(e);
    return FailurePattern(std::move(rest));
  }

  /// Copy with the entry of `entry.node` replaced (or added).
  FailurePattern with(const CrashEntry& entry) const {
    std::vector<CrashEntry> rest;
    for (const auto& e : entries_)
      if (e.node != entry.node) rest.push_back(e);
    rest.push_back(entry);
    return FailurePattern(std::move(rest));
  }

  bool operator==(const FailurePattern& o) const { return entries_ == o.entries_; }
  auto operator<=>(const FailurePattern& o) const { return entries_ <=> o.entries_; }

 private:
  std::vector<CrashEntry> entries_;
  NodeSet faulty_;
};

/// A crash in which the node reaches none of its neighbors.
inline CrashEntry clean_crash(const Graph& g, std::size_t node, int round) {
  return {node, g.neighbors(node), round};
}

inline bool is_correct(const Graph& g, const FailurePattern& phi, NodeId v) {
  return phi.is_correct(g.index(v));
}

/// {"crashes":[{"node":2,"round":1,"blocked":[3]}]}, crashes by node, blocked ascending.
inline Json pattern_to_json(const Graph& g, const FailurePattern& phi) {
  Json crashes = Json::array();
  for (const auto& e : phi.entries()) {
    Json entry;
    entry["node"] = g.id(e.node);
    entry["round"] = e.round;
    entry["blocked"] = g.to_ids(e.blocked);
    crashes.push_back(std::move(entry));
  }
  Json out;
  out["crashes"] = std::move(crashes);
  return out;
}

inline FailurePattern pattern_from_json(const Graph& g, const Json& doc) {
  if (!doc.is_object() || !doc.contains("crashes") || !doc["crashes"].is_array())
    throw FormatError("pattern: expected an object with a \"crashes\" array");
  std::vector<Crash> crashes;
  const auto& list = doc["crashes"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& c = list[i];
    const std::string where = "pattern: crashes[" + std::to_string(i) + "]";
    if (!c.is_object()) throw FormatError(where + " is not an object");
    for (const char* key : {"node", "round"})
      if (!c.contains(key) || !c[key].is_number_integer())
        throw FormatError(where + "." + key + " must be an integer");
    if (!c.contains("blocked") || !c["blocked"].is_array())
      throw FormatError(where + ".blocked must be an array");
    Crash crash{c["node"].get<NodeId>(), {}, c["round"].get<int>()};
    for (std::size_t j = 0; j < c["blocked"].size(); ++j) {
      if (!c["blocked"][j].is_number_integer())
        throw FormatError(where + ".blocked[" + std::to_string(j) + "] is not an integer");
      crash.blocked.push_back(c["blocked"][j].get<NodeId>());
    }
    crashes.push_back(std::move(crash));
  }
  try {
    return FailurePattern::from_ids(g, crashes);
  } catch (const IdentifierError& e) {
    throw FormatError(std::string("pattern: ") + e.what());
  } catch (const ParameterError& e) {
    throw FormatError(std::string("pattern: ") + e.what());
  }
}

/// Clamps t into [0, n-1]; a faulty set is always a proper subset of V.
inline int clamp_t(const Graph& g, int t, std::ostream* warnings = nullptr) {
  if (t < 0) throw ParameterError("t must be non-negative");
  const int cap = static_cast<int>(g.size()) - 1;
  if (t > cap) {
    if (warnings)
      *warnings << "warning: t=" << t << " clamped to n-1=" << cap << "\n";
    return cap;
  }
  return t;
}

/// Random-access view of the canonical finite failure-pattern class.
///
/// Contains every pattern with at most min(t, n-1) faulty nodes, each crashing
/// at a round in 1..horizon with a non-empty blocked subset of its neighbors.
/// Order: by faulty-set size, then faulty set (lexicographic on sorted
/// indices), then per faulty node in index order its (round, blocked bitmask).
class PatternSpace {
 public:
  struct Block {
    NodeSet faulty;
    std::vector<std::size_t> nodes;
    std::uint64_t offset = 0;
    std::uint64_t size = 0;
    std::vector<NodeSet> components;
  };

  PatternSpace(const Graph& g, int t, int horizon) : graph_(&g), horizon_(horizon) {
    if (horizon < 1) throw ParameterError("horizon must be >= 1");
    t_ = clamp_t(g, t);
    const std::size_t n = g.size();
    submasks_.resize(n);
    if (t_ > 0) {
      for (std::size_t v = 0; v < n; ++v) {
        const NodeSet nb = g.neighbors(v);
        if (nb.size() > 24)
          throw ParameterError("node degree too large for exhaustive pattern enumeration");
        // Non-empty submasks of nb in ascending numeric order.
        std::vector<std::uint64_t> subs;
        for (std::uint64_t s = nb.bits(); s != 0; s = (s - 1) & nb.bits()) subs.push_back(s);
        std::sort(subs.begin(), subs.end());
        for (auto s : subs) submasks_[v].emplace_back(s);
      }
    }
    const std::uint64_t cap = std::uint64_t{1} << 62;
    std::uint64_t offset = 0;
    for (int k = 0; k <= t_; ++k) {
      detail::for_each_subset(g.all(), static_cast<std::size_t>(k), [&](NodeSet f) {
        Block b;
        b.faulty = f;
        b.nodes.assign(f.begin(), f.end());
        b.offset = offset;
        b.size = 1;
        for (std::size_t v : b.nodes) {
          const std::uint64_t choices =
              static_cast<std::uint64_t>(horizon_) * submasks_[v].size();
          if (b.size > cap / choices) throw ParameterError("failure-pattern space too large");
          b.size *= choices;
        }
        b.components = g.components_within(g.all() - f);
        offset += b.size;
        if (offset > cap) throw ParameterError("failure-pattern space too large");
        blocks_.push_back(std::move(b));
        return false;
      });
    }
    size_ = offset;
  }

  const Graph& graph() const { return *graph_; }
  int t() const { return t_; }
  int horizon() const { return horizon_; }
  std::uint64_t size() const { return size_; }
  std::span<const Block> blocks() const { return blocks_; }

  std::size_t block_index(std::uint64_t i) const {
    auto it = std::upper_bound(blocks_.begin(), blocks_.end(), i,
                               [](std::uint64_t x, const Block& b) { return x < b.offset; });
    return static_cast<std::size_t>(it - blocks_.begin()) - 1;
  }

  const Block& block_of(std::uint64_t i) const { return blocks_[block_index(i)]; }

  FailurePattern at(std::uint64_t i) const {
    if (i >= size_) throw ParameterError("pattern index out of range");
    const Block& b = block_of(i);
    std::uint64_t local = i - b.offset;
    std::vector<CrashEntry> entries(b.nodes.size());
    // Mixed radix, first faulty node most significant.
    for (std::size_t k = b.nodes.size(); k-- > 0;) {
      const std::size_t v = b.nodes[k];
      const std::uint64_t m = submasks_[v].size();
      const std::uint64_t choices = static_cast<std::uint64_t>(horizon_) * m;
      const std::uint64_t c = local % choices;
      local /= choices;
      entries[k] = {v, submasks_[v][c % m], static_cast<int>(c / m) + 1};
    }
    return FailurePattern(std::move(entries));
  }

 private:
  const Graph* graph_;
  int t_ = 0;
  int horizon_ = 1;
  std::uint64_t size_ = 0;
  std::vector<std::vector<NodeSet>> submasks_;
  std::vector<Block> blocks_;
};

inline int resolve_horizon(const Graph& g, int horizon) {
  return horizon > 0 ? horizon : static_cast<int>(g.size());
}

/// Materialized canonical pattern class, in canonical order.
inline std::vector<FailurePattern> enumerate_patterns(const Graph& g, int t, int horizon) {
  PatternSpace space(g, t, horizon);
  std::vector<FailurePattern> out;
  out.reserve(static_cast<std::size_t>(space.size()));
  for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.at(i));
  return out;
}

/// Connected components of the graph left after removing the faulty nodes.
struct ComponentSet {
  std::vector<NodeSet> components;

  bool contains(NodeSet c) const {
    return std::find(components.begin(), components.end(), c) != components.end();
  }
  std::size_t size() const { return components.size(); }
  bool operator==(const ComponentSet&) const = default;
};

inline ComponentSet components(const Graph& g, const FailurePattern& phi) {
  return {g.components_within(g.all() - phi.faulty())};
}

}  // namespace tradius
