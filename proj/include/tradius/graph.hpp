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

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tradius/errors.hpp"
#include "tradius/node_set.hpp"

namespace tradius {

using Json = nlohmann::ordered_json;

/// Node identifier as seen by users: a strictly positive integer.
using NodeId = int;

/// Immutable, connected, simple, undirected communication graph.
///
/// Nodes are stored sorted by identifier; the position of a node in that
/// order is its *index*, which is what NodeSet bitmasks refer to.
class Graph {
 public:
  Graph(std::vector<NodeId> nodes, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::sort(nodes.begin(), nodes.end());
    if (nodes.empty()) throw ParameterError("graph must have at least one node");
    if (nodes.size() > kMaxNodes)
      throw ParameterError("graph has " + std::to_string(nodes.size()) + " nodes; at most " +
                           std::to_string(kMaxNodes) + " are supported");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i] <= 0)
        throw IdentifierError("node identifiers must be positive, got " +
                              std::to_string(nodes[i]));
      if (i > 0 && nodes[i] == nodes[i - 1])
        throw IdentifierError("duplicate node identifier " + std::to_string(nodes[i]));
    }
    ids_ = std::move(nodes);
    adjacency_.assign(ids_.size(), NodeSet{});
    for (auto [a, b] : edges) {
      if (a == b) throw ParameterError("self-loop on node " + std::to_string(a));
      const std::size_t ia = index(a);
      const std::size_t ib = index(b);
      if (adjacency_[ia].contains(ib))
        throw ParameterError("duplicate edge {" + std::to_string(std::min(a, b)) + "," +
                             std::to_string(std::max(a, b)) + "}");
      adjacency_[ia].insert(ib);
      adjacency_[ib].insert(ia);
    }
    if (!connected_within(all()))
      throw ParameterError("communication graph must be connected");
  }

  std::size_t size() const { return ids_.size(); }
  std::span<const NodeId> ids() const { return ids_; }
  NodeSet all() const { return NodeSet::first(ids_.size()); }

  NodeId id(std::size_t index) const { return ids_.at(index); }

  bool has_node(NodeId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  std::size_t index(NodeId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id)
      throw IdentifierError("unknown node " + std::to_string(id));
    return static_cast<std::size_t>(it - ids_.begin());
  }

  NodeSet neighbors(std::size_t index) const { return adjacency_.at(index); }
  std::size_t degree(std::size_t index) const { return adjacency_.at(index).size(); }

  std::size_t min_degree() const {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& adj : adjacency_) best = std::min(best, adj.size());
    return best;
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& adj : adjacency_) twice += adj.size();
    return twice / 2;
  }

  /// Edges as identifier pairs, smaller endpoint first, sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j : adjacency_[i])
        if (i < j) out.emplace_back(ids_[i], ids_[j]);
    return out;
  }

  std::vector<NodeId> to_ids(NodeSet set) const {
    std::vector<NodeId> out;
    out.reserve(set.size());
    for (std::size_t i : set) out.push_back(ids_.at(i));
    return out;
  }

  NodeSet to_set(std::span<const NodeId> nodes) const {
    NodeSet out;
    for (NodeId v : nodes) out.insert(index(v));
    return out;
  }

  /// Connected components of the subgraph induced by `alive`, each as a
  /// NodeSet, ordered by smallest member.
  std::vector<NodeSet> components_within(NodeSet alive) const {
    std::vector<NodeSet> out;
    NodeSet rest = alive;
    while (!rest.empty()) {
      NodeSet comp = NodeSet::single(rest.front());
      NodeSet frontier = comp;
      while (!frontier.empty()) {
        NodeSet next;
        for (std::size_t u : frontier) next |= adjacency_[u];
        next = (next & alive) - comp;
        comp |= next;
        frontier = next;
      }
      out.push_back(comp);
      rest -= comp;
    }
    return out;
  }

  bool connected_within(NodeSet alive) const {
    return components_within(alive).size() <= 1;
  }

  bool operator==(const Graph&) const = default;

  /// {"nodes":[...],"edges":[[a,b],...]}, nodes ascending, edges (a<b) ascending.
  Json to_json() const {
    Json edges_json = Json::array();
    for (auto [a, b] : edges()) edges_json.push_back(Json::array({a, b}));
    Json out;
    out["nodes"] = ids_;
    out["edges"] = std::move(edges_json);
    return out;
  }

  static Graph from_json(const Json& doc) {
    if (!doc.is_object()) throw FormatError("graph: expected a JSON object");
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
      throw FormatError("graph: field \"nodes\" must be an array");
    if (!doc.contains("edges") || !doc["edges"].is_array())
      throw FormatError("graph: field \"edges\" must be an array");
    std::vector<NodeId> nodes;
    for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
      const auto& v = doc["nodes"][i];
      if (!v.is_number_integer())
        throw FormatError("graph: nodes[" + std::to_string(i) + "] is not an integer");
      nodes.push_back(v.get<NodeId>());
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
      const auto& e = doc["edges"][i];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw FormatError("graph: edges[" + std::to_string(i) +
                          "] must be a pair of integers");
      for (std::size_t k = 0; k < 2; ++k)
        if (std::find(nodes.begin(), nodes.end(), e[k].get<NodeId>()) == nodes.end())
          throw FormatError("graph: edges[" + std::to_string(i) + "] references unknown node " +
                            std::to_string(e[k].get<NodeId>()));
      edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
    }
    try {
      return Graph(std::move(nodes), edges);
    } catch (const Error& e) {
      throw FormatError(std::string("graph: ") + e.what());
    }
  }

 private:
  std::vector<NodeId> ids_;
  std::vector<NodeSet> adjacency_;
};

namespace detail {

/// Calls fn(subset) for every k-subset of `pool`, in lexicographic index order.
/// Stops early when fn returns true; returns whether it did.
template <class Fn>
bool for_each_subset(NodeSet pool, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> items(pool.begin(), pool.end());
  if (k > items.size()) return false;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    NodeSet subset;
    for (std::size_t p : pick) subset.insert(items[p]);
    if (fn(subset)) return true;
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == items.size() - k + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace detail

/// Vertex connectivity kappa(G); n-1 for complete graphs.
///
/// Brute force over separator candidates of increasing size. Since
/// kappa <= delta, only sizes below the minimum degree need to be tried.
inline int connectivity(const Graph& g) {
  const std::size_t n = g.size();
  if (n <= 1) return 0;
  const std::size_t delta = g.min_degree();
  for (std::size_t q = 0; q < delta; ++q) {
    const bool cut = detail::for_each_subset(g.all(), q, [&](NodeSet removed) {
      return !g.connected_within(g.all() - removed);
    });
    if (cut) return static_cast<int>(q);
  }
  return static_cast<int>(delta);
}

/// Hop distance between two nodes (BFS).
inline int distance(const Graph& g, NodeId u, NodeId v) {
  const std::size_t target = g.index(v);
  NodeSet seen = NodeSet::single(g.index(u));
  NodeSet frontier = seen;
  for (int d = 0;; ++d) {
    if (seen.contains(target)) return d;
    NodeSet next;
    for (std::size_t w : frontier) next |= g.neighbors(w);
    next -= seen;
    seen |= next;
    frontier = next;
  }
}

/// Standard graph radius: min over v of max over u of distance(v, u).
inline int classic_radius(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  for (NodeId v : g.ids()) {
    int ecc = 0;
    for (NodeId u : g.ids()) ecc = std::max(ecc, distance(g, v, u));
    best = std::min(best, ecc);
  }
  return best;
}

enum class Family { clique, cycle, path, hypercube, fig2_gadget };

inline Family parse_family(std::string_view name) {
  if (name == "clique") return Family::clique;
  if (name == "cycle") return Family::cycle;
  if (name == "path") return Family::path;
  if (name == "hypercube") return Family::hypercube;
  if (name == "fig2_gadget") return Family::fig2_gadget;
  throw ParameterError("unknown graph family \"" + std::string(name) + "\"");
}

/// Fixture graphs labelled 1..n.
///
/// The hypercube labels vertex with bit pattern b as b+1. The fig2 gadget is a
/// path 1-2-3-4-5-6 plus node 7 adjacent to all of them; it ignores `n`.
inline Graph generate(Family family, int n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  auto nodes_upto = [](int count) {
    std::vector<NodeId> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = i + 1;
    return v;
  };
  const int limit = static_cast<int>(kMaxNodes);
  switch (family) {
    case Family::clique:
      if (n < 1 || n > limit) throw ParameterError("clique needs 1 <= n <= 64");
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
      return Graph(nodes_upto(n), edges);
    case Family::cycle:
      if (n < 3 || n > limit) throw ParameterError("cycle needs 3 <= n <= 64");
      for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(1, n);
      return Graph(nodes_upto(n), edges);
    case Family::path:
      if (n < 1 || n > limit) throw ParameterError("path needs 1 <= n <= 64");
      for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
      return Graph(nodes_upto(n), edges);
    case Family::hypercube: {
      if (n < 1 || n > limit || (n & (n - 1)) != 0)
        throw ParameterError("hypercube needs n a power of two, n <= 64");
      for (int a = 0; a < n; ++a)
        for (int bit = 1; bit < n; bit <<= 1)
          if ((a & bit) == 0) edges.emplace_back(a + 1, (a | bit) + 1);
      return Graph(nodes_upto(n), edges);
    }
    case Family::fig2_gadget:
      for (int i = 1; i < 6; ++i) edges.emplace_back(i, i + 1);
      for (int i = 1; i <= 6; ++i) edges.emplace_back(i, 7);
      return Graph(nodes_upto(7), edges);
  }
  throw ParameterError("unsupported graph family");
}

}  // namespace tradius
