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


#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "tradius/if_graph.hpp"

namespace tradius {
namespace {

using Ids = std::vector<NodeId>;

Graph path3() { return oracle::path3(); }

PatternClass fig2_class(const Graph& g) {
  return {"fig2", {FailurePattern({clean_crash(g, g.index(7), 2)})}};
}

PatternClass failure_free() { return {"none", {FailurePattern{}}}; }

std::set<std::set<oracle::Obs>> partition(const IFGraph& ifg) {
  std::set<std::set<oracle::Obs>> out;
  for (const auto& comp : connected_components_if(ifg).members) {
    std::set<oracle::Obs> c;
    for (VertexId x : comp) {
      const auto& v = ifg.vertices()[x];
      c.emplace(ifg.graph().id(v.node), ifg.graph().to_ids(v.view));
    }
    out.insert(c);
  }
  return out;
}

TEST(BuildIFGraph, Fig2SingleClique) {
  const Graph g = generate(Family::fig2_gadget, 0);
  const IFGraph ifg = build_if_graph(g, 2, fig2_class(g));
  ASSERT_EQ(ifg.vertices().size(), 6u);
  EXPECT_EQ(ifg.edges().size(), 15u);
  EXPECT_EQ(connected_components_if(ifg).members.size(), 1u);
  // Views are the hand-computed ones; they are not all equal.
  EXPECT_EQ(g.to_ids(ifg.vertices()[0].view), (Ids{1, 2, 3, 7}));
  EXPECT_EQ(g.to_ids(ifg.vertices()[5].view), (Ids{4, 5, 6, 7}));
  for (const auto& v : ifg.vertices()) {
    EXPECT_NE(g.id(v.node), 7);
    EXPECT_EQ(v.realizers, std::vector<std::uint32_t>{0});
  }
}

TEST(BuildIFGraph, RoundZeroFailureFree) {
  for (const auto& [name, g] : oracle::small_graphs(5)) {
    const IFGraph ifg = build_if_graph(g, 0, failure_free());
    ASSERT_EQ(ifg.vertices().size(), g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      EXPECT_EQ(ifg.vertices()[i].view, NodeSet::single(i));
    EXPECT_EQ(ifg.edges().size(), g.size() * (g.size() - 1) / 2);
    const auto comps = connected_components_if(ifg);
    EXPECT_EQ(comps.members.size(), 1u);
    for (NodeId v : g.ids())
      EXPECT_EQ(dominates(ifg, v, comps.members[0]), g.size() == 1) << name;
  }
}

TEST(BuildIFGraph, PathContainsIsolatedEndViews) {
  const Graph p = path3();
  for (int r = 2; r <= 4; ++r) {
    const IFGraph ifg = build_if_graph(p, r, all_patterns(p, 1));
    EXPECT_TRUE(ifg.find(0, NodeSet::single(0)).has_value());
    EXPECT_TRUE(ifg.find(2, NodeSet::single(2)).has_value());
  }
}

TEST(BuildIFGraph, VerticesCarryTheirRealizers) {
  const Graph g = generate(Family::cycle, 4);
  const auto cls = all_patterns(g, 2);
  const IFGraph ifg = build_if_graph(g, 2, cls);
  std::size_t total = 0;
  for (const auto& v : ifg.vertices()) {
    ASSERT_FALSE(v.realizers.empty());
    EXPECT_TRUE(std::is_sorted(v.realizers.begin(), v.realizers.end()));
    for (auto i : v.realizers) {
      EXPECT_TRUE(cls.members[i].is_correct(v.node));
      EXPECT_EQ(Flood(g, cls.members[i], 2).view(v.node, 2), v.view);
    }
    total += v.realizers.size();
  }
  std::size_t expected = 0;
  for (const auto& phi : cls.members) expected += g.size() - phi.size();
  EXPECT_EQ(total, expected);
}

TEST(ConnectedComponents, MatchPairwiseOracle) {
  for (const auto& [name, g] : oracle::small_graphs(4))
    for (int t = 0; t < static_cast<int>(g.size()) && t <= 2; ++t)
      for (int r = 0; r <= 3; ++r) {
        const auto cls = all_patterns(g, t);
        const IFGraph ifg = build_if_graph(g, r, cls);
        const auto ref = oracle::if_components(g, r, cls.members);
        ASSERT_EQ(partition(ifg), ref) << name << " t=" << t << " r=" << r;
        EXPECT_EQ(solvability(ifg, connected_components_if(ifg)).solvable,
                  oracle::if_solvable(g, ref))
            << name << " t=" << t << " r=" << r;
      }
}

TEST(ConnectedComponents, PathFig4RoundOne) {
  const Graph p = path3();
  const IFGraph ifg = build_if_graph(p, 1, all_patterns(p, 1));
  const auto comps = connected_components_if(ifg);
  EXPECT_EQ(comps.members.size(), oracle::if_components(p, 1, all_patterns(p, 1).members).size());
  EXPECT_EQ(connected_components_if(build_if_graph(p, 0, failure_free())).members.size(), 1u);
}

TEST(Dominates, Fig2NodeSevenAtRoundOne) {
  const Graph g = generate(Family::fig2_gadget, 0);
  const IFGraph ifg = build_if_graph(g, 1, fig2_class(g));
  const auto comps = connected_components_if(ifg);
  ASSERT_EQ(comps.members.size(), 1u);
  EXPECT_TRUE(dominates(ifg, 7, comps.members[0]));
  for (NodeId v = 1; v <= 6; ++v) EXPECT_FALSE(dominates(ifg, v, comps.members[0]));
}

TEST(Dominates, PathFailureFreeComponentUndominated) {
  const Graph p = path3();
  for (int r = 2; r <= 4; ++r) {
    const IFGraph ifg = build_if_graph(p, r, all_patterns(p, 1));
    const auto comps = connected_components_if(ifg);
    const Flood sim(p, FailurePattern{}, r);
    const VertexId x = *ifg.find(0, sim.view(0, r));
    for (NodeId v : p.ids()) EXPECT_FALSE(dominates(ifg, v, comps.members[comps.component_of[x]]));
  }
}

TEST(Dominates, RejectsForeignVertexSets) {
  const Graph p = path3();
  const IFGraph ifg = build_if_graph(p, 1, all_patterns(p, 1));
  const std::vector<VertexId> not_a_component{0};
  if (connected_components_if(ifg).members[0].size() > 1) {
    EXPECT_THROW(dominates(ifg, 1, not_a_component), ParameterError);
  }
  EXPECT_THROW(dominates(ifg, 9, connected_components_if(ifg).members[0]), IdentifierError);
}

TEST(ConsensusSolvable, Examples) {
  const Graph g = generate(Family::fig2_gadget, 0);
  EXPECT_TRUE(consensus_solvable(g, 2, fig2_class(g)).solvable);
  const Graph k4 = generate(Family::clique, 4);
  EXPECT_TRUE(consensus_solvable(k4, 2, all_patterns(k4, 1)).solvable);
  const auto no = consensus_solvable(k4, 1, all_patterns(k4, 1));
  EXPECT_FALSE(no.solvable);
}

TEST(ConsensusSolvable, CertificateWitnessesAreGenuine) {
  const Graph k4 = generate(Family::clique, 4);
  const IFGraph ifg = build_if_graph(k4, 1, all_patterns(k4, 1));
  const auto comps = connected_components_if(ifg);
  const auto s = solvability(ifg, comps);
  ASSERT_FALSE(s.solvable);
  bool some_undominated = false;
  for (const auto& c : s.certificate.components) {
    if (c.dominator) {
      EXPECT_TRUE(dominates(ifg, *c.dominator, comps.members[c.component]));
      continue;
    }
    some_undominated = true;
    ASSERT_EQ(c.witnesses.size(), k4.size());
    for (const auto& w : c.witnesses) {
      EXPECT_EQ(comps.component_of[w.vertex], c.component);
      EXPECT_FALSE(ifg.vertices()[w.vertex].view.contains(k4.index(w.missing)));
    }
  }
  EXPECT_TRUE(some_undominated);
}

TEST(Export, JsonAndDot) {
  const Graph p = path3();
  const IFGraph ifg = build_if_graph(p, 0, failure_free());
  const Json j = Json::parse(export_if_graph(ifg, "json"));
  EXPECT_EQ(j["vertices"].size(), 3u);
  EXPECT_EQ(j["edges"].size(), 3u);
  const std::string dot = export_if_graph(ifg, "dot");
  for (const char* label : {"\"1:{1}\"", "\"2:{2}\"", "\"3:{3}\""})
    EXPECT_NE(dot.find(label), std::string::npos) << label;
  EXPECT_NE(dot.find("subgraph cluster_0"), std::string::npos);
  EXPECT_THROW(export_if_graph(ifg, "svg"), ParameterError);
}

TEST(Export, ByteIdenticalAcrossRunsAndThreads) {
  const Graph p = path3();
  const auto a = export_if_graph(build_if_graph(p, 1, all_patterns(p, 1), {.threads = 1}), "json");
  const auto b = export_if_graph(build_if_graph(p, 1, all_patterns(p, 1), {.threads = 4}), "json");
  const auto c = export_if_graph(build_if_graph(p, 1, all_patterns(p, 1), {.threads = 2}), "dot");
  const auto d = export_if_graph(build_if_graph(p, 1, all_patterns(p, 1), {.threads = 3}), "dot");
  EXPECT_EQ(a, b);
  EXPECT_EQ(c, d);
}

}  // namespace
}  // namespace tradius
