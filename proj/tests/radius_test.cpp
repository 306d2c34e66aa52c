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

#include <algorithm>

#include "oracles.hpp"
#include "tradius/radius.hpp"

namespace tradius {
namespace {

Graph path3() { return oracle::path3(); }

FailurePattern pat(const Graph& g, std::vector<Crash> crashes) {
  return FailurePattern::from_ids(g, crashes);
}

TEST(PhiStar, Examples) {
  const Graph k3 = generate(Family::clique, 3);
  for (NodeId v : k3.ids()) {
    const auto cls = phi_star(k3, 1, v);
    const FailurePattern clean({clean_crash(k3, k3.index(v), 1)});
    EXPECT_EQ(std::count(cls.members.begin(), cls.members.end(), clean), 0);
    EXPECT_EQ(phi_star(k3, 0, v).members, std::vector<FailurePattern>{FailurePattern{}});
  }
  const Graph c4 = generate(Family::cycle, 4);
  const auto cls = phi_star(c4, 1, 1);
  EXPECT_EQ(std::count(cls.members.begin(), cls.members.end(), pat(c4, {{1, {4}, 1}})), 1);
  EXPECT_THROW(phi_star(path3(), 1, 2), RegimeError);
}

bool has_pair(const OmegaSet& s, const FailurePattern& phi, NodeSet c) {
  return std::find(s.pairs.begin(), s.pairs.end(), OmegaPair{phi, c}) != s.pairs.end();
}

TEST(OmegaPartition, Examples) {
  const Graph p = path3();
  const auto [star, inf] = omega_partition(p, 1, 2);
  EXPECT_TRUE(has_pair(inf, pat(p, {{2, {3}, 1}}), p.to_set(std::vector<NodeId>{3})));
  EXPECT_TRUE(has_pair(star, FailurePattern{}, p.all()));
  for (const auto& [name, g] : oracle::small_graphs(5))
    for (NodeId v : g.ids()) EXPECT_TRUE(omega_partition(g, 0, v).second.pairs.empty()) << name;
}

TEST(OmegaPartition, CoversEveryPairExactlyOnce) {
  for (const auto& [name, g] : oracle::small_graphs(4)) {
    std::size_t pairs = 0;
    for (const auto& phi : enumerate_patterns(g, 2, static_cast<int>(g.size())))
      pairs += components(g, phi).size();
    for (NodeId v : g.ids()) {
      const auto [star, inf] = omega_partition(g, 2, v);
      EXPECT_EQ(star.pairs.size() + inf.pairs.size(), pairs) << name;
      for (const auto& [phi, c] : inf.pairs) EXPECT_EQ(ecc_component(g, phi, v, c), std::nullopt);
      for (const auto& [phi, c] : star.pairs) EXPECT_NE(ecc_component(g, phi, v, c), std::nullopt);
    }
  }
}

TEST(EccOver, Examples) {
  const Graph p = path3();
  EXPECT_EQ(ecc_over(p, 2, omega_partition(p, 1, 2).first), 1);
  EXPECT_EQ(ecc_over(p, 1, omega_partition(p, 1, 1).first), 2);
  EXPECT_EQ(ecc_over(p, 1, OmegaSet{}), 0);
  EXPECT_EQ(ecc_over(p, 2, omega_partition(p, 1, 2).second), 0);
}

TEST(Radius, Examples) {
  EXPECT_EQ(radius(generate(Family::clique, 4), 2).value, 3);
  EXPECT_EQ(radius(generate(Family::cycle, 5), 1).value, 4);
  const auto r = radius(path3(), 1);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.witness, 2);
  EXPECT_FALSE(r.below_connectivity);
}

TEST(Radius, Cliques) {
  for (int n = 2; n <= 5; ++n) {
    const Graph k = generate(Family::clique, n);
    for (int t = 0; t <= n - 2; ++t) EXPECT_EQ(radius(k, t).value, t + 1) << n << " " << t;
    if (n <= 4) {
      EXPECT_EQ(radius(k, n - 1).value, n - 1) << n;
    }
  }
}

TEST(Radius, Cycles) {
  for (int n = 3; n <= 7; ++n) {
    const Graph c = generate(Family::cycle, n);
    EXPECT_EQ(radius(c, 0).value, n / 2);
    EXPECT_EQ(radius(c, 1).value, n - 1);
  }
}

TEST(Radius, ZeroFailuresIsClassicRadius) {
  for (const auto& [name, g] : oracle::small_graphs(5))
    EXPECT_EQ(radius(g, 0).value, classic_radius(g)) << name;
  EXPECT_EQ(radius(generate(Family::hypercube, 8), 0).value, 3);
}

TEST(Radius, MatchesMessagePassingOracles) {
  for (const auto& [name, g] : oracle::small_graphs(4))
    for (int t = 0; t < static_cast<int>(g.size()); ++t) {
      const auto patterns = oracle::naive_patterns(g, t, static_cast<int>(g.size()));
      EXPECT_EQ(radius(g, t).value, oracle::radius_components(g, patterns)) << name << " t=" << t;
      if (t < connectivity(g)) {
        EXPECT_EQ(radius(g, t).value, oracle::radius_global(g, patterns)) << name << " t=" << t;
      }
    }
}

TEST(Radius, PhiStarRouteAgreesBelowConnectivity) {
  for (const auto& [name, g] : oracle::small_graphs(5))
    for (int t = 0; t < connectivity(g); ++t)
      EXPECT_EQ(radius(g, t).value, radius_phi_star(g, t)) << name << " t=" << t;
  EXPECT_THROW(radius_phi_star(path3(), 1), RegimeError);
}

TEST(Radius, WitnessIsSmallestArgmin) {
  for (const auto& [name, g] : oracle::small_graphs(5)) {
    const auto r = radius(g, 1);
    const auto best = std::min_element(r.node_ecc.begin(), r.node_ecc.end());
    EXPECT_EQ(r.witness, g.id(static_cast<std::size_t>(best - r.node_ecc.begin()))) << name;
    EXPECT_EQ(r.value, *best);
  }
}

TEST(Radius, ClampsLargeT) {
  const auto r = radius(path3(), 9);
  EXPECT_EQ(r.t, 2);
  EXPECT_EQ(r.value, radius(path3(), 2).value);
}

TEST(Radius, IndependentOfThreadCount) {
  const Graph g = generate(Family::cycle, 5);
  const auto a = radius(g, 2, {.threads = 1});
  const auto b = radius(g, 2, {.threads = 3});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.node_ecc, b.node_ecc);
}

TEST(NaiveLowerBound, Examples) {
  EXPECT_EQ(naive_lower_bound(generate(Family::clique, 3), 0), 1);
  const Graph c5 = generate(Family::cycle, 5);
  EXPECT_EQ(naive_lower_bound(c5, 0), 2);
  EXPECT_LE(naive_lower_bound(c5, 1), 4);
  EXPECT_THROW(naive_lower_bound(path3(), 1), RegimeError);
}

TEST(NaiveLowerBound, MatchesDefinitionByBruteForce) {
  for (const auto& [name, g] : oracle::small_graphs(4))
    for (int t = 0; t < connectivity(g); ++t) {
      int best = 0;
      for (const auto& phi : enumerate_patterns(g, t, static_cast<int>(g.size()))) {
        std::optional<int> fastest;
        for (NodeId v : g.ids())
          if (auto e = ecc_global(g, phi, v); e && (!fastest || *e < *fastest)) fastest = e;
        if (fastest) best = std::max(best, *fastest);
      }
      EXPECT_EQ(naive_lower_bound(g, t), best) << name << " t=" << t;
    }
}

}  // namespace
}  // namespace tradius
