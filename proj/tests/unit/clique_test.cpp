// Copyright 2026 The privbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privbasis/clique.hpp"

#include <random>

#include <gtest/gtest.h>

#include "privbasis/error.hpp"
#include "support/oracles.hpp"

namespace privbasis {
namespace {

std::vector<std::vector<ItemId>> as_vectors(const std::vector<Itemset>& cs) {
  std::vector<std::vector<ItemId>> out;
  for (const auto& c : cs) out.emplace_back(c.begin(), c.end());
  return out;
}

TEST(MaximalCliquesTest, Triangle) {
  PairGraph g{{1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}};
  EXPECT_EQ(maximal_cliques(g), (std::vector<Itemset>{Itemset{1, 2, 3}}));
}

TEST(MaximalCliquesTest, Path) {
  PairGraph g{{1, 2, 3}, {{1, 2}, {2, 3}}};
  EXPECT_EQ(maximal_cliques(g), (std::vector<Itemset>{Itemset{1, 2}, Itemset{2, 3}}));
}

TEST(MaximalCliquesTest, IsolatedNodesAreSingletons) {
  PairGraph g{{1, 2, 7}, {{1, 2}}};
  EXPECT_EQ(maximal_cliques(g), (std::vector<Itemset>{Itemset{1, 2}, Itemset{7}}));
}

TEST(MaximalCliquesTest, RejectsInvalidGraphs) {
  EXPECT_THROW(maximal_cliques(PairGraph{{1}, {{1, 1}}}), InvalidArgument);
  EXPECT_THROW(maximal_cliques(PairGraph{{1}, {{1, 2}}}), InvalidArgument);
}

TEST(MaximalCliquesTest, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<std::size_t> n_dist(1, 12);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = n_dist(rng);
    const double p = density(rng);
    std::vector<ItemId> nodes;
    for (std::size_t i = 0; i < n; ++i) nodes.push_back(static_cast<ItemId>(3 * i + 1));
    std::vector<ItemPair> edges;
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (coin(rng)) edges.emplace_back(nodes[j], nodes[i]);
      }
    }
    EXPECT_EQ(as_vectors(maximal_cliques(PairGraph{nodes, edges})), testing::subset_maximal_cliques(nodes, edges))
        << "trial " << trial;
  }
}

}  // namespace
}  // namespace privbasis
