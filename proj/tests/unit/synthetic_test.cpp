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

#include "privbasis/synthetic.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "privbasis/error.hpp"
#include "privbasis/miner.hpp"

namespace privbasis {
namespace {

TEST(SyntheticTest, PlantsExactCountsWithoutBackground) {
  SyntheticOptions o;
  o.n_transactions = 100;
  o.universe_size = 10;
  o.planted = {{Itemset{1, 2}, 0.40}, {Itemset{5, 6, 7}, 0.25}};
  o.seed = 3;
  auto d = generate_synthetic(o);
  EXPECT_EQ(d.support(Itemset{1, 2}), 40u);
  EXPECT_EQ(d.support(Itemset{5, 6, 7}), 25u);
}

TEST(SyntheticTest, BackgroundNeverLowersPlantedSupport) {
  SyntheticOptions o;
  o.n_transactions = 100;
  o.universe_size = 10;
  o.planted = {{Itemset{1, 2}, 0.40}};
  o.background_rate = 0.3;
  o.seed = 4;
  EXPECT_GE(generate_synthetic(o).frequency(Itemset{1, 2}), 0.40);
}

TEST(SyntheticTest, NoPlantsNoBackgroundGivesEmptyTransactions) {
  SyntheticOptions o;
  o.n_transactions = 100;
  o.universe_size = 5;
  auto d = generate_synthetic(o);
  EXPECT_EQ(d.size(), 100u);
  EXPECT_EQ(d.total_length(), 0u);
}

TEST(SyntheticTest, DeterministicPerSeed) {
  SyntheticOptions o;
  o.n_transactions = 200;
  o.universe_size = 12;
  o.planted = {{Itemset{0, 3}, 0.3}};
  o.background_rate = 0.2;
  o.seed = 99;
  auto a = generate_synthetic(o);
  auto b = generate_synthetic(o);
  for (std::size_t t = 0; t < a.size(); ++t) {
    auto x = a.transaction(t);
    auto y = b.transaction(t);
    ASSERT_TRUE(std::equal(x.begin(), x.end(), y.begin(), y.end()));
  }
}

TEST(SyntheticTest, MoreFrequentPlantRanksFirst) {
  SyntheticOptions o;
  o.n_transactions = 1000;
  o.universe_size = 20;
  o.planted = {{Itemset{10, 11, 12}, 0.3}, {Itemset{1, 2, 3}, 0.5}};
  o.seed = 8;
  auto top = exact_top_k(generate_synthetic(o), 14);
  auto pos = [&](const Itemset& x) {
    return std::find_if(top.begin(), top.end(), [&](const RankedItemset& r) { return r.itemset == x; }) - top.begin();
  };
  EXPECT_LT(pos(Itemset{1, 2, 3}), pos(Itemset{10, 11, 12}));
  EXPECT_LT(pos(Itemset{10, 11, 12}), static_cast<std::ptrdiff_t>(top.size()));
}

TEST(SyntheticTest, RejectsUnsatisfiablePlants) {
  SyntheticOptions o;
  o.n_transactions = 100;
  o.universe_size = 10;
  o.planted = {{Itemset{1}, 0.2}, {Itemset{1, 2}, 0.5}};
  EXPECT_THROW(generate_synthetic(o), Error);
  o.planted = {{Itemset{1, 2}, 0.2}, {Itemset{1, 2}, 0.5}};
  EXPECT_THROW(generate_synthetic(o), Error);
  o.planted = {{Itemset{1, 20}, 0.2}};
  EXPECT_THROW(generate_synthetic(o), InvalidArgument);
  o.planted = {{Itemset{1}, 1.5}};
  EXPECT_THROW(generate_synthetic(o), InvalidArgument);
}

}  // namespace
}  // namespace privbasis
