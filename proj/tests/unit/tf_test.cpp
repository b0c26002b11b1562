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

#include "privbasis/tf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "privbasis/error.hpp"
#include "privbasis/miner.hpp"
#include "support/oracles.hpp"

namespace privbasis {
namespace {

// Upper 0.1% point of chi-square with df degrees of freedom (Wilson-Hilferty).
double chi_square_critical(std::size_t df) {
  const double d = static_cast<double>(df);
  const double a = 2.0 / (9.0 * d);
  return d * std::pow(1.0 - a + 3.09 * std::sqrt(a), 3.0);
}

// Independent item frequencies.
TransactionDataset independent_items(std::mt19937_64& rng, std::size_t n, const std::vector<double>& p) {
  std::vector<std::vector<ItemId>> rows(n);
  for (auto& row : rows) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (std::bernoulli_distribution(p[i])(rng)) row.push_back(static_cast<ItemId>(i));
    }
  }
  std::vector<ItemId> universe(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) universe[i] = static_cast<ItemId>(i);
  return TransactionDataset(rows, universe);
}

TEST(TfFormulaTest, UniverseSize) {
  EXPECT_EQ(universe_size(16470, 1), 16470);
  EXPECT_EQ(universe_size(3, 2), 6);
  EXPECT_EQ(universe_size(119, 2), 7140);
  EXPECT_EQ(universe_size(5, 5), 31);
  EXPECT_THROW(universe_size(3, 4), InvalidArgument);
  // Compare a huge value through logarithms of binomials.
  double expected = 0;
  for (int i = 1; i <= 8; ++i) {
    expected += std::exp(std::lgamma(16471.0) - std::lgamma(i + 1.0) - std::lgamma(16471.0 - i) - 60.0);
  }
  EXPECT_NEAR(log_big(universe_size(16470, 8)), std::log(expected) + 60.0, 1e-9);
}

TEST(TfFormulaTest, GammaMatchesPublishedThresholds) {
  EXPECT_NEAR(gamma(100, 1.0, 88162, 0.9, 16470) * 88162, 5768, 1.0);
  EXPECT_NEAR(gamma(100, 1.0, 8124, 0.9, 7104) * 8124 / 5433, 1.0, 1e-3);
  const double g = gamma(50, 1.0, 1000, 0.9, 300);
  EXPECT_NEAR(gamma(50, 2.0, 1000, 0.9, 300), g / 2, 1e-15);
  EXPECT_DOUBLE_EQ(g, 200.0 / 1000 * (std::log(50 / 0.9) + std::log(300.0)));
  EXPECT_THROW(gamma(0, 1.0, 10, 0.9, 5), InvalidArgument);
}

TEST(TfFormulaTest, TruncatedFrequency) {
  EXPECT_DOUBLE_EQ(truncated_frequency(0.3, 0.5, 0.1), 0.4);
  EXPECT_DOUBLE_EQ(truncated_frequency(0.6, 0.5, 0.1), 0.6);
  EXPECT_TRUE(pruning_disabled(0.05, 0.06));
  EXPECT_TRUE(pruning_disabled(0.05, 0.05));
  EXPECT_FALSE(pruning_disabled(0.05, 0.04));
}

TEST(TfConfigTest, Validation) {
  TfConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  auto bad = [](auto mutate) {
    TfConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), InvalidArgument);
  };
  bad([](TfConfig& c) { c.k = 0; });
  bad([](TfConfig& c) { c.m = 0; });
  bad([](TfConfig& c) { c.rho = 1.0; });
  bad([](TfConfig& c) { c.eps = -1; });
}

TEST(ShortlexRankTest, RoundTripsAgainstEnumeration) {
  const std::vector<ItemId> universe{2, 5, 7, 9, 11, 14};
  const std::size_t m = 3;
  std::vector<Itemset> all;
  for (std::uint64_t mask = 1; mask < 64; ++mask) {
    std::vector<ItemId> x;
    for (std::size_t j = 0; j < universe.size(); ++j) {
      if (mask >> j & 1) x.push_back(universe[j]);
    }
    if (x.size() <= m) all.emplace_back(x);
  }
  std::sort(all.begin(), all.end(), shortlex_less);
  ASSERT_EQ(BigCount(all.size()), universe_size(universe.size(), m));
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(shortlex_rank(universe, all[i]), BigCount(i));
    EXPECT_EQ(shortlex_unrank(universe, m, BigCount(i)), all[i]);
  }
}

TEST(TfTest, NoiseOffReturnsExactTopK) {
  std::mt19937_64 rng(31);
  auto d = independent_items(rng, 3000, {0.9, 0.7, 0.6, 0.4, 0.3, 0.2, 0.1, 0.05});
  for (auto selection : {TfSelection::kLaplaceOnTruncated, TfSelection::kExponentialSampling}) {
    for (auto mode : {TfUniverseMode::kExplicit, TfUniverseMode::kTruncatedPruning}) {
      for (std::size_t m : {1u, 2u, 3u}) {
        TfConfig cfg;
        cfg.k = 6;
        cfg.m = m;
        cfg.eps = 5.0;
        cfg.selection = selection;
        cfg.universe_mode = mode;
        auto off = dp::NoiseSource::NoiseOff();
        auto result = tf_select_and_release(d, cfg, off);
        auto exact = exact_top_k(d, cfg.k, m);
        ASSERT_EQ(result.released.size(), exact.size());
        for (std::size_t i = 0; i < exact.size(); ++i) {
          EXPECT_EQ(result.released[i].itemset, exact[i].itemset);
          EXPECT_EQ(result.released[i].noisy_frequency, static_cast<double>(exact[i].support) / 3000.0);
        }
        EXPECT_EQ(result.log.pool_selections, 0u);
      }
    }
  }
}

TEST(TfTest, LogAndLedger) {
  std::mt19937_64 rng(32);
  auto d = independent_items(rng, 2000, {0.9, 0.8, 0.5, 0.3, 0.1, 0.05});
  TfConfig cfg;
  cfg.k = 2;
  cfg.m = 2;
  cfg.eps = 0.05;
  dp::NoiseSource src(1);
  auto result = tf_select_and_release(d, cfg, src);
  const auto& log = result.log;
  EXPECT_EQ(log.universe_size, "21");
  EXPECT_DOUBLE_EQ(log.gamma, gamma(2, 0.05, 2000, 0.9, 21));
  EXPECT_FALSE(log.pruning_disabled);
  EXPECT_EQ(log.enumerated + std::stoull(log.residual_pool), 21u);
  ASSERT_EQ(log.ledger.size(), 2u);
  EXPECT_EQ(log.ledger[0].label, "tf-select");
  EXPECT_EQ(log.ledger[0].fraction, dp::Fraction(1, 2));
  EXPECT_EQ(log.ledger[1].label, "tf-release");
  EXPECT_EQ(log.ledger[0].fraction + log.ledger[1].fraction, dp::Fraction(1));
  EXPECT_EQ(result.released.size(), 2u);
}

// Ordered (first, second) selections over many seeds.
std::map<std::pair<Itemset, Itemset>, int> selection_counts(const TransactionDataset& d, const TfConfig& cfg,
                                                           int runs, std::uint64_t seed_base) {
  std::map<std::pair<Itemset, Itemset>, int> counts;
  for (int r = 0; r < runs; ++r) {
    dp::NoiseSource src(seed_base + static_cast<std::uint64_t>(r));
    auto res = tf_select_and_release(d, cfg, src);
    ++counts[{res.released[0].itemset, res.released[1].itemset}];
  }
  return counts;
}

TEST(TfTest, ExponentialSelectionMatchesClosedForm) {
  std::mt19937_64 rng(33);
  const double n = 2000;
  auto d = independent_items(rng, 2000, {0.9, 0.8, 0.5, 0.3, 0.1, 0.05});
  TfConfig cfg;
  cfg.k = 2;
  cfg.m = 2;
  cfg.eps = 0.05;
  cfg.selection = TfSelection::kExponentialSampling;

  // Oracle weights exp(eps N f^ / (4k)) over every itemset of length <= 2.
  auto all = testing::powerset_all(d, 2);
  auto top = testing::powerset_top_k(d, 64);
  std::uint64_t fk_support = 0;
  std::size_t rank = 0;
  for (const auto& x : top) {
    if (x.items.size() > 2) continue;
    if (++rank == cfg.k) {
      fk_support = x.support;
      break;
    }
  }
  const double f_k = fk_support / n;
  const double g = 4.0 * 2 / (cfg.eps * n) * (std::log(2 / 0.9) + std::log(21.0));
  ASSERT_GT(f_k - g, 0.0);
  std::vector<double> w;
  std::vector<Itemset> ids;
  double total = 0;
  for (const auto& x : all) {
    ids.emplace_back(x.items);
    w.push_back(std::exp(cfg.eps * n * std::max(x.support / n, f_k - g) / (4.0 * cfg.k)));
    total += w.back();
  }

  for (auto mode : {TfUniverseMode::kExplicit, TfUniverseMode::kTruncatedPruning}) {
    cfg.universe_mode = mode;
    constexpr int kRuns = 6000;
    auto counts = selection_counts(d, cfg, kRuns, 1000);
    double stat = 0, other_expected = 0;
    int other_observed = 0;
    std::size_t cells = 0;
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = 0; b < ids.size(); ++b) {
        if (a == b) continue;
        const double e = kRuns * w[a] / total * w[b] / (total - w[a]);
        auto it = counts.find({ids[a], ids[b]});
        const int o = it == counts.end() ? 0 : it->second;
        if (e < 5) {
          other_expected += e;
          other_observed += o;
          continue;
        }
        stat += (o - e) * (o - e) / e;
        ++cells;
      }
    }
    if (other_expected > 0) {
      stat += (other_observed - other_expected) * (other_observed - other_expected) / other_expected;
      ++cells;
    }
    EXPECT_LT(stat, chi_square_critical(cells - 1)) << "mode " << static_cast<int>(mode);
  }
}

TEST(TfTest, LaplaceSelectionAgreesAcrossUniverseModes) {
  std::mt19937_64 rng(34);
  auto d = independent_items(rng, 2000, {0.9, 0.8, 0.5, 0.3, 0.1, 0.05});
  TfConfig cfg;
  cfg.k = 2;
  cfg.m = 2;
  cfg.eps = 0.05;
  constexpr int kRuns = 6000;
  cfg.universe_mode = TfUniverseMode::kExplicit;
  auto explicit_counts = selection_counts(d, cfg, kRuns, 5000);
  cfg.universe_mode = TfUniverseMode::kTruncatedPruning;
  auto pruned_counts = selection_counts(d, cfg, kRuns, 90000);

  std::map<std::pair<Itemset, Itemset>, std::pair<int, int>> joint;
  for (const auto& [key, c] : explicit_counts) joint[key].first = c;
  for (const auto& [key, c] : pruned_counts) joint[key].second = c;
  double stat = 0;
  std::size_t cells = 0;
  int rare_a = 0, rare_b = 0;
  for (const auto& [key, c] : joint) {
    if (c.first + c.second < 20) {
      rare_a += c.first;
      rare_b += c.second;
      continue;
    }
    stat += static_cast<double>(c.first - c.second) * (c.first - c.second) / (c.first + c.second);
    ++cells;
  }
  if (rare_a + rare_b > 0) {
    stat += static_cast<double>(rare_a - rare_b) * (rare_a - rare_b) / (rare_a + rare_b);
    ++cells;
  }
  ASSERT_GT(cells, 3u);
  EXPECT_LT(stat, chi_square_critical(cells - 1));
}

TEST(TfTest, ReleaseNoiseHasExpectedVariance) {
  std::vector<std::vector<ItemId>> rows(1000);
  for (std::size_t t = 0; t < rows.size(); ++t) rows[t].push_back(t < 900 ? 0 : 1);
  TransactionDataset d(rows);
  TfConfig cfg;
  cfg.k = 1;
  cfg.m = 1;
  cfg.eps = 1.0;
  constexpr int kRuns = 20000;
  double sum_sq = 0;
  for (int r = 0; r < kRuns; ++r) {
    dp::NoiseSource src(static_cast<std::uint64_t>(r));
    auto res = tf_select_and_release(d, cfg, src);
    const double truth = res.released[0].itemset == Itemset{0} ? 0.9 : 0.1;
    const double err = res.released[0].noisy_frequency - truth;
    sum_sq += err * err;
  }
  const double scale = 2.0 * cfg.k / (1000 * cfg.eps);
  EXPECT_NEAR(sum_sq / kRuns / (2 * scale * scale), 1.0, 0.05);
}

TEST(TfTest, ExplicitGuardAndInputErrors) {
  std::mt19937_64 rng(35);
  auto d = independent_items(rng, 100, {0.5, 0.5, 0.5, 0.5});
  TfConfig cfg;
  cfg.k = 2;
  cfg.m = 2;
  cfg.universe_mode = TfUniverseMode::kExplicit;
  cfg.explicit_guard = 5;
  dp::NoiseSource src(1);
  EXPECT_THROW(tf_select_and_release(d, cfg, src), InvalidArgument);
  cfg.explicit_guard = 10;
  EXPECT_NO_THROW(tf_select_and_release(d, cfg, src));
  cfg.m = 5;
  EXPECT_THROW(tf_select_and_release(d, cfg, src), InvalidArgument);
  cfg.m = 1;
  EXPECT_THROW(tf_select_and_release(TransactionDataset{}, cfg, src), EmptyDatasetError);
}

TEST(TfTest, RetailSingletonsDisablePruning) {
  auto d = testing::try_load("retail.dat");
  if (!d) GTEST_SKIP() << "retail.dat not available";
  TfConfig cfg;
  cfg.k = 100;
  cfg.m = 1;
  dp::NoiseSource src(3);
  auto res = tf_select_and_release(*d, cfg, src);
  EXPECT_EQ(res.log.universe_size, "16470");
  EXPECT_NEAR(res.log.gamma * 88162, 5768, 1.0);
  EXPECT_TRUE(res.log.pruning_disabled);
  EXPECT_EQ(res.released.size(), 100u);
}

}  // namespace
}  // namespace privbasis
