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

#include "privbasis/eval/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

#include "privbasis/dataset.hpp"
#include "privbasis/eval/records.hpp"
#include "privbasis/miner.hpp"
#include "support/oracles.hpp"

namespace privbasis::eval {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("privbasis_experiment_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::mt19937_64 rng(51);
    save_fimi(testing::clustered_dataset(rng, 600, 9), dir_ / "syn.dat");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string plan_text(int seed) const {
    return R"({"datasets": [{"id": "syn", "path": "syn.dat"}], "k": [10], "eps": [0.5, 1.0],
               "repetitions": 3, "methods": ["pb", "tf", "pb-noise-off"], "seed": )" +
           std::to_string(seed) + R"(, "tf": {"m": [1, 2]}, "record_timing": false})";
  }

  fs::path dir_;
};

TEST(ParseConfigTest, OverridesAndRejectsUnknownKeys) {
  auto cfg = parse_privbasis_config(R"({"eps": 0.5, "k": 40, "alpha1": 0.2, "alpha2": 0.3, "alpha3": 0.5,
                                        "eta": 1.3, "lambda_cap": 8, "l_max": 10, "freq_mode": "literal",
                                        "clique_retries": 1})");
  EXPECT_EQ(cfg.eps, 0.5);
  EXPECT_EQ(cfg.k, 40u);
  EXPECT_EQ(cfg.alpha1, dp::Fraction(1, 5));
  EXPECT_EQ(cfg.alpha1 + cfg.alpha2 + cfg.alpha3, dp::Fraction(1));
  EXPECT_EQ(cfg.effective_eta(), 1.3);
  EXPECT_EQ(cfg.lambda_single_basis_cap, 8u);
  EXPECT_EQ(cfg.l_max, 10u);
  EXPECT_EQ(cfg.freq_mode, FreqElementsMode::kLiteralFrequency);
  EXPECT_EQ(cfg.clique_retries, 1u);
  EXPECT_THROW(parse_privbasis_config(R"({"epsilon": 1})"), InvalidArgument);
  EXPECT_THROW(parse_privbasis_config(R"({"freq_mode": "other"})"), InvalidArgument);
  EXPECT_THROW(parse_privbasis_config("{"), InvalidArgument);
  EXPECT_EQ(parse_privbasis_config("{}").k, PrivBasisConfig{}.k);
}

TEST(ParsePlanTest, ResolvesPathsAndValidates) {
  auto plan = parse_plan(R"({"datasets": [{"id": "a", "path": "x/a.dat"}, {"path": "/abs/b.dat"}],
                             "k": [5, 10], "eps": [1], "seed": 9,
                             "tf": {"m": [2], "selection": "exponential", "universe_mode": "explicit"}})",
                         "/base");
  ASSERT_EQ(plan.datasets.size(), 2u);
  EXPECT_EQ(plan.datasets[0].path, fs::path("/base/x/a.dat"));
  EXPECT_EQ(plan.datasets[1].id, "b");
  EXPECT_EQ(plan.repetitions, 3u);
  EXPECT_EQ(plan.methods, (std::vector<std::string>{"pb", "tf"}));
  EXPECT_EQ(plan.tf.m_values, (std::vector<std::size_t>{2}));
  EXPECT_EQ(plan.tf.selection, TfSelection::kExponentialSampling);
  EXPECT_EQ(plan.tf.universe_mode, TfUniverseMode::kExplicit);

  const std::string base = R"("datasets": [{"path": "a.dat"}], "k": [5], "eps": [1], "seed": 1)";
  EXPECT_THROW(parse_plan("{" + base + R"(, "methods": ["xx"]})", "/"), InvalidArgument);
  EXPECT_THROW(parse_plan("{" + base + R"(, "repetitions": 0})", "/"), InvalidArgument);
  EXPECT_THROW(parse_plan("{" + base + R"(, "colour": 1})", "/"), InvalidArgument);
  EXPECT_THROW(parse_plan(R"({"k": [5], "eps": [1], "seed": 1})", "/"), InvalidArgument);
}

TEST(RunSeedTest, DeterministicAndDistinct) {
  EXPECT_EQ(run_seed(1, "d", 10, 0.5, "pb", 0), run_seed(1, "d", 10, 0.5, "pb", 0));
  std::set<std::uint64_t> seeds;
  for (std::size_t rep = 0; rep < 10; ++rep) {
    seeds.insert(run_seed(1, "d", 10, 0.5, "pb", rep));
    seeds.insert(run_seed(1, "d", 10, 0.5, "tf", rep));
    seeds.insert(run_seed(2, "d", 10, 0.5, "pb", rep));
  }
  EXPECT_EQ(seeds.size(), 30u);
}

TEST(CsvLineTest, EmptyOptionalsAndQuoting) {
  RunRow row;
  row.dataset = "a,b";
  row.k = 5;
  row.eps = 0.25;
  row.method = "pb";
  row.rep = "0";
  row.fnr = 0.1;
  const auto fields = split_csv(csv_line(row));
  ASSERT_EQ(fields.size(), 19u);
  EXPECT_EQ(fields[0], "a,b");
  EXPECT_EQ(fields[2], "0.25");
  EXPECT_EQ(fields[5], "");
  EXPECT_EQ(fields[6], "0.1");
  EXPECT_EQ(fields[18], "ok");
  EXPECT_EQ(split_csv(std::string(kCsvHeader)).size(), 19u);
}

TEST_F(ExperimentTest, DeterministicRowsAndAggregates) {
  const auto plan = parse_plan(plan_text(17), dir_);
  const auto rows = run_experiments(plan, dir_ / "out1");
  run_experiments(plan, dir_ / "out2");
  EXPECT_EQ(read_file(dir_ / "out1" / "results.csv"), read_file(dir_ / "out2" / "results.csv"));
  ASSERT_EQ(rows.size(), 2u * 3u * 4u);

  // Each cell: three runs then one aggregate holding their mean.
  for (std::size_t cell = 0; cell < rows.size() / 4; ++cell) {
    double sum = 0;
    for (std::size_t r = 0; r < 3; ++r) {
      const auto& row = rows[cell * 4 + r];
      ASSERT_EQ(row.status, "ok") << row.method;
      EXPECT_EQ(row.rep, std::to_string(r));
      EXPECT_FALSE(row.wall_ms.has_value());
      sum += *row.fnr;
    }
    const auto& agg = rows[cell * 4 + 3];
    EXPECT_EQ(agg.rep, "mean");
    EXPECT_EQ(agg.status, "aggregate of 3/3 runs");
    EXPECT_NEAR(*agg.fnr, sum / 3, 1e-15);
    EXPECT_TRUE(agg.fnr_se.has_value());
  }
  std::set<std::uint64_t> seeds;
  for (const auto& row : rows) {
    if (row.method == "pb" && row.seed) seeds.insert(*row.seed);
  }
  EXPECT_EQ(seeds.size(), 6u);
}

TEST_F(ExperimentTest, MetricsRecomputeFromRunFiles) {
  const auto plan = parse_plan(plan_text(3), dir_);
  run_experiments(plan, dir_ / "out");
  const auto d = load_fimi(dir_ / "syn.dat");
  std::vector<std::vector<ItemId>> actual;
  for (const auto& x : testing::powerset_top_k(d, 10)) actual.push_back(x.items);

  std::ifstream csv(dir_ / "out" / "results.csv");
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, kCsvHeader);
  int checked = 0;
  while (std::getline(csv, line)) {
    const auto f = split_csv(line);
    if (f[4] == "mean") continue;
    const fs::path run = dir_ / "out" / "runs" / (f[0] + "_k" + f[1] + "_eps" + f[2] + "_" + f[3] + "_rep" + f[4] + ".json");
    const auto release = read_release(run);

    std::vector<double> errors;
    int hits = 0;
    for (const auto& x : release) {
      const std::vector<ItemId> ids(x.itemset.begin(), x.itemset.end());
      hits += std::find(actual.begin(), actual.end(), ids) != actual.end();
      const double truth = static_cast<double>(testing::scan_support(d, ids)) / static_cast<double>(d.size());
      if (truth > 0) errors.push_back(std::abs(x.noisy_frequency - truth) / truth);
    }
    std::sort(errors.begin(), errors.end());
    const std::size_t n = errors.size();
    ASSERT_GT(n, 0u);
    const double med = n % 2 ? errors[n / 2] : (errors[n / 2 - 1] + errors[n / 2]) / 2;
    EXPECT_NEAR(std::stod(f[7]), med, 1e-12) << line;
    EXPECT_NEAR(std::stod(f[6]), 1.0 - hits / 10.0, 1e-12) << line;
    ++checked;
  }
  EXPECT_EQ(checked, 18);
}

TEST_F(ExperimentTest, NoiseOffHasZeroFnrWhenCandidatesCoverTruth) {
  const auto plan = parse_plan(plan_text(5), dir_);
  const auto rows = run_experiments(plan, dir_ / "out");
  const auto d = load_fimi(dir_ / "syn.dat");
  PrivBasisConfig cfg = plan.privbasis;
  cfg.k = 10;
  auto off = dp::NoiseSource::NoiseOff();
  const auto basis = privbasis_main(d, cfg, off).log.basis;
  bool covered = true;
  for (const auto& x : exact_top_k(d, 10)) covered = covered && basis.covers(x.itemset);
  ASSERT_TRUE(covered);
  int seen = 0;
  for (const auto& row : rows) {
    if (row.method != "pb-noise-off" || row.rep == "mean") continue;
    EXPECT_EQ(*row.fnr, 0.0);
    EXPECT_EQ(*row.re, 0.0);
    ++seen;
  }
  EXPECT_EQ(seen, 6);
}

TEST_F(ExperimentTest, MethodErrorsBecomeRows) {
  auto plan = parse_plan(plan_text(1), dir_);
  plan.k_values = {1000000};
  plan.methods = {"tf"};
  plan.tf.m_values = {9};
  plan.tf.universe_mode = TfUniverseMode::kExplicit;
  plan.tf.explicit_guard = 10;
  const auto rows = run_experiments(plan, dir_ / "out");
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].status.rfind("error: ", 0), 0u);
  EXPECT_EQ(rows[3].status, "aggregate of 0/3 runs");
}

}  // namespace
}  // namespace privbasis::eval
