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

// Seeded experiment plans comparing PrivBasis with the TF baseline.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "privbasis/privbasis.hpp"
#include "privbasis/tf.hpp"

namespace privbasis::eval {

/// Reads PrivBasis options from a JSON object. Recognised keys: eps, k,
/// alpha1, alpha2, alpha3, eta, lambda_cap, l_max, freq_mode
/// ("support" | "literal"), clique_retries. Unknown keys are rejected.
/// Keys that are absent keep the value from `base`.
PrivBasisConfig parse_privbasis_config(std::string_view json_text, PrivBasisConfig base = {});

struct TfPlan {
  std::vector<std::size_t> m_values{1, 2, 3};
  double rho = 0.9;
  TfSelection selection = TfSelection::kLaplaceOnTruncated;
  TfUniverseMode universe_mode = TfUniverseMode::kTruncatedPruning;
  std::uint64_t explicit_guard = 10'000'000;
};

struct DatasetSpec {
  std::string id;
  std::filesystem::path path;
};

struct ExperimentPlan {
  std::vector<DatasetSpec> datasets;
  std::vector<std::size_t> k_values;
  std::vector<double> eps_values;
  std::size_t repetitions = 3;
  std::vector<std::string> methods;  // "pb", "tf", "pb-noise-off"
  std::uint64_t seed = 0;
  PrivBasisConfig privbasis;         // eps and k are taken from the grid
  TfPlan tf;
  bool record_timing = true;         // false leaves wall_ms empty

  void validate() const;
};

/// Parses a plan file. Relative dataset paths resolve against `base_dir`.
ExperimentPlan parse_plan(std::string_view json_text, const std::filesystem::path& base_dir);
ExperimentPlan load_plan(const std::filesystem::path& path);

/// One CSV row: a single run, or a per-cell aggregate when rep is "mean".
struct RunRow {
  std::string dataset;
  std::size_t k = 0;
  double eps = 0.0;
  std::string method;
  std::string rep;
  std::optional<std::uint64_t> seed;
  std::optional<double> fnr;
  std::optional<double> re;
  std::optional<double> wall_ms;
  std::optional<std::size_t> lambda;
  std::optional<std::size_t> lambda2;
  std::optional<std::size_t> width;
  std::optional<std::size_t> length;
  std::optional<std::size_t> m;
  std::optional<double> gamma;
  std::optional<std::size_t> zero_support;
  std::optional<double> fnr_se;
  std::optional<double> re_se;
  std::string status = "ok";
};

inline constexpr std::string_view kCsvHeader =
    "dataset,k,eps,method,rep,seed,fnr,re,wall_ms,lambda,lambda2,width,length,m,gamma,zero_support,fnr_se,re_se,"
    "status";

std::string csv_line(const RunRow& row);

/// Seed of one run, derived from the plan seed and the cell coordinates.
std::uint64_t run_seed(std::uint64_t plan_seed, std::string_view dataset, std::size_t k, double eps,
                       std::string_view method, std::size_t rep);

/// Runs every (dataset, k, eps, method, repetition) of the plan. Writes
/// results.csv and one release file per run under runs/ in `out_dir`, and
/// returns the rows in file order. Method failures become rows with a
/// non-"ok" status.
std::vector<RunRow> run_experiments(const ExperimentPlan& plan, const std::filesystem::path& out_dir);

}  // namespace privbasis::eval
