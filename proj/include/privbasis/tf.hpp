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

// The truncated-frequency baseline: private top-k selection among all
// itemsets of length at most m, followed by Laplace release.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "privbasis/dataset.hpp"
#include "privbasis/dp/ledger.hpp"
#include "privbasis/dp/noise.hpp"
#include "privbasis/release.hpp"

namespace privbasis {

using BigCount = boost::multiprecision::cpp_int;

enum class TfSelection { kLaplaceOnTruncated, kExponentialSampling };
enum class TfUniverseMode { kExplicit, kTruncatedPruning };

struct TfConfig {
  std::size_t k = 100;
  std::size_t m = 1;
  double rho = 0.9;
  double eps = 1.0;
  TfSelection selection = TfSelection::kLaplaceOnTruncated;
  TfUniverseMode universe_mode = TfUniverseMode::kTruncatedPruning;
  /// Largest number of itemsets materialised explicitly.
  std::uint64_t explicit_guard = 10'000'000;

  void validate() const;
};

/// sum_{i=1..m} C(n_items, i). Throws InvalidArgument when m > n_items.
BigCount universe_size(std::size_t n_items, std::size_t m);

/// Natural logarithm of a positive big integer.
double log_big(const BigCount& x);

/// (4k / (eps N)) (ln(k/rho) + ln|U|).
double gamma(std::size_t k, double eps, double n, double rho, const BigCount& u_size);

/// max(f_x, f_k - gamma).
double truncated_frequency(double f_x, double f_k, double gamma);

/// True when the truncation floor f_k - gamma is not positive.
inline bool pruning_disabled(double f_k, double gamma) { return gamma >= f_k; }

struct TfLog {
  std::size_t m = 0;
  double f_k = 0.0;
  double gamma = 0.0;
  std::string universe_size;
  bool pruning_disabled = false;
  std::uint64_t enumerated = 0;   // itemsets materialised with exact supports
  std::string residual_pool;      // itemsets represented only by the floor
  std::size_t pool_selections = 0;
  std::vector<dp::LedgerEntry> ledger;
};

struct TfResult {
  Release released;
  TfLog log;
};

/// Selects k itemsets with half the budget and releases their frequencies
/// with Laplace(2k/(N eps)) noise using the other half.
TfResult tf_select_and_release(const TransactionDataset& d, const TfConfig& cfg, dp::NoiseSource& src);

/// Position of `x` in the shortlex enumeration of all itemsets of length
/// 1..m over `universe` (sorted). Every item of x must be in the universe.
BigCount shortlex_rank(std::span<const ItemId> universe, const Itemset& x);

/// Inverse of shortlex_rank.
Itemset shortlex_unrank(std::span<const ItemId> universe, std::size_t m, BigCount rank);

}  // namespace privbasis
