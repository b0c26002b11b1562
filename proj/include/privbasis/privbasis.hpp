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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "privbasis/basis.hpp"
#include "privbasis/dataset.hpp"
#include "privbasis/dp/ledger.hpp"
#include "privbasis/dp/noise.hpp"
#include "privbasis/itemset.hpp"
#include "privbasis/release.hpp"

namespace privbasis {

/// How GetFreqElements scores candidates. kSupport uses the support count
/// with a one-sided exponent eps*supp/count per round. kLiteralFrequency uses
/// the frequency itself, exp(f*eps/count), which carries no factor of N.
enum class FreqElementsMode { kSupport, kLiteralFrequency };

struct PrivBasisConfig {
  double eps = 1.0;
  std::size_t k = 100;
  dp::Fraction alpha1{1, 10};
  dp::Fraction alpha2{2, 5};
  dp::Fraction alpha3{1, 2};
  /// Safety margin; unset means 1.2 when k <= 100 and 1.1 otherwise.
  std::optional<double> eta;
  std::size_t lambda_single_basis_cap = 12;
  std::size_t l_max = 12;
  FreqElementsMode freq_mode = FreqElementsMode::kSupport;
  /// Attempts with a 25% smaller pair count when a clique is too long.
  std::size_t clique_retries = 3;

  double effective_eta() const;
  /// Throws InvalidArgument describing the first violated constraint.
  void validate() const;
};

struct RunLog {
  std::size_t k1 = 0;
  double theta = 0.0;
  std::size_t lambda = 0;
  std::optional<std::size_t> lambda2;  // multi-basis branch only
  std::size_t pairs_used = 0;          // after oversized-clique retries
  dp::Fraction beta1{0};
  dp::Fraction beta2{0};
  BasisSet basis;
  std::vector<dp::LedgerEntry> ledger;
  std::vector<std::string> notes;

  /// Human-readable multi-line summary.
  std::string describe() const;
};

struct LambdaEstimate {
  std::size_t lambda = 0;
  std::size_t k1 = 0;
  double theta = 0.0;
};

/// Private estimate of the number of distinct items in the top-k itemsets:
/// the exponential mechanism over item ranks i in [1, |I|] with quality
/// (1 - |theta - fitem_i|) * N, where theta is the frequency of the
/// ceil(k*eta)-th itemset.
LambdaEstimate get_lambda(const TransactionDataset& d, std::size_t k, double eps, double eta, dp::NoiseSource& src,
                          RunLog* log = nullptr);

/// Selects `count` candidates by repeated exponential mechanism without
/// replacement. A count above |candidates| is clamped and noted in `log`.
std::vector<Itemset> get_freq_elements(const TransactionDataset& d, std::span<const Itemset> candidates,
                                       std::size_t count, double eps, dp::NoiseSource& src,
                                       FreqElementsMode mode = FreqElementsMode::kSupport, RunLog* log = nullptr);

/// floor(l2' / sqrt(max(1, l2'/lambda))) with l2' = eta*k - lambda, clamped
/// to [0, lambda*(lambda-1)/2].
std::size_t lambda2_heuristic(std::size_t k, std::size_t lambda, double eta);

struct PrivBasisResult {
  Release released;
  bool short_output = false;
  RunLog log;
};

/// The full pipeline. Every error is raised before anything is released.
PrivBasisResult privbasis_main(const TransactionDataset& d, const PrivBasisConfig& cfg, dp::NoiseSource& src);

}  // namespace privbasis
