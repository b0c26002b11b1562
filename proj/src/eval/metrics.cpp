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

#include "privbasis/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "privbasis/error.hpp"
#include "privbasis/miner.hpp"

namespace privbasis::eval {

double fnr(std::span<const Itemset> published, std::span<const Itemset> actual_top_k) {
  if (actual_top_k.empty()) throw InvalidArgument("actual top-k list is empty");
  std::unordered_set<Itemset, ItemsetHash> seen(published.begin(), published.end());
  std::size_t missing = 0;
  for (const auto& x : actual_top_k) missing += seen.contains(x) ? 0 : 1;
  return static_cast<double>(missing) / static_cast<double>(actual_top_k.size());
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

RelativeError relative_error(const Release& published, const TransactionDataset& d) {
  if (d.empty()) throw EmptyDatasetError();
  auto itemsets = itemsets_of(published);
  auto supports = supports_of(d, itemsets);
  const double n = static_cast<double>(d.size());
  RelativeError out;
  std::vector<double> ratios;
  for (std::size_t i = 0; i < published.size(); ++i) {
    if (supports[i] == 0) {
      ++out.zero_support;
      continue;
    }
    const double f = static_cast<double>(supports[i]) / n;
    ratios.push_back(std::abs(published[i].noisy_frequency - f) / f);
  }
  out.counted = ratios.size();
  out.median = median(std::move(ratios));
  return out;
}

std::vector<Itemset> itemsets_of(const Release& r) {
  std::vector<Itemset> out;
  out.reserve(r.size());
  for (const auto& x : r) out.push_back(x.itemset);
  return out;
}

}  // namespace privbasis::eval
