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
#include <span>
#include <vector>

#include "privbasis/dataset.hpp"
#include "privbasis/itemset.hpp"
#include "privbasis/release.hpp"

namespace privbasis::eval {

/// Fraction of `actual_top_k` missing from `published`. Missing slots in a
/// short release therefore count as false negatives. Throws InvalidArgument
/// when actual_top_k is empty.
double fnr(std::span<const Itemset> published, std::span<const Itemset> actual_top_k);

struct RelativeError {
  double median = 0.0;            // NaN when no published itemset has f > 0
  std::size_t counted = 0;        // itemsets entering the median
  std::size_t zero_support = 0;   // published itemsets with f = 0, excluded
};

/// Median over published itemsets of |nf - f| / f.
RelativeError relative_error(const Release& published, const TransactionDataset& d);

/// Median of the values (mean of the middle two for even counts); NaN when empty.
double median(std::vector<double> values);

std::vector<Itemset> itemsets_of(const Release& r);

}  // namespace privbasis::eval
