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

// Exact (non-private) frequent itemset mining. These functions are the
// ground truth for evaluation and supply the data-dependent thresholds that
// the private mechanisms feed through their own noise.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "privbasis/dataset.hpp"
#include "privbasis/itemset.hpp"

namespace privbasis {

struct SupportedItemset {
  Itemset itemset;
  std::uint64_t support = 0;
};

struct RankedItemset {
  Itemset itemset;
  std::uint64_t support = 0;
  std::size_t rank = 0;  // 1-based
};

/// Total ranking order: higher support first, ties broken by shortlex_less.
inline bool ranks_before(std::uint64_t support_a, const Itemset& a, std::uint64_t support_b, const Itemset& b) {
  if (support_a != support_b) return support_a > support_b;
  return shortlex_less(a, b);
}

/// One tid-bitset per indexed item (bit t set when transaction t holds it).
class VerticalIndex {
 public:
  VerticalIndex(const TransactionDataset& d, std::span<const ItemId> items);

  std::size_t words() const noexcept { return words_; }
  std::size_t n_transactions() const noexcept { return n_; }
  bool has(ItemId id) const { return slot_.contains(id); }
  std::span<const std::uint64_t> bits(ItemId id) const;

  /// Writes the tidset of `x` into `out` (resized to words()). Every item of
  /// `x` must be indexed; the empty itemset yields all transactions.
  void tidset(const Itemset& x, std::vector<std::uint64_t>& out) const;
  std::uint64_t support(const Itemset& x) const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::unordered_map<ItemId, std::size_t> slot_;
  std::vector<std::uint64_t> bits_;
};

struct ItemSupport {
  ItemId item = 0;
  std::uint64_t support = 0;
};

/// Every universe item with its support, most frequent first (ties by id).
std::vector<ItemSupport> ranked_items(const TransactionDataset& d);

/// The k non-empty itemsets of highest support under ranks_before. Returns
/// fewer when fewer itemsets have positive support. `max_length` > 0 limits
/// the itemset length. Throws EmptyDatasetError / InvalidArgument (k = 0).
std::vector<RankedItemset> exact_top_k(const TransactionDataset& d, std::size_t k, std::size_t max_length = 0);

/// The j highest-support members of `candidates` under ranks_before (all of
/// them, ranked, when j >= |candidates|).
std::vector<RankedItemset> exact_top_elements(const TransactionDataset& d, std::span<const Itemset> candidates,
                                              std::size_t j);

/// Supports of the given itemsets, in input order.
std::vector<std::uint64_t> supports_of(const TransactionDataset& d, std::span<const Itemset> itemsets);

/// All non-empty itemsets with support >= min_support (and length <=
/// max_length when positive), in shortlex order. min_support must be >= 1.
std::vector<SupportedItemset> mine_min_support(const TransactionDataset& d, std::uint64_t min_support,
                                               std::size_t max_length = 0);

}  // namespace privbasis
