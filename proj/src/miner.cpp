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

#include "privbasis/miner.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "privbasis/error.hpp"
#include "privbasis/simd/kernels.hpp"

namespace privbasis {
namespace {

// Support of each universe item, indexed like d.universe().
std::vector<std::uint64_t> item_counts(const TransactionDataset& d) {
  auto universe = d.universe();
  std::vector<std::uint64_t> counts(universe.size(), 0);
  if (universe.empty()) return counts;
  // Dense lookup when ids are compact, binary search otherwise.
  const ItemId max_id = universe.back();
  if (max_id < 4 * universe.size() + 1024) {
    std::vector<std::uint32_t> slot(static_cast<std::size_t>(max_id) + 1, 0);
    for (std::size_t i = 0; i < universe.size(); ++i) slot[universe[i]] = static_cast<std::uint32_t>(i);
    for (std::size_t t = 0; t < d.size(); ++t) {
      for (ItemId id : d.transaction(t)) ++counts[slot[id]];
    }
  } else {
    for (std::size_t t = 0; t < d.size(); ++t) {
      for (ItemId id : d.transaction(t)) {
        ++counts[static_cast<std::size_t>(std::lower_bound(universe.begin(), universe.end(), id) - universe.begin())];
      }
    }
  }
  return counts;
}

struct Node {
  std::uint64_t support;
  Itemset itemset;
};

// Heap order: the best-ranked node on top.
struct WorseRanked {
  bool operator()(const Node& a, const Node& b) const {
    return ranks_before(b.support, b.itemset, a.support, a.itemset);
  }
};

void require_nonempty(const TransactionDataset& d) {
  if (d.empty()) throw EmptyDatasetError();
}

}  // namespace

VerticalIndex::VerticalIndex(const TransactionDataset& d, std::span<const ItemId> items)
    : n_(d.size()), words_((d.size() + 63) / 64) {
  for (ItemId id : items) {
    if (!slot_.contains(id)) slot_.emplace(id, slot_.size());
  }
  bits_.assign(slot_.size() * words_, 0);
  for (std::size_t t = 0; t < d.size(); ++t) {
    const std::uint64_t bit = std::uint64_t{1} << (t % 64);
    const std::size_t word = t / 64;
    for (ItemId id : d.transaction(t)) {
      auto it = slot_.find(id);
      if (it != slot_.end()) bits_[it->second * words_ + word] |= bit;
    }
  }
}

std::span<const std::uint64_t> VerticalIndex::bits(ItemId id) const {
  auto it = slot_.find(id);
  if (it == slot_.end()) throw InvalidArgument("item is not in the vertical index");
  return {bits_.data() + it->second * words_, words_};
}

void VerticalIndex::tidset(const Itemset& x, std::vector<std::uint64_t>& out) const {
  out.resize(words_);
  if (x.empty()) {
    std::fill(out.begin(), out.end(), ~std::uint64_t{0});
    if (n_ % 64 != 0 && words_ > 0) out.back() = (std::uint64_t{1} << (n_ % 64)) - 1;
    return;
  }
  auto first = bits(x.front());
  std::copy(first.begin(), first.end(), out.begin());
  for (std::size_t i = 1; i < x.size(); ++i) simd::and_into(out, out, bits(x.items()[i]));
}

std::uint64_t VerticalIndex::support(const Itemset& x) const {
  if (x.empty()) return n_;
  if (x.size() == 1) return simd::popcount(bits(x.front()));
  if (x.size() == 2) return simd::and_popcount(bits(x.front()), bits(x.back()));
  std::vector<std::uint64_t> tid;
  tidset(Itemset::FromSorted({x.begin(), x.end() - 1}), tid);
  return simd::and_popcount(tid, bits(x.back()));
}

std::vector<ItemSupport> ranked_items(const TransactionDataset& d) {
  auto counts = item_counts(d);
  auto universe = d.universe();
  std::vector<ItemSupport> out(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i) out[i] = {universe[i], counts[i]};
  std::stable_sort(out.begin(), out.end(),
                   [](const ItemSupport& a, const ItemSupport& b) { return a.support > b.support; });
  return out;
}

std::vector<RankedItemset> exact_top_k(const TransactionDataset& d, std::size_t k, std::size_t max_length) {
  require_nonempty(d);
  if (k == 0) throw InvalidArgument("k must be at least 1");

  auto items = ranked_items(d);
  // The k-th best singleton bounds the k-th best itemset from below.
  std::uint64_t floor = 1;
  if (items.size() >= k) floor = std::max<std::uint64_t>(1, items[k - 1].support);

  std::vector<ItemSupport> eligible;
  for (const auto& is : items) {
    if (is.support >= floor) eligible.push_back(is);
  }
  std::sort(eligible.begin(), eligible.end(),
            [](const ItemSupport& a, const ItemSupport& b) { return a.item < b.item; });
  std::vector<ItemId> eligible_ids;
  eligible_ids.reserve(eligible.size());
  for (const auto& is : eligible) eligible_ids.push_back(is.item);
  VerticalIndex index(d, eligible_ids);

  // Supports of the k best itemsets discovered so far; its minimum is a
  // valid lower bound for the final k-th support.
  std::priority_queue<std::uint64_t, std::vector<std::uint64_t>, std::greater<>> best_k;
  auto threshold = [&]() { return best_k.size() == k ? std::max(best_k.top(), floor) : floor; };
  auto discover = [&](std::uint64_t s) {
    if (best_k.size() < k) {
      best_k.push(s);
    } else if (s > best_k.top()) {
      best_k.pop();
      best_k.push(s);
    }
  };

  std::priority_queue<Node, std::vector<Node>, WorseRanked> frontier;
  for (const auto& is : eligible) {
    frontier.push({is.support, Itemset::FromSorted({is.item})});
    discover(is.support);
  }

  std::vector<RankedItemset> result;
  std::vector<std::uint64_t> tid;
  while (result.size() < k && !frontier.empty()) {
    Node node = frontier.top();
    frontier.pop();
    if (max_length == 0 || node.itemset.size() < max_length) {
      index.tidset(node.itemset, tid);
      // Children extend by items larger than the current maximum, so every
      // itemset has exactly one parent (itself minus its largest item). A
      // child never ranks before its parent, so pops come out in rank order.
      auto start = std::upper_bound(eligible.begin(), eligible.end(), node.itemset.back(),
                                    [](ItemId id, const ItemSupport& is) { return id < is.item; });
      for (auto it = start; it != eligible.end(); ++it) {
        if (it->support < threshold()) continue;
        const std::uint64_t s = simd::and_popcount(tid, index.bits(it->item));
        if (s == 0 || s < threshold()) continue;
        frontier.push({s, node.itemset.with(it->item)});
        discover(s);
      }
    }
    result.push_back({std::move(node.itemset), node.support, result.size() + 1});
  }
  return result;
}

std::vector<std::uint64_t> supports_of(const TransactionDataset& d, std::span<const Itemset> itemsets) {
  std::vector<std::uint64_t> out(itemsets.size(), 0);
  bool all_singletons = true;
  std::vector<ItemId> ids;
  for (const auto& x : itemsets) {
    all_singletons = all_singletons && x.size() <= 1;
    ids.insert(ids.end(), x.begin(), x.end());
  }
  if (all_singletons) {
    auto counts = item_counts(d);
    auto universe = d.universe();
    for (std::size_t i = 0; i < itemsets.size(); ++i) {
      if (itemsets[i].empty()) {
        out[i] = d.size();
        continue;
      }
      auto pos = std::lower_bound(universe.begin(), universe.end(), itemsets[i].front());
      if (pos != universe.end() && *pos == itemsets[i].front()) out[i] = counts[pos - universe.begin()];
    }
    return out;
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  VerticalIndex index(d, ids);
  for (std::size_t i = 0; i < itemsets.size(); ++i) out[i] = index.support(itemsets[i]);
  return out;
}

std::vector<RankedItemset> exact_top_elements(const TransactionDataset& d, std::span<const Itemset> candidates,
                                              std::size_t j) {
  if (candidates.empty()) throw InvalidArgument("candidate list is empty");
  if (j == 0) throw InvalidArgument("j must be at least 1");
  auto supports = supports_of(d, candidates);
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ranks_before(supports[a], candidates[a], supports[b], candidates[b]);
  });
  const std::size_t n = std::min(j, candidates.size());
  std::vector<RankedItemset> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) out.push_back({candidates[order[r]], supports[order[r]], r + 1});
  return out;
}

std::vector<SupportedItemset> mine_min_support(const TransactionDataset& d, std::uint64_t min_support,
                                               std::size_t max_length) {
  require_nonempty(d);
  if (min_support == 0) throw InvalidArgument("min_support must be at least 1");
  std::vector<ItemId> frequent;
  for (const auto& is : ranked_items(d)) {
    if (is.support >= min_support) frequent.push_back(is.item);
  }
  std::sort(frequent.begin(), frequent.end());
  VerticalIndex index(d, frequent);

  std::vector<SupportedItemset> out;
  // Depth-first over the set-enumeration tree with one tidset per level.
  const std::size_t depth_limit =
      max_length == 0 ? frequent.size() : std::min(max_length, frequent.size());
  std::vector<std::vector<std::uint64_t>> level_tids(depth_limit, std::vector<std::uint64_t>(index.words()));
  std::vector<ItemId> prefix;
  std::function<void(std::size_t, std::span<const std::uint64_t>)> extend =
      [&](std::size_t from, std::span<const std::uint64_t> parent) {
        const std::size_t depth = prefix.size();
        if (depth >= depth_limit) return;
        for (std::size_t i = from; i < frequent.size(); ++i) {
          auto& tid = level_tids[depth];
          auto bits = index.bits(frequent[i]);
          std::uint64_t s;
          if (depth == 0) {
            std::copy(bits.begin(), bits.end(), tid.begin());
            s = simd::popcount(tid);
          } else {
            simd::and_into(tid, parent, bits);
            s = simd::popcount(tid);
          }
          if (s < min_support) continue;
          prefix.push_back(frequent[i]);
          out.push_back({Itemset::FromSorted(prefix), s});
          extend(i + 1, level_tids[depth]);
          prefix.pop_back();
        }
      };
  extend(0, {});
  std::sort(out.begin(), out.end(),
            [](const SupportedItemset& a, const SupportedItemset& b) { return shortlex_less(a.itemset, b.itemset); });
  return out;
}

}  // namespace privbasis
