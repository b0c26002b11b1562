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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace privbasis {

using ItemId = std::uint32_t;

/// A set of items stored as a strictly increasing id sequence.
///
/// The canonical ordering makes equality, hashing and ordering well defined.
/// The empty itemset is representable (it labels the all-absent bin of a
/// basis) but is never released as a mining result.
class Itemset {
 public:
  Itemset() = default;
  Itemset(std::initializer_list<ItemId> items);
  explicit Itemset(std::vector<ItemId> items);

  // Wraps ids that the caller guarantees are already strictly increasing.
  static Itemset FromSorted(std::vector<ItemId> items);

  std::span<const ItemId> items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  ItemId front() const { return items_.front(); }
  ItemId back() const { return items_.back(); }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  bool contains(ItemId id) const;
  bool is_subset_of(const Itemset& other) const;
  bool is_subset_of(std::span<const ItemId> sorted) const;

  Itemset with(ItemId id) const;
  Itemset united(const Itemset& other) const;

  std::string to_string() const;

  friend bool operator==(const Itemset&, const Itemset&) = default;
  friend std::strong_ordering operator<=>(const Itemset& a, const Itemset& b) {
    return a.items_ <=> b.items_;
  }

 private:
  std::vector<ItemId> items_;
};

std::ostream& operator<<(std::ostream& os, const Itemset& x);

/// Shorter itemsets first, then lexicographic on sorted ids. This is the
/// deterministic tie-break used wherever itemsets of equal support are ranked.
inline bool shortlex_less(const Itemset& a, const Itemset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct ItemsetHash {
  std::size_t operator()(const Itemset& x) const noexcept;
};

/// True when the sorted span `sub` is a subset of the sorted span `super`.
bool sorted_includes(std::span<const ItemId> super, std::span<const ItemId> sub);

}  // namespace privbasis
