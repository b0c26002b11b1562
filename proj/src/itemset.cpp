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

#include "privbasis/itemset.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "privbasis/error.hpp"

namespace privbasis {

ParseError::ParseError(std::string path, std::size_t line, const std::string& what)
    : Error(fmt::format("{}:{}: {}", path, line, what)),
      path_(std::move(path)),
      line_(line) {}

Itemset::Itemset(std::initializer_list<ItemId> items) : Itemset(std::vector<ItemId>(items)) {}

Itemset::Itemset(std::vector<ItemId> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

Itemset Itemset::FromSorted(std::vector<ItemId> items) {
  Itemset x;
  x.items_ = std::move(items);
  return x;
}

bool Itemset::contains(ItemId id) const {
  return std::binary_search(items_.begin(), items_.end(), id);
}

bool Itemset::is_subset_of(const Itemset& other) const {
  return sorted_includes(other.items_, items_);
}

bool Itemset::is_subset_of(std::span<const ItemId> sorted) const {
  return sorted_includes(sorted, items_);
}

Itemset Itemset::with(ItemId id) const {
  std::vector<ItemId> out;
  out.reserve(items_.size() + 1);
  auto pos = std::lower_bound(items_.begin(), items_.end(), id);
  out.insert(out.end(), items_.begin(), pos);
  if (pos == items_.end() || *pos != id) out.push_back(id);
  out.insert(out.end(), pos, items_.end());
  return FromSorted(std::move(out));
}

Itemset Itemset::united(const Itemset& other) const {
  std::vector<ItemId> out;
  out.reserve(items_.size() + other.items_.size());
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                 std::back_inserter(out));
  return FromSorted(std::move(out));
}

std::string Itemset::to_string() const { return fmt::format("{{{}}}", fmt::join(items_, ",")); }

std::ostream& operator<<(std::ostream& os, const Itemset& x) { return os << x.to_string(); }

std::size_t ItemsetHash::operator()(const Itemset& x) const noexcept {
  // FNV-1a over the ids.
  std::uint64_t h = 1469598103934665603ULL;
  for (ItemId id : x) {
    h ^= id;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

bool sorted_includes(std::span<const ItemId> super, std::span<const ItemId> sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace privbasis
