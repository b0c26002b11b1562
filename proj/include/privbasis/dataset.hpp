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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "privbasis/itemset.hpp"

namespace privbasis {

/// An immutable list of transactions over an item universe.
///
/// Transactions are stored contiguously (CSR layout), each one sorted and
/// free of duplicates. The universe defaults to the ids that occur in the
/// data; callers may supply a superset, since the item domain is public.
/// Safe to share read-only between threads.
class TransactionDataset {
 public:
  TransactionDataset() = default;

  /// Builds a dataset; every transaction is canonicalised (sorted, deduped).
  /// Throws InvalidArgument if `universe` is given and misses an observed id.
  explicit TransactionDataset(const std::vector<std::vector<ItemId>>& transactions,
                              std::optional<std::vector<ItemId>> universe = std::nullopt);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  bool empty() const noexcept { return size() == 0; }

  std::span<const ItemId> transaction(std::size_t i) const {
    return {items_.data() + offsets_[i], items_.data() + offsets_[i + 1]};
  }

  /// Sorted item universe.
  std::span<const ItemId> universe() const noexcept { return universe_; }

  /// Sum of transaction lengths.
  std::size_t total_length() const noexcept { return items_.size(); }

  /// Number of transactions containing `x`. The empty itemset has support N.
  std::uint64_t support(const Itemset& x) const;

  /// Fraction of transactions containing `x`. Throws EmptyDatasetError if N = 0.
  double frequency(const Itemset& x) const;

  /// A new dataset with `t` appended (the neighbouring dataset D + t).
  TransactionDataset with_transaction(std::vector<ItemId> t) const;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<ItemId> items_;
  std::vector<ItemId> universe_;
};

/// Reads the FIMI text format: one transaction per non-empty line, ids
/// separated by whitespace. Duplicate ids within a line are dropped.
/// Throws ParseError (with line number) on a malformed token.
TransactionDataset load_fimi(const std::filesystem::path& path,
                             std::optional<std::vector<ItemId>> universe = std::nullopt);
TransactionDataset read_fimi(std::istream& in, const std::string& source_name = "<stream>",
                             std::optional<std::vector<ItemId>> universe = std::nullopt);

/// Writes one line per transaction, ids ascending and space separated.
void save_fimi(const TransactionDataset& d, const std::filesystem::path& path);
void write_fimi(const TransactionDataset& d, std::ostream& out);

/// Free-function form of TransactionDataset::frequency.
double frequency(const TransactionDataset& d, const Itemset& x);

}  // namespace privbasis
