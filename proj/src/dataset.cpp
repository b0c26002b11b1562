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

#include "privbasis/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "privbasis/error.hpp"

namespace privbasis {
namespace {

void canonicalise(std::vector<ItemId>& t) {
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
}

}  // namespace

TransactionDataset::TransactionDataset(const std::vector<std::vector<ItemId>>& transactions,
                                       std::optional<std::vector<ItemId>> universe) {
  offsets_.reserve(transactions.size() + 1);
  offsets_.push_back(0);
  std::vector<ItemId> scratch;
  for (const auto& t : transactions) {
    scratch.assign(t.begin(), t.end());
    canonicalise(scratch);
    items_.insert(items_.end(), scratch.begin(), scratch.end());
    offsets_.push_back(items_.size());
  }

  std::vector<ItemId> observed = items_;
  canonicalise(observed);
  if (universe) {
    canonicalise(*universe);
    if (!std::includes(universe->begin(), universe->end(), observed.begin(), observed.end())) {
      throw InvalidArgument("supplied universe does not contain every observed item");
    }
    universe_ = std::move(*universe);
  } else {
    universe_ = std::move(observed);
  }
}

std::uint64_t TransactionDataset::support(const Itemset& x) const {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (sorted_includes(transaction(i), x.items())) ++count;
  }
  return count;
}

double TransactionDataset::frequency(const Itemset& x) const {
  if (empty()) throw EmptyDatasetError();
  return static_cast<double>(support(x)) / static_cast<double>(size());
}

TransactionDataset TransactionDataset::with_transaction(std::vector<ItemId> t) const {
  canonicalise(t);
  TransactionDataset out = *this;
  if (out.offsets_.empty()) out.offsets_.push_back(0);
  out.items_.insert(out.items_.end(), t.begin(), t.end());
  out.offsets_.push_back(out.items_.size());
  std::vector<ItemId> merged;
  std::set_union(universe_.begin(), universe_.end(), t.begin(), t.end(), std::back_inserter(merged));
  out.universe_ = std::move(merged);
  return out;
}

TransactionDataset read_fimi(std::istream& in, const std::string& source_name,
                             std::optional<std::vector<ItemId>> universe) {
  std::vector<std::vector<ItemId>> transactions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<ItemId> t;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      const char* tok = p;
      while (p < end && *p != ' ' && *p != '\t' && *p != '\r') ++p;
      ItemId value = 0;
      auto [ptr, ec] = std::from_chars(tok, p, value);
      if (ec != std::errc() || ptr != p) {
        throw ParseError(source_name, line_no,
                         fmt::format("expected a non-negative item id, got '{}'", std::string_view(tok, p - tok)));
      }
      t.push_back(value);
    }
    if (!t.empty()) transactions.push_back(std::move(t));
  }
  return TransactionDataset(transactions, std::move(universe));
}

TransactionDataset load_fimi(const std::filesystem::path& path, std::optional<std::vector<ItemId>> universe) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  return read_fimi(in, path.string(), std::move(universe));
}

void write_fimi(const TransactionDataset& d, std::ostream& out) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto t = d.transaction(i);
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (j) out << ' ';
      out << t[j];
    }
    out << '\n';
  }
}

void save_fimi(const TransactionDataset& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  write_fimi(d, out);
}

double frequency(const TransactionDataset& d, const Itemset& x) { return d.frequency(x); }

}  // namespace privbasis
