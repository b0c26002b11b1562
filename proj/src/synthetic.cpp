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

#include "privbasis/synthetic.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <fmt/format.h>

#include "privbasis/error.hpp"

namespace privbasis {
namespace {

// Unbiased integer in [0, bound) by rejection on the top bits.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t planted_count(double target, std::size_t n) {
  return static_cast<std::size_t>(std::llround(target * static_cast<double>(n)));
}

void validate(const SyntheticOptions& o) {
  if (!(o.background_rate >= 0.0 && o.background_rate <= 1.0)) {
    throw InvalidArgument("background_rate must lie in [0, 1]");
  }
  for (const auto& p : o.planted) {
    if (p.itemset.empty()) throw InvalidArgument("planted itemset is empty");
    if (!(p.target_frequency >= 0.0 && p.target_frequency <= 1.0)) {
      throw InvalidArgument(fmt::format("target frequency {} of {} is outside [0, 1]", p.target_frequency,
                                        p.itemset.to_string()));
    }
    if (p.itemset.back() >= o.universe_size) {
      throw InvalidArgument(fmt::format("planted itemset {} uses items outside [0, {})", p.itemset.to_string(),
                                        o.universe_size));
    }
  }
  std::vector<std::string> conflicts;
  for (std::size_t i = 0; i < o.planted.size(); ++i) {
    for (std::size_t j = 0; j < o.planted.size(); ++j) {
      if (i == j) continue;
      const auto& a = o.planted[i];
      const auto& b = o.planted[j];
      const std::size_t ca = planted_count(a.target_frequency, o.n_transactions);
      const std::size_t cb = planted_count(b.target_frequency, o.n_transactions);
      if (a.itemset == b.itemset) {
        if (i < j && ca != cb) {
          conflicts.push_back(fmt::format("{} planted with counts {} and {}", a.itemset.to_string(), ca, cb));
        }
      } else if (a.itemset.is_subset_of(b.itemset) && ca < cb) {
        conflicts.push_back(fmt::format("{} (count {}) is a subset of {} (count {})", a.itemset.to_string(), ca,
                                        b.itemset.to_string(), cb));
      }
    }
  }
  if (!conflicts.empty()) {
    std::string msg = "conflicting plants:";
    for (const auto& c : conflicts) msg += " " + c + ";";
    throw Error(msg);
  }
}

}  // namespace

TransactionDataset generate_synthetic(const SyntheticOptions& o) {
  validate(o);
  std::mt19937_64 rng(o.seed);
  std::vector<std::vector<ItemId>> transactions(o.n_transactions);
  if (o.background_rate > 0.0) {
    for (auto& t : transactions) {
      for (std::size_t item = 0; item < o.universe_size; ++item) {
        if (unit(rng) < o.background_rate) t.push_back(static_cast<ItemId>(item));
      }
    }
  }

  std::vector<std::size_t> order(o.n_transactions);
  for (const auto& p : o.planted) {
    const std::size_t count = planted_count(p.target_frequency, o.n_transactions);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `count` slots are a uniform sample.
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(bounded(rng, o.n_transactions - i));
      std::swap(order[i], order[j]);
      auto& t = transactions[order[i]];
      t.insert(t.end(), p.itemset.begin(), p.itemset.end());
    }
  }

  std::vector<ItemId> universe(o.universe_size);
  std::iota(universe.begin(), universe.end(), ItemId{0});
  return TransactionDataset(transactions, std::move(universe));
}

}  // namespace privbasis
