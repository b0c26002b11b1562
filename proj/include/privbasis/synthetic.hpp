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
#include <vector>

#include "privbasis/dataset.hpp"
#include "privbasis/itemset.hpp"

namespace privbasis {

struct PlantedItemset {
  Itemset itemset;
  double target_frequency = 0.0;
};

struct SyntheticOptions {
  std::size_t n_transactions = 0;
  std::size_t universe_size = 0;
  std::vector<PlantedItemset> planted;
  // Probability that any item is present in a transaction independently of
  // the plants.
  double background_rate = 0.0;
  std::uint64_t seed = 0;
};

/// Generates a dataset over items [0, universe_size) in which every planted
/// itemset is inserted into exactly round(target * n) distinct transactions,
/// chosen uniformly. Background items are drawn first, so a planted itemset's
/// support is at least its planted count (exactly that count when the
/// background rate is 0 and no other plant contains it).
///
/// Throws InvalidArgument on malformed plants and Error when two plants
/// conflict: a proper subset planted less often than its superset, or the
/// same itemset planted with different counts.
TransactionDataset generate_synthetic(const SyntheticOptions& options);

}  // namespace privbasis
