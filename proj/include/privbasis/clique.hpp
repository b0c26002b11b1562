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

#include <utility>
#include <vector>

#include "privbasis/itemset.hpp"

namespace privbasis {

using ItemPair = std::pair<ItemId, ItemId>;

/// Undirected graph whose nodes are items and whose edges are item pairs
/// (the frequent-pairs graph when nodes are frequent items and edges are
/// frequent pairs).
struct PairGraph {
  std::vector<ItemId> nodes;
  std::vector<ItemPair> edges;
};

/// Inclusion-maximal cliques of `g` (Bron-Kerbosch with Tomita pivoting).
/// Isolated nodes come back as singleton cliques. Output is sorted
/// lexicographically. Throws InvalidArgument on self-loops or edges whose
/// endpoints are not nodes.
std::vector<Itemset> maximal_cliques(const PairGraph& g);

}  // namespace privbasis
