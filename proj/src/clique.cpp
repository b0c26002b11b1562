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

#include "privbasis/clique.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "privbasis/error.hpp"

namespace privbasis {
namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }

  Bitset minus(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
    return r;
  }

  std::size_t count_and(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

class BronKerbosch {
 public:
  BronKerbosch(std::vector<ItemId> nodes, std::vector<Bitset> adj) : nodes_(std::move(nodes)), adj_(std::move(adj)) {}

  std::vector<Itemset> run() {
    Bitset p(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) p.set(i);
    expand(p, Bitset(nodes_.size()));
    return std::move(out_);
  }

 private:
  void expand(Bitset p, Bitset x) {
    if (p.none()) {
      if (x.none()) report();
      return;
    }
    // Pivot on the vertex of P u X with most neighbours in P.
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool first = true;
    auto consider = [&](std::size_t u) {
      const std::size_t c = p.count_and(adj_[u]);
      if (first || c > best) {
        pivot = u;
        best = c;
        first = false;
      }
    };
    p.for_each(consider);
    x.for_each(consider);

    Bitset candidates = p.minus(adj_[pivot]);
    candidates.for_each([&](std::size_t v) {
      r_.push_back(v);
      expand(p & adj_[v], x & adj_[v]);
      r_.pop_back();
      p.reset(v);
      x.set(v);
    });
  }

  void report() {
    std::vector<ItemId> ids;
    ids.reserve(r_.size());
    for (std::size_t v : r_) ids.push_back(nodes_[v]);
    out_.emplace_back(std::move(ids));
  }

  std::vector<ItemId> nodes_;
  std::vector<Bitset> adj_;
  std::vector<std::size_t> r_;
  std::vector<Itemset> out_;
};

}  // namespace

std::vector<Itemset> maximal_cliques(const PairGraph& g) {
  std::vector<ItemId> nodes = g.nodes;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto index_of = [&](ItemId id) -> std::size_t {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
    if (it == nodes.end() || *it != id) throw InvalidArgument("edge endpoint is not a node of the graph");
    return static_cast<std::size_t>(it - nodes.begin());
  };

  std::vector<Bitset> adj(nodes.size(), Bitset(nodes.size()));
  for (const auto& [a, b] : g.edges) {
    if (a == b) throw InvalidArgument("pair graph has a self-loop");
    const std::size_t ia = index_of(a);
    const std::size_t ib = index_of(b);
    adj[ia].set(ib);
    adj[ib].set(ia);
  }
  auto cliques = BronKerbosch(std::move(nodes), std::move(adj)).run();
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

}  // namespace privbasis
