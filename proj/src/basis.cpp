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

#include "privbasis/basis.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "privbasis/dp/mechanisms.hpp"
#include "privbasis/simd/kernels.hpp"

namespace privbasis {
namespace {

constexpr std::size_t kMaxBinBits = 30;

double average_ev_of(std::span<const Itemset> bases, std::span<const Itemset> q, double eps, double n) {
  if (q.empty()) throw InvalidArgument("average error variance needs at least one itemset");
  double sum = 0.0;
  for (const Itemset& x : q) {
    std::optional<double> v;
    for (const Itemset& b : bases) {
      if (!x.is_subset_of(b)) continue;
      const double nv = ev_single(bases.size(), b.size(), x.size(), eps, n);
      v = v ? combine_estimates(0.0, *v, 0.0, nv).v : nv;
    }
    if (!v) throw InvalidArgument("itemset " + x.to_string() + " is not covered by the basis set");
    sum += *v;
  }
  return sum / static_cast<double>(q.size());
}

Itemset itemset_of_mask(const Itemset& basis, std::uint64_t mask) {
  std::vector<ItemId> ids;
  ids.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if ((mask >> j) & 1) ids.push_back(basis.items()[j]);
  }
  return Itemset::FromSorted(std::move(ids));
}

// Greedy merging inside the clique part [0, n1) of `bases`.
void merge_cliques(std::vector<Itemset>& bases, std::size_t& n1, std::span<const Itemset> q, double eps, double n,
                   std::size_t l_max) {
  double current = average_ev_of(bases, q, eps, n);
  std::vector<Itemset> trial;
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    double best_ev = current;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = i + 1; j < n1; ++j) {
        Itemset merged = bases[i].united(bases[j]);
        if (merged.size() > l_max) continue;
        trial = bases;
        trial[i] = std::move(merged);
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(j));
        const double ev = average_ev_of(trial, q, eps, n);
        const std::size_t size = bases[i].size() + bases[j].size();
        if (ev < best_ev || (best && ev == best_ev && size < best_size)) {
          best = {i, j};
          best_ev = ev;
          best_size = size;
        }
      }
    }
    if (!best) return;
    auto [i, j] = *best;
    bases[i] = bases[i].united(bases[j]);
    bases.erase(bases.begin() + static_cast<std::ptrdiff_t>(j));
    --n1;
    current = best_ev;
  }
}

// Moves every item of the removed basis to the currently smallest basis with
// room left. Returns false when some item finds no room.
bool redistribute(std::vector<Itemset>& bases, const Itemset& removed, std::size_t l_max) {
  for (ItemId id : removed) {
    std::optional<std::size_t> target;
    for (std::size_t i = 0; i < bases.size(); ++i) {
      if (bases[i].size() >= l_max) continue;
      if (!target || bases[i].size() < bases[*target].size()) target = i;
    }
    if (!target) return false;
    bases[*target] = bases[*target].with(id);
  }
  return true;
}

// Removal of leftover-item bases [n1, end) while that lowers the EV.
void dissolve_groups(std::vector<Itemset>& bases, std::size_t n1, std::span<const Itemset> q, double eps, double n,
                     std::size_t l_max) {
  double current = average_ev_of(bases, q, eps, n);
  for (;;) {
    std::optional<std::vector<Itemset>> best;
    double best_ev = current;
    for (std::size_t r = n1; r < bases.size(); ++r) {
      std::vector<Itemset> trial = bases;
      const Itemset removed = trial[r];
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(r));
      if (trial.empty() || !redistribute(trial, removed, l_max)) continue;
      const double ev = average_ev_of(trial, q, eps, n);
      if (ev < best_ev) {
        best = std::move(trial);
        best_ev = ev;
      }
    }
    if (!best) return;
    bases = std::move(*best);
    current = best_ev;
  }
}

}  // namespace

std::size_t BasisSet::length() const noexcept {
  std::size_t l = 0;
  for (const auto& b : bases) l = std::max(l, b.size());
  return l;
}

bool BasisSet::covers(const Itemset& x) const {
  return std::any_of(bases.begin(), bases.end(), [&](const Itemset& b) { return x.is_subset_of(b); });
}

double ev_single(std::size_t width, std::size_t basis_size, std::size_t itemset_size, double eps, double n) {
  if (itemset_size > basis_size) throw InvalidArgument("itemset is larger than the basis");
  const double w = static_cast<double>(width);
  return std::ldexp(1.0, static_cast<int>(basis_size - itemset_size) + 1) * w * w / (eps * eps * n * n);
}

Estimate combine_estimates(double nc1, double v1, double nc2, double v2) {
  if (!(v1 > 0) || !(v2 > 0)) throw InvalidArgument("variances must be positive");
  // Same weights as v2/(v1+v2)*nc1 + v1/(v1+v2)*nc2, arranged so that equal
  // inputs come back unchanged.
  return {nc1 + v1 * (nc2 - nc1) / (v1 + v2), v1 * v2 / (v1 + v2)};
}

double average_ev(const BasisSet& b, std::span<const Itemset> q, double eps, double n) {
  return average_ev_of(b.bases, q, eps, n);
}

GroupSizeOptimum optimal_singleton_group_size(std::size_t max_length) {
  if (max_length == 0 || max_length > 60) throw InvalidArgument("group size bound must be in [1, 60]");
  GroupSizeOptimum best{0, {}};
  for (std::size_t l = 1; l <= max_length; ++l) {
    const auto ll = static_cast<std::int64_t>(l);
    const boost::rational<std::int64_t> value(std::int64_t{1} << (l - 1), ll * ll);
    if (best.length == 0 || value < best.value) best = {l, value};
  }
  return best;
}

OversizedClique::OversizedClique(Itemset clique, std::size_t l_max)
    : InvalidArgument(fmt::format("maximal clique {} has {} items, more than the basis length limit {}",
                                  clique.to_string(), clique.size(), l_max)),
      clique_(std::move(clique)) {}

BasisSet construct_basis_set(std::span<const ItemId> f, std::span<const ItemPair> p, double eps, double n,
                             std::size_t l_max) {
  if (f.empty()) throw InvalidArgument("no frequent items to build a basis set from");
  if (l_max == 0) throw InvalidArgument("basis length limit must be positive");
  std::vector<ItemId> items;
  std::set<ItemId> seen;
  for (ItemId id : f) {
    if (seen.insert(id).second) items.push_back(id);
  }

  std::set<ItemPair> edges;
  std::set<ItemId> paired;
  for (auto [a, b] : p) {
    if (a == b) throw InvalidArgument("pair repeats an item");
    if (!seen.contains(a) || !seen.contains(b)) throw InvalidArgument("pair endpoint is not a frequent item");
    edges.insert({std::min(a, b), std::max(a, b)});
    paired.insert(a);
    paired.insert(b);
  }

  PairGraph graph{{paired.begin(), paired.end()}, {edges.begin(), edges.end()}};
  std::vector<Itemset> bases = maximal_cliques(graph);
  for (const auto& clique : bases) {
    if (clique.size() > l_max) throw OversizedClique(clique, l_max);
  }
  std::size_t n1 = bases.size();

  std::vector<Itemset> q;
  for (auto [a, b] : edges) q.push_back(Itemset::FromSorted({a, b}));
  const std::size_t group = std::min(optimal_singleton_group_size().length, l_max);
  std::vector<ItemId> chunk;
  for (ItemId id : items) {
    if (paired.contains(id)) continue;
    q.push_back(Itemset::FromSorted({id}));
    chunk.push_back(id);
    if (chunk.size() == group) {
      bases.emplace_back(std::move(chunk));
      chunk.clear();
    }
  }
  if (!chunk.empty()) bases.emplace_back(std::move(chunk));

  merge_cliques(bases, n1, q, eps, n, l_max);
  dissolve_groups(bases, n1, q, eps, n, l_max);
  return BasisSet{std::move(bases)};
}

BinTable exact_bin_table(const TransactionDataset& d, const BasisSet& b) {
  struct Slot {
    std::uint32_t basis;
    std::uint32_t bit;
  };
  std::unordered_map<ItemId, std::vector<Slot>> slots;
  BinTable table;
  table.bins.reserve(b.width());
  for (std::size_t i = 0; i < b.width(); ++i) {
    const Itemset& basis = b.bases[i];
    if (basis.empty()) throw InvalidArgument("basis set contains an empty basis");
    if (basis.size() > kMaxBinBits) throw InvalidArgument("basis is too long to materialise its bins");
    table.bins.emplace_back(std::size_t{1} << basis.size(), 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      slots[basis.items()[j]].push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  }
  std::vector<std::uint64_t> masks(b.width());
  for (std::size_t t = 0; t < d.size(); ++t) {
    std::fill(masks.begin(), masks.end(), 0);
    for (ItemId id : d.transaction(t)) {
      auto it = slots.find(id);
      if (it == slots.end()) continue;
      for (const Slot& s : it->second) masks[s.basis] |= std::uint64_t{1} << s.bit;
    }
    for (std::size_t i = 0; i < masks.size(); ++i) table.bins[i][masks[i]] += 1.0;
  }
  return table;
}

void add_bin_noise(BinTable& table, double scale, dp::NoiseSource& src) {
  for (auto& bins : table.bins) {
    for (double& x : bins) x += dp::laplace(scale, src);
  }
}

CandidateTable reconstruct(const BasisSet& b, const BinTable& table) {
  if (table.bins.size() != b.width()) throw InvalidArgument("bin table does not match the basis set");
  CandidateTable out;
  std::vector<double> sums;
  for (std::size_t i = 0; i < b.width(); ++i) {
    const Itemset& basis = b.bases[i];
    const auto bits = static_cast<unsigned>(basis.size());
    if (table.bins[i].size() != (std::size_t{1} << bits)) throw InvalidArgument("bin table has the wrong size");
    sums = table.bins[i];
    simd::superset_sum(sums, bits);
    for (std::uint64_t mask = 1; mask < sums.size(); ++mask) {
      const double nv = std::ldexp(1.0, static_cast<int>(bits) - std::popcount(mask));
      auto [it, inserted] = out.try_emplace(itemset_of_mask(basis, mask), Estimate{sums[mask], nv});
      if (!inserted) it->second = combine_estimates(it->second.nc, it->second.v, sums[mask], nv);
    }
  }
  return out;
}

BasisFreqResult basis_freq(const TransactionDataset& d, const BasisSet& b, std::size_t k, double eps,
                           dp::NoiseSource& src, std::size_t l_max) {
  if (d.empty()) throw EmptyDatasetError();
  if (b.width() == 0) throw InvalidArgument("basis set is empty");
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (b.length() > l_max) throw InvalidArgument("basis exceeds the length limit");
  if (!(eps > 0) || !std::isfinite(eps)) throw InvalidArgument("epsilon must be positive and finite");

  BinTable table = exact_bin_table(d, b);
  add_bin_noise(table, static_cast<double>(b.width()) / eps, src);
  CandidateTable candidates = reconstruct(b, table);

  std::vector<const CandidateTable::value_type*> order;
  order.reserve(candidates.size());
  for (const auto& entry : candidates) order.push_back(&entry);
  const std::size_t take = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [](const auto* a, const auto* b) {
                      if (a->second.nc != b->second.nc) return a->second.nc > b->second.nc;
                      return shortlex_less(a->first, b->first);
                    });

  BasisFreqResult result;
  result.candidates = candidates.size();
  result.short_output = candidates.size() < k;
  const double n = static_cast<double>(d.size());
  for (std::size_t r = 0; r < take; ++r) result.released.push_back({order[r]->first, order[r]->second.nc / n});
  return result;
}

}  // namespace privbasis
