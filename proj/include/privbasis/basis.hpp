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

// Basis sets: construction from frequent items and pairs, error-variance
// bookkeeping, and noisy-count release over the candidate set C(B).

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

#include "privbasis/clique.hpp"
#include "privbasis/dataset.hpp"
#include "privbasis/dp/noise.hpp"
#include "privbasis/error.hpp"
#include "privbasis/itemset.hpp"
#include "privbasis/release.hpp"

namespace privbasis {

struct BasisSet {
  std::vector<Itemset> bases;

  std::size_t width() const noexcept { return bases.size(); }
  /// Size of the largest basis.
  std::size_t length() const noexcept;
  bool covers(const Itemset& x) const;
};

/// Error variance of the frequency of an |X|-itemset read off one basis of
/// size |B| in a basis set of width w: 2^(|B|-|X|+1) w^2 / (eps^2 N^2).
double ev_single(std::size_t width, std::size_t basis_size, std::size_t itemset_size, double eps, double n);

struct Estimate {
  double nc = 0.0;  // noisy count
  double v = 0.0;   // variance proxy
};

/// Inverse-variance weighting of two unbiased estimates.
Estimate combine_estimates(double nc1, double v1, double nc2, double v2);

/// Mean over `q` of the error variance of each itemset, folding the
/// estimates of every covering basis. Throws InvalidArgument naming the first
/// uncovered itemset.
double average_ev(const BasisSet& b, std::span<const Itemset> q, double eps, double n);

struct GroupSizeOptimum {
  std::size_t length = 0;
  boost::rational<std::int64_t> value;
};

/// Minimiser of 2^(l-1)/l^2 over l in [1, max_length]: the per-item variance
/// factor when singletons are grouped into bases of size l.
GroupSizeOptimum optimal_singleton_group_size(std::size_t max_length = 12);

/// A maximal clique of the pairs graph exceeds the basis length limit.
class OversizedClique : public InvalidArgument {
 public:
  OversizedClique(Itemset clique, std::size_t l_max);
  const Itemset& clique() const noexcept { return clique_; }

 private:
  Itemset clique_;
};

/// Builds a basis set covering every maximal clique of the graph (f, p).
/// `f` lists frequent items in selection order; leftover items (in no pair)
/// are grouped in that order. Throws OversizedClique when a maximal clique has
/// more than l_max items and InvalidArgument when a pair endpoint is not in f.
BasisSet construct_basis_set(std::span<const ItemId> f, std::span<const ItemPair> p, double eps, double n,
                             std::size_t l_max);

/// Per basis, 2^|B_i| bin counts. Bit j of a bin index stands for the j-th
/// smallest item of B_i.
struct BinTable {
  std::vector<std::vector<double>> bins;
};

/// Exact bin counts: bins[i][t & B_i] counts the transactions t.
BinTable exact_bin_table(const TransactionDataset& d, const BasisSet& b);

/// Adds independent Laplace(scale) noise to every bin, basis by basis.
void add_bin_noise(BinTable& table, double scale, dp::NoiseSource& src);

using CandidateTable = std::unordered_map<Itemset, Estimate, ItemsetHash>;

/// Superset sums per basis folded across bases (the empty itemset is left
/// out). Variance proxies are in bin units: 2^(|B|-|X|) per basis.
CandidateTable reconstruct(const BasisSet& b, const BinTable& table);

struct BasisFreqResult {
  Release released;
  bool short_output = false;  // fewer than k candidates existed
  std::size_t candidates = 0;
};

/// Noisy bin counts with Laplace(w/eps) noise, reconstruction, and release of
/// the k candidates with highest noisy count (ties by shortlex order) with
/// frequency nc/N.
BasisFreqResult basis_freq(const TransactionDataset& d, const BasisSet& b, std::size_t k, double eps,
                           dp::NoiseSource& src, std::size_t l_max = 12);

}  // namespace privbasis
