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

#include "privbasis/tf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "privbasis/dp/mechanisms.hpp"
#include "privbasis/error.hpp"
#include "privbasis/miner.hpp"
#include "privbasis/simd/kernels.hpp"

namespace privbasis {
namespace {

BigCount binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigCount c = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    c *= n - r + i;
    c /= i;
  }
  return c;
}

// Uniform integer in [0, bound) by rejection over the bit length of bound.
BigCount uniform_below(const BigCount& bound, dp::NoiseSource& src) {
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  for (;;) {
    BigCount x = 0;
    std::size_t filled = 0;
    while (filled < bits) {
      x <<= 64;
      x |= src.next_u64();
      filled += 64;
    }
    x >>= static_cast<unsigned>(filled - bits);
    if (x < bound) return x;
  }
}

// Universe index of each item of x.
std::vector<std::size_t> positions(std::span<const ItemId> universe, const Itemset& x) {
  std::vector<std::size_t> pos;
  for (ItemId id : x) {
    auto it = std::lower_bound(universe.begin(), universe.end(), id);
    if (it == universe.end() || *it != id) throw InvalidArgument("itemset item is not in the universe");
    pos.push_back(static_cast<std::size_t>(it - universe.begin()));
  }
  return pos;
}

struct Candidate {
  Itemset itemset;
  std::uint64_t support = 0;
};

// Every itemset of length 1..m with its support, in shortlex order.
std::vector<Candidate> enumerate_all(const TransactionDataset& d, std::size_t m) {
  auto universe = d.universe();
  VerticalIndex index(d, universe);
  std::vector<Candidate> out;
  std::vector<std::vector<std::uint64_t>> level(m, std::vector<std::uint64_t>(index.words()));
  std::vector<ItemId> prefix;
  auto extend = [&](auto&& self, std::size_t from) -> void {
    const std::size_t depth = prefix.size();
    if (depth >= m) return;
    for (std::size_t i = from; i < universe.size(); ++i) {
      auto bits = index.bits(universe[i]);
      auto& tid = level[depth];
      if (depth == 0) {
        std::copy(bits.begin(), bits.end(), tid.begin());
      } else {
        simd::and_into(tid, level[depth - 1], bits);
      }
      prefix.push_back(universe[i]);
      out.push_back({Itemset::FromSorted(prefix), simd::popcount(tid)});
      self(self, i + 1);
      prefix.pop_back();
    }
  };
  extend(extend, 0);
  std::sort(out.begin(), out.end(),
            [](const Candidate& a, const Candidate& b) { return shortlex_less(a.itemset, b.itemset); });
  return out;
}

// Laplace quantile at u, given log(u) for u in (0, 1).
double laplace_quantile_from_log(double log_u, double scale) {
  if (log_u >= std::log(0.5)) {
    const double one_minus_u = -std::expm1(log_u);
    return -scale * std::log(2.0 * one_minus_u);
  }
  return scale * (std::log(2.0) + log_u);
}

// Residual itemsets: uniformly random ranks outside `excluded` (kept sorted).
class ResidualPool {
 public:
  ResidualPool(std::span<const ItemId> universe, std::size_t m, BigCount size, std::vector<BigCount> excluded)
      : universe_(universe), m_(m), size_(std::move(size)), excluded_(std::move(excluded)) {
    std::sort(excluded_.begin(), excluded_.end());
  }

  const BigCount& size() const { return size_; }

  Itemset take(dp::NoiseSource& src) {
    if (size_ == 0) throw InvalidArgument("residual pool is exhausted");
    BigCount r = src.noise_off() ? BigCount(0) : uniform_below(size_, src);
    // r-th rank not yet excluded.
    for (const BigCount& e : excluded_) {
      if (e <= r) {
        ++r;
      } else {
        break;
      }
    }
    excluded_.insert(std::upper_bound(excluded_.begin(), excluded_.end(), r), r);
    --size_;
    return shortlex_unrank(universe_, m_, r);
  }

 private:
  std::span<const ItemId> universe_;
  std::size_t m_;
  BigCount size_;
  std::vector<BigCount> excluded_;
};

}  // namespace

void TfConfig::validate() const {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (m == 0) throw InvalidArgument("m must be at least 1");
  if (!(rho > 0 && rho < 1)) throw InvalidArgument("rho must lie in (0, 1)");
  if (!(eps > 0) || !std::isfinite(eps)) throw InvalidArgument("epsilon must be positive and finite");
}

BigCount universe_size(std::size_t n_items, std::size_t m) {
  if (m > n_items) throw InvalidArgument("m exceeds the number of items");
  BigCount total = 0;
  for (std::size_t i = 1; i <= m; ++i) total += binomial(n_items, i);
  return total;
}

double log_big(const BigCount& x) {
  if (x <= 0) throw InvalidArgument("logarithm of a non-positive count");
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 1000) return std::log(x.convert_to<double>());
  const std::size_t shift = bits - 64;
  BigCount top = x >> static_cast<unsigned>(shift);
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double gamma(std::size_t k, double eps, double n, double rho, const BigCount& u_size) {
  if (k == 0 || !(eps > 0) || !(n > 0) || !(rho > 0 && rho < 1)) throw InvalidArgument("invalid gamma parameters");
  const double kd = static_cast<double>(k);
  return 4.0 * kd / (eps * n) * (std::log(kd / rho) + log_big(u_size));
}

double truncated_frequency(double f_x, double f_k, double gamma) { return std::max(f_x, f_k - gamma); }

BigCount shortlex_rank(std::span<const ItemId> universe, const Itemset& x) {
  if (x.empty()) throw InvalidArgument("the empty itemset has no rank");
  const std::size_t n = universe.size();
  const std::size_t len = x.size();
  BigCount rank = 0;
  for (std::size_t i = 1; i < len; ++i) rank += binomial(n, i);
  // Lexicographic rank among len-combinations.
  auto pos = positions(universe, x);
  std::size_t prev = 0;
  for (std::size_t j = 0; j < len; ++j) {
    for (std::size_t a = prev; a < pos[j]; ++a) rank += binomial(n - a - 1, len - j - 1);
    prev = pos[j] + 1;
  }
  return rank;
}

Itemset shortlex_unrank(std::span<const ItemId> universe, std::size_t m, BigCount rank) {
  const std::size_t n = universe.size();
  std::size_t len = 1;
  for (;; ++len) {
    if (len > m || len > n) throw InvalidArgument("rank is outside the universe");
    BigCount block = binomial(n, len);
    if (rank < block) break;
    rank -= block;
  }
  std::vector<ItemId> ids;
  std::size_t a = 0;
  for (std::size_t j = 0; j < len; ++j) {
    for (;; ++a) {
      BigCount block = binomial(n - a - 1, len - j - 1);
      if (rank < block) break;
      rank -= block;
    }
    ids.push_back(universe[a]);
    ++a;
  }
  return Itemset::FromSorted(std::move(ids));
}

TfResult tf_select_and_release(const TransactionDataset& d, const TfConfig& cfg, dp::NoiseSource& src) {
  cfg.validate();
  if (d.empty()) throw EmptyDatasetError();
  auto universe = d.universe();
  if (cfg.m > universe.size()) throw InvalidArgument("m exceeds the number of items");
  const double n = static_cast<double>(d.size());

  TfResult result;
  TfLog& log = result.log;
  dp::BudgetLedger ledger(cfg.eps);
  const double eps_select = ledger.spend("tf-select", dp::Fraction(1, 2));
  const double eps_release = ledger.spend("tf-release", dp::Fraction(1, 2));
  ledger.seal();
  log.ledger = ledger.entries();

  const BigCount u_size = universe_size(universe.size(), cfg.m);
  log.m = cfg.m;
  log.universe_size = u_size.str();
  auto top = exact_top_k(d, cfg.k, cfg.m);
  if (top.empty()) throw InvalidArgument("no itemset has positive support");
  log.f_k = static_cast<double>(top.back().support) / n;
  log.gamma = gamma(cfg.k, cfg.eps, n, cfg.rho, u_size);
  log.pruning_disabled = pruning_disabled(log.f_k, log.gamma);
  const double floor_freq = log.f_k - log.gamma;

  const bool explicit_all = cfg.universe_mode == TfUniverseMode::kExplicit || floor_freq < 0;
  std::vector<Candidate> cands;
  BigCount pool_size = 0;
  if (explicit_all) {
    if (u_size > cfg.explicit_guard) {
      throw InvalidArgument(fmt::format(
          "universe of {} itemsets exceeds the explicit-enumeration guard of {}; use truncated pruning or a "
          "smaller m",
          log.universe_size, cfg.explicit_guard));
    }
    cands = enumerate_all(d, cfg.m);
  } else {
    // f > floor  <=>  support >= floor(floor * N) + 1.
    const auto min_support = static_cast<std::uint64_t>(std::floor(floor_freq * n)) + 1;
    for (auto& s : mine_min_support(d, min_support, cfg.m)) cands.push_back({std::move(s.itemset), s.support});
    pool_size = u_size - cands.size();
  }
  log.enumerated = cands.size();
  log.residual_pool = pool_size.str();

  std::vector<double> truncated(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    truncated[i] = truncated_frequency(static_cast<double>(cands[i].support) / n, log.f_k, log.gamma);
  }

  std::vector<BigCount> excluded;
  if (pool_size > 0) {
    excluded.reserve(cands.size());
    for (const auto& c : cands) excluded.push_back(shortlex_rank(universe, c.itemset));
  }
  ResidualPool pool(universe, cfg.m, pool_size, std::move(excluded));

  dp::NoiseSource select_src = src.derive("tf-select");
  const BigCount total = BigCount(cands.size()) + pool_size;
  const std::size_t k = total < cfg.k ? static_cast<std::size_t>(total) : cfg.k;
  std::vector<Itemset> selected;

  if (cfg.selection == TfSelection::kLaplaceOnTruncated) {
    // Lap(4k/(eps N)) with eps the total budget, i.e. 2k/(eps_select N).
    const double scale = 2.0 * static_cast<double>(cfg.k) / (eps_select * n);
    // Entries are (noisy value, candidate index or -1 for a pool draw).
    std::vector<std::pair<double, std::ptrdiff_t>> noisy;
    noisy.reserve(cands.size() + k);
    for (std::size_t i = 0; i < cands.size(); ++i) {
      noisy.push_back({truncated[i] + dp::laplace(scale, select_src), static_cast<std::ptrdiff_t>(i)});
    }
    if (pool_size > 0) {
      // Only the k largest of the pool's iid draws can be selected. Their
      // uniforms are generated from the top down: u_(R) = V^(1/R) and
      // u_(R-j) = u_(R-j+1) * V^(1/(R-j)).
      const std::size_t draws = pool_size < k ? static_cast<std::size_t>(pool_size) : k;
      const double r = pool_size.convert_to<double>();
      double log_u = 0.0;
      for (std::size_t j = 0; j < draws; ++j) {
        if (select_src.noise_off()) {
          noisy.push_back({floor_freq, -1});
          continue;
        }
        log_u += std::log(select_src.uniform_open()) / (r - static_cast<double>(j));
        noisy.push_back({floor_freq + laplace_quantile_from_log(log_u, scale), -1});
      }
    }
    std::stable_sort(noisy.begin(), noisy.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t j = 0; j < k; ++j) {
      if (noisy[j].second >= 0) {
        selected.push_back(cands[static_cast<std::size_t>(noisy[j].second)].itemset);
      } else {
        selected.push_back(pool.take(select_src));
        ++log.pool_selections;
      }
    }
  } else {
    const double eps_round = eps_select / static_cast<double>(cfg.k);
    const double c = dp::exponent_factor(eps_round, 1.0, dp::Exponent::kTwoSided);
    std::vector<std::size_t> remaining(cands.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    std::vector<double> logits;
    for (std::size_t round = 0; round < k; ++round) {
      logits.resize(remaining.size());
      for (std::size_t i = 0; i < remaining.size(); ++i) logits[i] = c * truncated[remaining[i]] * n;
      if (pool.size() > 0) logits.push_back(c * floor_freq * n + log_big(pool.size()));
      const std::size_t pick = dp::sample_from_logits(logits, select_src);
      if (pick < remaining.size()) {
        selected.push_back(cands[remaining[pick]].itemset);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
      } else {
        selected.push_back(pool.take(select_src));
        ++log.pool_selections;
      }
    }
  }

  dp::NoiseSource release_src = src.derive("tf-release");
  // Lap(2k/(N eps)): sensitivity k/N spent against eps_release = eps/2.
  const double release_scale = static_cast<double>(cfg.k) / (n * eps_release);
  auto supports = supports_of(d, selected);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const double f = static_cast<double>(supports[i]) / n;
    result.released.push_back({std::move(selected[i]), f + dp::laplace(release_scale, release_src)});
  }
  return result;
}

}  // namespace privbasis
