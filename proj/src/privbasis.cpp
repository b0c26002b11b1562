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

#include "privbasis/privbasis.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "privbasis/dp/mechanisms.hpp"
#include "privbasis/error.hpp"
#include "privbasis/miner.hpp"

namespace privbasis {
namespace {

void note(RunLog* log, std::string msg) {
  if (log != nullptr) log->notes.push_back(std::move(msg));
}

std::size_t ceil_product(std::size_t k, double eta) {
  // Guard against products such as 100 * 1.1 landing just above an integer.
  return static_cast<std::size_t>(std::ceil(static_cast<double>(k) * eta - 1e-9));
}

}  // namespace

double PrivBasisConfig::effective_eta() const { return eta.value_or(k <= 100 ? 1.2 : 1.1); }

void PrivBasisConfig::validate() const {
  if (!(eps > 0) || !std::isfinite(eps)) throw InvalidArgument("epsilon must be positive and finite");
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (alpha1 <= 0 || alpha2 <= 0 || alpha3 <= 0) throw InvalidArgument("budget fractions must be positive");
  if (alpha1 + alpha2 + alpha3 != dp::Fraction(1)) throw InvalidArgument("budget fractions must sum to 1");
  if (!(effective_eta() >= 1.0) || !std::isfinite(effective_eta())) throw InvalidArgument("eta must be at least 1");
  if (l_max == 0 || l_max > 30) throw InvalidArgument("l_max must be in [1, 30]");
  if (lambda_single_basis_cap > l_max) throw InvalidArgument("single-basis cap may not exceed l_max");
}

std::string RunLog::describe() const {
  std::string out = fmt::format("k1={} theta={:.6g} lambda={}", k1, theta, lambda);
  if (lambda2) {
    out += fmt::format(" lambda2={} beta1={}/{} beta2={}/{}", *lambda2, beta1.numerator(), beta1.denominator(),
                       beta2.numerator(), beta2.denominator());
  }
  out += fmt::format("\nbasis width={} length={}", basis.width(), basis.length());
  for (const auto& b : basis.bases) out += "\n  " + b.to_string();
  for (const auto& e : ledger) {
    out += fmt::format("\nledger {} {}/{}", e.label, e.fraction.numerator(), e.fraction.denominator());
  }
  for (const auto& n : notes) out += "\nnote: " + n;
  return out;
}

LambdaEstimate get_lambda(const TransactionDataset& d, std::size_t k, double eps, double eta, dp::NoiseSource& src,
                          RunLog* log) {
  if (d.empty()) throw EmptyDatasetError();
  if (k == 0) throw InvalidArgument("k must be at least 1");
  LambdaEstimate est;
  est.k1 = ceil_product(k, eta);
  auto top = exact_top_k(d, est.k1);
  if (top.empty()) throw InvalidArgument("no itemset has positive support");
  if (top.size() < est.k1) {
    note(log, fmt::format("k1={} exceeds the {} itemsets with positive support; clamped", est.k1, top.size()));
    est.k1 = top.size();
  }
  const double n = static_cast<double>(d.size());
  const std::uint64_t theta_count = top[est.k1 - 1].support;
  est.theta = static_cast<double>(theta_count) / n;

  // (1 - |theta - f_i|) N evaluated on counts, so equal distances tie exactly.
  auto items = ranked_items(d);
  std::vector<double> quality(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::uint64_t s = items[i].support;
    const std::uint64_t gap = s > theta_count ? s - theta_count : theta_count - s;
    quality[i] = static_cast<double>(d.size() - gap);
  }
  est.lambda = dp::exp_mechanism(quality, eps, 1.0, dp::Exponent::kTwoSided, src) + 1;
  return est;
}

std::vector<Itemset> get_freq_elements(const TransactionDataset& d, std::span<const Itemset> candidates,
                                       std::size_t count, double eps, dp::NoiseSource& src, FreqElementsMode mode,
                                       RunLog* log) {
  if (d.empty()) throw EmptyDatasetError();
  if (count > candidates.size()) {
    note(log, fmt::format("requested {} elements from {} candidates; clamped", count, candidates.size()));
    count = candidates.size();
  }
  if (count == 0) return {};
  auto supports = supports_of(d, candidates);
  std::vector<double> quality(supports.size());
  const double scale = mode == FreqElementsMode::kSupport ? 1.0 : 1.0 / static_cast<double>(d.size());
  for (std::size_t i = 0; i < supports.size(); ++i) quality[i] = static_cast<double>(supports[i]) * scale;
  auto picks = dp::sample_without_replacement(quality, count, eps, 1.0, dp::Exponent::kOneSided, src);
  std::vector<Itemset> out;
  out.reserve(picks.size());
  for (std::size_t i : picks) out.push_back(candidates[i]);
  return out;
}

std::size_t lambda2_heuristic(std::size_t k, std::size_t lambda, double eta) {
  if (k == 0 || lambda == 0) throw InvalidArgument("k and lambda must be at least 1");
  const double l2p = static_cast<double>(k) * eta - static_cast<double>(lambda);
  const std::size_t cap = lambda * (lambda - 1) / 2;
  if (l2p <= 0) return 0;
  const double value = l2p / std::sqrt(std::max(1.0, l2p / static_cast<double>(lambda)));
  // The small offset keeps exact integers such as 50 from flooring to 49.
  const auto floored = static_cast<std::size_t>(std::floor(value + 1e-9));
  return std::min(floored, cap);
}

PrivBasisResult privbasis_main(const TransactionDataset& d, const PrivBasisConfig& cfg, dp::NoiseSource& src) {
  cfg.validate();
  if (d.empty()) throw EmptyDatasetError();
  PrivBasisResult result;
  RunLog& log = result.log;
  dp::BudgetLedger ledger(cfg.eps);
  const double eta = cfg.effective_eta();

  dp::NoiseSource lambda_src = src.derive("get-lambda");
  const double eps1 = ledger.spend("get-lambda", cfg.alpha1);
  const LambdaEstimate est = get_lambda(d, cfg.k, eps1, eta, lambda_src, &log);
  log.k1 = est.k1;
  log.theta = est.theta;
  log.lambda = est.lambda;

  std::vector<Itemset> singletons;
  for (ItemId id : d.universe()) singletons.push_back(Itemset::FromSorted({id}));

  dp::NoiseSource items_src = src.derive("freq-items");
  BasisSet basis;
  if (est.lambda <= cfg.lambda_single_basis_cap) {
    log.beta1 = cfg.alpha2;
    const double eps2 = ledger.spend("freq-items", cfg.alpha2);
    auto f = get_freq_elements(d, singletons, est.lambda, eps2, items_src, cfg.freq_mode, &log);
    std::vector<ItemId> ids;
    for (const auto& x : f) ids.push_back(x.front());
    basis.bases.emplace_back(std::move(ids));
  } else {
    const std::size_t lambda2 = lambda2_heuristic(cfg.k, est.lambda, eta);
    log.lambda2 = lambda2;
    log.beta1 = cfg.alpha2 * dp::Fraction(static_cast<std::int64_t>(est.lambda),
                                          static_cast<std::int64_t>(est.lambda + lambda2));
    log.beta2 = cfg.alpha2 - log.beta1;

    const double eps_items = ledger.spend("freq-items", log.beta1);
    auto f = get_freq_elements(d, singletons, est.lambda, eps_items, items_src, cfg.freq_mode, &log);
    std::vector<ItemId> f_ids;
    for (const auto& x : f) f_ids.push_back(x.front());

    std::vector<Itemset> pairs_selected;
    if (lambda2 > 0) {
      std::vector<ItemId> sorted = f_ids;
      std::sort(sorted.begin(), sorted.end());
      std::vector<Itemset> pair_candidates;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) pair_candidates.push_back(Itemset::FromSorted({sorted[i], sorted[j]}));
      }
      dp::NoiseSource pairs_src = src.derive("freq-pairs");
      const double eps_pairs = ledger.spend("freq-pairs", log.beta2);
      pairs_selected = get_freq_elements(d, pair_candidates, lambda2, eps_pairs, pairs_src, cfg.freq_mode, &log);
    } else {
      note(&log, "lambda2 is 0; frequent-pair step skipped and its budget given to the item step");
    }

    std::size_t use = pairs_selected.size();
    for (std::size_t attempt = 0;; ++attempt) {
      std::vector<ItemPair> p;
      for (std::size_t i = 0; i < use; ++i) p.push_back({pairs_selected[i].front(), pairs_selected[i].back()});
      try {
        basis = construct_basis_set(f_ids, p, cfg.eps * dp::to_double(cfg.alpha3), static_cast<double>(d.size()),
                                    cfg.l_max);
        break;
      } catch (const OversizedClique& e) {
        if (attempt >= cfg.clique_retries) throw;
        const std::size_t next = use * 3 / 4;
        note(&log, fmt::format("{}; retrying with the first {} of {} selected pairs", e.what(), next, use));
        use = next;
      }
    }
    log.pairs_used = use;
  }

  dp::NoiseSource freq_src = src.derive("basis-freq");
  const double eps3 = ledger.spend("basis-freq", cfg.alpha3);
  ledger.seal();
  log.basis = basis;
  log.ledger = ledger.entries();
  auto bf = basis_freq(d, basis, cfg.k, eps3, freq_src, cfg.l_max);
  if (bf.short_output) {
    note(&log, fmt::format("candidate set has only {} itemsets, fewer than k={}", bf.candidates, cfg.k));
  }
  result.released = std::move(bf.released);
  result.short_output = bf.short_output;
  return result;
}

}  // namespace privbasis
