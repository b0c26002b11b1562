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


#include "privbasis/dp/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "privbasis/error.hpp"

namespace privbasis::dp {
namespace {

void check_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument(std::string(what) + " must be positive and finite");
}

void check_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + " contains a non-finite value");
  }
}

std::size_t argmax_lowest(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

double laplace(double scale, NoiseSource& src) {
  check_positive(scale, "Laplace scale");
  if (src.noise_off()) return 0.0;
  // Inverse CDF on u in (-1/2, 1/2).
  const double u = src.uniform_open() - 0.5;
  const double mag = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0 ? -mag : mag;
}

double exponent_factor(double eps, double sensitivity, Exponent exponent) {
  check_positive(eps, "epsilon");
  check_positive(sensitivity, "sensitivity");
  return exponent == Exponent::kTwoSided ? eps / (2.0 * sensitivity) : eps / sensitivity;
}

std::size_t sample_from_logits(std::span<const double> logits, NoiseSource& src) {
  if (logits.empty()) throw InvalidArgument("exponential mechanism needs at least one candidate");
  check_finite(logits, "logits");
  if (src.noise_off()) return argmax_lowest(logits);
  const double max = *std::max_element(logits.begin(), logits.end());
  std::vector<double> cumulative(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    total += std::exp(logits[i] - max);
    cumulative[i] = total;
  }
  const double target = src.uniform() * total;
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

std::size_t exp_mechanism(std::span<const double> quality, double eps, double sensitivity, Exponent exponent,
                          NoiseSource& src) {
  if (quality.empty()) throw InvalidArgument("exponential mechanism needs at least one candidate");
  check_finite(quality, "quality");
  const double c = exponent_factor(eps, sensitivity, exponent);
  std::vector<double> logits(quality.size());
  std::transform(quality.begin(), quality.end(), logits.begin(), [c](double q) { return c * q; });
  return sample_from_logits(logits, src);
}

std::vector<std::size_t> sample_without_replacement(std::span<const double> quality, std::size_t count, double eps,
                                                    double sensitivity, Exponent exponent, NoiseSource& src) {
  if (count > quality.size()) throw InvalidArgument("cannot sample more candidates than exist");
  check_finite(quality, "quality");
  if (count == 0) return {};
  const double c = exponent_factor(eps / static_cast<double>(count), sensitivity, exponent);

  std::vector<std::size_t> remaining(quality.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  if (src.noise_off()) {
    std::stable_sort(remaining.begin(), remaining.end(),
                     [&](std::size_t a, std::size_t b) { return quality[a] > quality[b]; });
    remaining.resize(count);
    return remaining;
  }

  std::vector<std::size_t> out;
  out.reserve(count);
  std::vector<double> logits;
  for (std::size_t round = 0; round < count; ++round) {
    logits.resize(remaining.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) logits[i] = c * quality[remaining[i]];
    const std::size_t pick = sample_from_logits(logits, src);
    out.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

}  // namespace privbasis::dp
