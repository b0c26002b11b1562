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
#include <span>
#include <vector>

#include "privbasis/dp/noise.hpp"

namespace privbasis::dp {

/// One draw from Laplace(0, scale). Zero when `src` is noise-off.
/// Throws InvalidArgument unless scale is positive and finite.
double laplace(double scale, NoiseSource& src);

/// Exponent convention of the exponential mechanism. Two-sided weights are
/// exp(eps*q/(2*GS)); one-sided (monotone quality) weights exp(eps*q/GS).
enum class Exponent { kTwoSided, kOneSided };

/// Multiplier applied to quality scores to obtain log-weights.
double exponent_factor(double eps, double sensitivity, Exponent exponent);

/// Samples index i with probability proportional to exp(logits[i]), computed
/// after shifting by the maximum. Noise-off returns the argmax (lowest index
/// on ties). Throws InvalidArgument on empty input or non-finite logits.
std::size_t sample_from_logits(std::span<const double> logits, NoiseSource& src);

/// The exponential mechanism over candidates 0..quality.size()-1.
std::size_t exp_mechanism(std::span<const double> quality, double eps, double sensitivity, Exponent exponent,
                          NoiseSource& src);

/// `count` rounds of the exponential mechanism without replacement, each
/// with budget eps/count. Returns distinct indices in selection order.
/// Noise-off returns the top `count` by quality (ties to the lower index).
/// Throws InvalidArgument when count > quality.size().
std::vector<std::size_t> sample_without_replacement(std::span<const double> quality, std::size_t count, double eps,
                                                    double sensitivity, Exponent exponent, NoiseSource& src);

}  // namespace privbasis::dp
