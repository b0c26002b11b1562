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

#include <vector>

#include "privbasis/itemset.hpp"

namespace privbasis {

/// One released itemset with its noisy frequency. Frequencies are raw noisy
/// values and may fall outside [0, 1].
struct NoisyItemset {
  Itemset itemset;
  double noisy_frequency = 0.0;
};

using Release = std::vector<NoisyItemset>;

}  // namespace privbasis
