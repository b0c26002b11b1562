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

#include <bit>

#include "privbasis/simd/kernels.hpp"

namespace privbasis::simd::scalar {
namespace {

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return c;
}

void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t n) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::uint64_t>(std::popcount(a[i]));
  return c;
}

// One pass per bit: t[mask] += t[mask | bit] for every mask without the bit.
void superset_sum(double* t, unsigned bits) {
  const std::size_t size = std::size_t{1} << bits;
  for (std::size_t stride = 1; stride < size; stride <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * stride) {
      for (std::size_t j = 0; j < stride; ++j) t[base + j] += t[base + stride + j];
    }
  }
}

double max_value(const double* v, std::size_t n) {
  double m = v[0];
  for (std::size_t i = 1; i < n; ++i) m = v[i] > m ? v[i] : m;
  return m;
}

}  // namespace

extern const KernelTable kTable = {&and_popcount, &and_into, &popcount, &superset_sum, &max_value};

}  // namespace privbasis::simd::scalar
