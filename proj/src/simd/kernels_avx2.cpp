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

// AVX2 variants. This translation unit is compiled with -mavx2 and is only
// entered after dispatch has confirmed AVX2 support at runtime.

#include <immintrin.h>

#include <bit>

#include "privbasis/simd/kernels.hpp"

namespace privbasis::simd::avx2 {
namespace {

// Nibble-LUT popcount of each byte, summed per 64-bit lane with SAD.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(va, vb)));
  }
  std::uint64_t c = horizontal_sum(acc);
  for (; i < n; ++i) c += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return c;
}

void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i))));
  }
  std::uint64_t c = horizontal_sum(acc);
  for (; i < n; ++i) c += static_cast<std::uint64_t>(std::popcount(a[i]));
  return c;
}

void superset_sum(double* t, unsigned bits) {
  const std::size_t size = std::size_t{1} << bits;
  for (std::size_t stride = 1; stride < size; stride <<= 1) {
    if (stride < 4) {
      for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t j = 0; j < stride; ++j) t[base + j] += t[base + stride + j];
      }
      continue;
    }
    for (std::size_t base = 0; base < size; base += 2 * stride) {
      double* lo = t + base;
      const double* hi = t + base + stride;
      for (std::size_t j = 0; j < stride; j += 4) {
        _mm256_storeu_pd(lo + j, _mm256_add_pd(_mm256_loadu_pd(lo + j), _mm256_loadu_pd(hi + j)));
      }
    }
  }
}

double max_value(const double* v, std::size_t n) {
  std::size_t i = 0;
  double m = v[0];
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(v);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(v + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    m = lanes[0];
    for (double x : lanes) m = x > m ? x : m;
  }
  for (; i < n; ++i) m = v[i] > m ? v[i] : m;
  return m;
}

}  // namespace

extern const KernelTable kTable = {&and_popcount, &and_into, &popcount, &superset_sum, &max_value};

}  // namespace privbasis::simd::avx2
