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

// Data-parallel inner loops with a scalar reference and ISA-specific
// variants. The variant is chosen once at startup from CPUID; setting the
// environment variable PRIVBASIS_ISA=scalar forces the reference path.
//
// Every variant must produce bit-identical results to the scalar reference:
// the integer kernels trivially, and superset_sum because each lane performs
// the same additions in the same order as the scalar loop.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace privbasis::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  // popcount(a & b) over n words.
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  // dst = a & b over n words. dst may alias a or b.
  void (*and_into)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
  // popcount over n words.
  std::uint64_t (*popcount)(const std::uint64_t* a, std::size_t n);
  // In-place superset-sum (zeta) transform over a table of 2^bits entries:
  // afterwards t[X] = sum over Y with X subset-of Y of the original t[Y].
  void (*superset_sum)(double* t, unsigned bits);
  // Maximum of n >= 1 finite values.
  double (*max_value)(const double* v, std::size_t n);
};

/// Highest ISA supported by both the build and the running CPU.
Isa detected_isa();

/// ISA currently used by the span wrappers below.
Isa active_isa();

/// Overrides the active ISA (tests and benchmarks). Falls back to scalar if
/// the requested variant is unavailable; returns the ISA actually selected.
Isa set_active_isa(Isa isa);

/// Kernels for a specific ISA; nullptr when not available on this host.
const KernelTable* kernels_for(Isa isa);

const KernelTable& active_kernels();

inline std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return active_kernels().and_popcount(a.data(), b.data(), a.size());
}

inline void and_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b) {
  active_kernels().and_into(dst.data(), a.data(), b.data(), dst.size());
}

inline std::uint64_t popcount(std::span<const std::uint64_t> a) {
  return active_kernels().popcount(a.data(), a.size());
}

inline void superset_sum(std::span<double> table, unsigned bits) {
  active_kernels().superset_sum(table.data(), bits);
}

inline double max_value(std::span<const double> v) { return active_kernels().max_value(v.data(), v.size()); }

}  // namespace privbasis::simd
