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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "privbasis/simd/kernels.hpp"

namespace privbasis::simd {

namespace scalar {
extern const KernelTable kTable;
}  // namespace scalar

#if defined(PRIVBASIS_HAVE_AVX2_TU)
namespace avx2 {
extern const KernelTable kTable;
}  // namespace avx2
#endif

namespace {

bool cpu_has_avx2() {
#if defined(PRIVBASIS_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* forced = std::getenv("PRIVBASIS_ISA")) {
    if (std::string_view(forced) == "scalar") return Isa::kScalar;
  }
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
  return isa;
}

const KernelTable* kernels_for(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return &scalar::kTable;
    case Isa::kAvx2:
#if defined(PRIVBASIS_HAVE_AVX2_TU)
      return detected_isa() == Isa::kAvx2 ? &avx2::kTable : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) {
  if (kernels_for(isa) == nullptr) isa = Isa::kScalar;
  active().store(isa, std::memory_order_relaxed);
  return isa;
}

const KernelTable& active_kernels() { return *kernels_for(active_isa()); }

}  // namespace privbasis::simd
