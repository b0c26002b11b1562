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

#include <cstdint>
#include <random>
#include <string_view>

namespace privbasis::dp {

/// Seeded randomness for the mechanisms.
///
/// Each pipeline step draws from its own sub-stream, obtained with
/// derive(label), so that draws of one step never depend on how many draws an
/// earlier step consumed. A source built with NoiseOff() is non-private: the
/// mechanisms treat it as infinite epsilon (zero Laplace noise, argmax
/// selection). It exists for oracle tests and diagnostics only.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed);

  /// Non-private source: every mechanism becomes deterministic.
  static NoiseSource NoiseOff();

  bool noise_off() const noexcept { return noise_off_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Independent sub-stream keyed by (seed, label). Does not advance *this.
  NoiseSource derive(std::string_view label) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  NoiseSource(std::uint64_t seed, bool noise_off);

  std::uint64_t seed_;
  bool noise_off_;
  std::mt19937_64 engine_;
};

}  // namespace privbasis::dp
