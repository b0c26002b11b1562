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


#include "privbasis/dp/noise.hpp"

namespace privbasis::dp {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

NoiseSource::NoiseSource(std::uint64_t seed) : NoiseSource(seed, false) {}

NoiseSource::NoiseSource(std::uint64_t seed, bool noise_off)
    : seed_(seed), noise_off_(noise_off), engine_(splitmix64(seed)) {}

NoiseSource NoiseSource::NoiseOff() { return NoiseSource(0, true); }

NoiseSource NoiseSource::derive(std::string_view label) const {
  return NoiseSource(splitmix64(seed_ ^ splitmix64(fnv1a(label))), noise_off_);
}

double NoiseSource::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double NoiseSource::uniform_open() {
  // Offsetting by half a step keeps both endpoints out of reach.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace privbasis::dp
