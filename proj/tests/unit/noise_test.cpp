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

#include <gtest/gtest.h>

namespace privbasis::dp {
namespace {

TEST(NoiseSourceTest, SameSeedSameSequence) {
  NoiseSource a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(NoiseSourceTest, DerivedStreamsAreStableAndDistinct) {
  NoiseSource root(42);
  NoiseSource x1 = root.derive("x");
  root.next_u64();
  NoiseSource x2 = root.derive("x");
  NoiseSource y = root.derive("y");
  const auto first = x1.next_u64();
  EXPECT_EQ(first, x2.next_u64());
  EXPECT_NE(first, y.next_u64());
  EXPECT_NE(NoiseSource(1).derive("x").seed(), NoiseSource(2).derive("x").seed());
}

TEST(NoiseSourceTest, UniformRanges) {
  NoiseSource s(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double v = s.uniform_open();
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(NoiseSourceTest, NoiseOffPropagatesToDerived) {
  EXPECT_TRUE(NoiseSource::NoiseOff().noise_off());
  EXPECT_TRUE(NoiseSource::NoiseOff().derive("step").noise_off());
  EXPECT_FALSE(NoiseSource(1).derive("step").noise_off());
}

}  // namespace
}  // namespace privbasis::dp
