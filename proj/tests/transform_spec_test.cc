// Copyright 2026 The syneval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "syneval/rng.h"
#include "syneval/transform_spec.h"
#include "test_util.h"

namespace syneval {
namespace {

TEST(TransformSpecTest, RegistryIsConsistent) {
  ASSERT_EQ(all_transforms().size(), 8u);
  for (const auto& info : all_transforms()) {
    EXPECT_EQ(parse_transform_kind(info.name), info.kind);
    EXPECT_EQ(&transform_info(info.kind), &info);
    EXPECT_LT(info.min, info.max) << info.name;
    EXPECT_GE(info.neutral, info.min) << info.name;
    EXPECT_LE(info.neutral, info.max) << info.name;
    EXPECT_NO_THROW(TransformSpec::defaults(info.kind).validate()) << info.name;
  }
  EXPECT_SYNEVAL_ERROR_MSG(parse_transform_kind("blur"), kConfig, "blur");
  EXPECT_SYNEVAL_ERROR(parse_modality("video"), kConfig);
  EXPECT_EQ(parse_modality(modality_name(Modality::kAudio)), Modality::kAudio);
}

TEST(TransformSpecTest, NormalizeIsInvertibleProperty) {
  Rng rng(1);
  for (const auto& info : all_transforms()) {
    const TransformSpec spec = TransformSpec::defaults(info.kind);
    for (int i = 0; i < 200; ++i) {
      const double raw = rng.uniform(info.min, info.max);
      const double n = spec.normalize(raw);
      EXPECT_GE(n, 0.0);
      EXPECT_LE(n, 1.0);
      EXPECT_NEAR(spec.denormalize(n), raw, 1e-6 * std::max(1.0, std::abs(raw)));
    }
    EXPECT_DOUBLE_EQ(spec.normalize(info.min), 0.0);
    EXPECT_DOUBLE_EQ(spec.normalize(info.max), 1.0);
  }
}

TEST(TransformSpecTest, DrawDependsOnlyOnSeedAndIdProperty) {
  TransformSpec spec = TransformSpec::defaults(TransformKind::kPitchShift, 99);
  spec.min = -3.0;
  spec.max = 4.0;
  for (int i = 0; i < 500; ++i) {
    const std::string id = "s" + std::to_string(i);
    const double v = spec.draw(id);
    EXPECT_GE(v, -3.0);
    EXPECT_LT(v, 4.0);
    // Drawing other ids first, or in any order, cannot change this value.
    spec.draw("other" + std::to_string(i));
    EXPECT_EQ(spec.draw(id), v);
  }
  TransformSpec reseeded = spec;
  reseeded.seed = 100;
  EXPECT_NE(spec.draw("s0"), reseeded.draw("s0"));
}

TEST(TransformSpecTest, GridIsSortedAndContainsNeutral) {
  TransformSpec spec = TransformSpec::defaults(TransformKind::kHueShift);
  spec.min = -0.3;
  spec.max = 0.4;
  spec.neutral = 0.0;
  const auto g = spec.grid(4);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_EQ(g.front(), -0.3);
  EXPECT_EQ(g.back(), 0.4);
  EXPECT_NE(std::find(g.begin(), g.end(), 0.0), g.end());
  EXPECT_EQ(g.size(), 5u);
  // Already on the grid: no duplicate.
  spec.min = -0.4;
  EXPECT_EQ(spec.grid(5).size(), 5u);
  EXPECT_SYNEVAL_ERROR(spec.grid(0), kConfig);
  EXPECT_EQ(spec.grid(1).size(), 2u);
}

TEST(TransformSpecTest, AtFractionInterpolatesFromNeutral) {
  TransformSpec spec = TransformSpec::defaults(TransformKind::kBrightnessShift);
  spec.min = -1.0;
  spec.max = 0.5;
  spec.neutral = 0.0;
  EXPECT_DOUBLE_EQ(spec.at_fraction(0.0), 0.0);
  EXPECT_DOUBLE_EQ(spec.at_fraction(1.0), 0.5);
  EXPECT_DOUBLE_EQ(spec.at_fraction(-1.0), -1.0);
  EXPECT_DOUBLE_EQ(spec.at_fraction(-0.5), -0.5);
}

TEST(TransformSpecTest, ValidationNamesTheTransform) {
  TransformSpec spec = TransformSpec::defaults(TransformKind::kTimeStretch);
  spec.max = 3.0;
  EXPECT_SYNEVAL_ERROR_MSG(spec.validate(), kConfig, "time_stretch");
  spec = TransformSpec::defaults(TransformKind::kTimeStretch);
  spec.min = 1.5;
  spec.max = 1.2;
  EXPECT_SYNEVAL_ERROR_MSG(spec.validate(), kConfig, "exceeds");
  spec = TransformSpec::defaults(TransformKind::kTimeStretch);
  spec.fv_target.clear();
  EXPECT_SYNEVAL_ERROR_MSG(spec.validate(), kConfig, "fv_target");
}

}  // namespace
}  // namespace syneval
