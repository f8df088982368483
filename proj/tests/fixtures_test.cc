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

#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

#include "syneval/config.h"
#include "syneval/fixtures.h"
#include "syneval/manifest.h"
#include "syneval/metrics.h"
#include "test_util.h"

namespace syneval {
namespace {

TEST(FixturesTest, SplitsAreSeventyFifteenFifteen) {
  const auto s = synthetic_splits(1000);
  std::size_t counts[3] = {0, 0, 0};
  for (Split x : s) ++counts[static_cast<int>(x)];
  EXPECT_EQ(counts[0], 700u);
  EXPECT_EQ(counts[1], 150u);
  EXPECT_EQ(counts[2], 150u);
  for (std::size_t n : {7u, 20u, 101u}) {
    const auto small = synthetic_splits(n);
    EXPECT_EQ(std::set<Split>(small.begin(), small.end()).size(), 3u) << n;
  }
}

TEST(FixturesTest, StoresAreDeterministic) {
  const auto a = gen_disentangled_store(100, 8, {2, 3}, 5);
  const auto b = gen_disentangled_store(100, 8, {2, 3}, 5);
  EXPECT_EQ(a.store.matrix, b.store.matrix);
  EXPECT_EQ(a.fv, b.fv);
  EXPECT_NE(a.store.matrix, gen_disentangled_store(100, 8, {2, 3}, 6).store.matrix);
  EXPECT_EQ(gen_entangled_store(50, 8, {2, 2}, 1).store.matrix,
            gen_entangled_store(50, 8, {2, 2}, 1).store.matrix);
  ASSERT_EQ(a.fv_names.size(), 2u);
  EXPECT_EQ(a.fv_names[1], "fv1");
  for (const auto& fv : a.fv) {
    for (double v : fv) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(FixturesTest, ShiftingOneFactorLeavesOtherBlocksAlone) {
  const auto s = gen_disentangled_store(20, 10, {2, 3}, 8);
  for (std::size_t row = 0; row < 20; ++row) {
    const auto shifted = s.shifted(row, 0, 0.3);
    const auto orig = s.store.matrix.row(row);
    for (std::size_t j = 2; j < 10; ++j) EXPECT_EQ(shifted[j], orig[j]) << row << "," << j;
    EXPECT_NE(shifted[0], orig[0]);
    const auto none = s.shifted(row, 1, 0.0);
    for (std::size_t j = 0; j < 10; ++j) EXPECT_FLOAT_EQ(none[j], orig[j]);
  }
}

TEST(FixturesTest, RotationIsOrthogonal) {
  for (std::size_t d : {2u, 5u, 16u}) {
    const Matrix q = random_rotation(d, 3);
    const Matrix qtq = matmul_transpose_a(q, q);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(qtq(i, j), i == j ? 1.0 : 0.0, 1e-5);
    }
  }
}

TEST(FixturesTest, LinearActionPairsHaveIdentityAtZero) {
  const auto pairs = gen_linear_action_pairs(300, 8, 4);
  const auto u = linear_action_direction(8, 4);
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto z = pairs.clean.matrix.row(i);
    const auto zp = pairs.transformed.matrix.row(i);
    double n = 0.0;
    for (float v : zp) n += static_cast<double>(v) * v;
    EXPECT_NEAR(std::sqrt(n), 1.0, 1e-5);
    EXPECT_EQ(pairs.params_raw[i], pairs.params_normalized[i]);
    if (pairs.params_raw[i] == 0.0) {
      ++zeros;
      EXPECT_TRUE(std::equal(z.begin(), z.end(), zp.begin()));
    } else {
      // z' - z lies in the plane of z and u.
      std::vector<float> expected(z.begin(), z.end());
      for (std::size_t j = 0; j < 8; ++j) expected[j] += static_cast<float>(pairs.params_raw[i]) * u[j];
      EXPECT_GE(cosine_similarity(expected, zp), 1.0 - 1e-5);
    }
  }
  EXPECT_FALSE(pairs.transform.has_value());
  (void)zeros;
}

TEST(FixturesTest, SignalsHaveTheAdvertisedShape) {
  const AudioClip sine = gen_sine_clip(440.0, 0.5, 8000.0, 0.25);
  EXPECT_EQ(sine.samples.size(), 4000u);
  EXPECT_NEAR(rms(sine.samples), 0.25 / std::sqrt(2.0), 1e-3);
  const auto speech = gen_speech_like_clip(4, 2.0, 1);
  EXPECT_EQ(speech.transcript, "w1 w2 w3 w4");
  EXPECT_EQ(speech.clip.samples.size(), 32000u);
  EXPECT_NO_THROW(speech.clip.validate());
  const ImageRGB g = gen_gradient_image(4, 5);
  EXPECT_FLOAT_EQ(g.at(0, 0, 0), 0.0f);
  EXPECT_FLOAT_EQ(g.at(3, 4, 0), 1.0f);
  EXPECT_EQ(gen_speckle_image(8, 8, 2), gen_speckle_image(8, 8, 2));
}

TEST(FixturesTest, SmokeFixtureIsCompleteAndDeterministic) {
  syneval::testing::TempDir a, b;
  const auto cfg_a = write_smoke_fixture(a.path(), 8, 4);
  write_smoke_fixture(b.path(), 8, 4);
  EXPECT_EQ(syneval::testing::read_file(cfg_a), syneval::testing::read_file(b / "smoke.json"));
  EXPECT_EQ(syneval::testing::read_file(a / "images" / "img3.png"),
            syneval::testing::read_file(b / "images" / "img3.png"));
  const RunConfig cfg = load_config(cfg_a);
  EXPECT_EQ(cfg.jobs.size(), 5u);
  std::set<Axis> axes;
  for (const auto& j : cfg.jobs) axes.insert(j.axis);
  EXPECT_EQ(axes.size(), 5u);
  EXPECT_EQ(load_manifest(a / "images.jsonl").size(), 8u);
  const auto audio = load_manifest(a / "audio.jsonl");
  ASSERT_EQ(audio.size(), 4u);
  EXPECT_TRUE(audio[0].transcript.has_value());
}

}  // namespace
}  // namespace syneval
