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
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "syneval/extractor.h"
#include "syneval/fixtures.h"
#include "syneval/image_io.h"
#include "syneval/media.h"
#include "syneval/pairs.h"
#include "syneval/rng.h"
#include "syneval/wav_io.h"
#include "test_util.h"

namespace syneval {
namespace {

using syneval::testing::TempDir;
using syneval::testing::write_file;

MediaDataset image_dataset(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  MediaDataset ds;
  const auto splits = synthetic_splits(n);
  for (std::size_t i = 0; i < n; ++i) {
    SampleRecord rec;
    rec.id = "img" + std::to_string(i);
    rec.split = splits[i];
    ds.push_back({rec, gen_textured_image(24, 24, rng.uniform(), rng.uniform(0.3, 0.9),
                                          rng.uniform(0.3, 0.9), seed + i)});
  }
  return ds;
}

MediaDataset audio_dataset(std::size_t n, std::uint64_t seed) {
  MediaDataset ds;
  const auto splits = synthetic_splits(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto clip = gen_speech_like_clip(3 + i % 4, 1.5, seed + i);
    SampleRecord rec;
    rec.id = "clip" + std::to_string(i);
    rec.split = splits[i];
    rec.transcript = clip.transcript;
    rec.duration_s = 1.5;
    ds.push_back({rec, clip.clip});
  }
  return ds;
}

double mean_displacement(const FeatureExtractor& ex, const MediaDataset& ds, TransformKind kind,
                         double value) {
  double total = 0.0;
  for (const auto& s : ds) {
    const auto a = ex.extract(s.media);
    const auto b = ex.extract(apply_transform(s.media, kind, value, 1, s.record.id));
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    total += std::sqrt(d);
  }
  return total / static_cast<double>(ds.size());
}

TEST(ExtractorTest, ToyExtractorsSeeEveryTransform) {
  const ToyImageExtractor image({3, 32, Modality::kImage});
  const ToyAudioExtractor audio({3, 32, Modality::kAudio});
  const MediaDataset images = image_dataset(32, 1);
  const MediaDataset clips = audio_dataset(32, 2);
  for (const auto& info : all_transforms()) {
    const double mid = info.neutral == info.min ? 0.5 * (info.min + info.max)
                                                : info.min + 0.75 * (info.max - info.min);
    const bool is_image = info.modality == Modality::kImage;
    const double d = mean_displacement(is_image ? static_cast<const FeatureExtractor&>(image) : audio,
                                       is_image ? images : clips, info.kind, mid);
    EXPECT_GT(d, 1e-3) << info.name << " at " << mid;
  }
}

TEST(ExtractorTest, OutputsAreFiniteNonzeroAndDeterministic) {
  const auto image = make_toy_extractor({5, 16, Modality::kImage});
  const auto audio = make_toy_extractor({5, 16, Modality::kAudio});
  EXPECT_NE(image->id(), audio->id());
  for (const auto& s : image_dataset(4, 3)) {
    const auto z = image->extract(s.media);
    ASSERT_EQ(z.size(), 16u);
    double n = 0.0;
    for (float v : z) {
      ASSERT_TRUE(std::isfinite(v));
      n += v * v;
    }
    EXPECT_GT(n, 0.0);
    EXPECT_EQ(z, image->extract(s.media));
  }
  EXPECT_SYNEVAL_ERROR(make_toy_extractor({5, 1, Modality::kImage}), kConfig);
  const Media short_clip = AudioClip{std::vector<float>(1000, 0.1f), 16000.0};
  EXPECT_SYNEVAL_ERROR(audio->extract(short_clip), kInput);
  EXPECT_SYNEVAL_ERROR(audio->extract(Media{ImageRGB::filled(4, 4, 0, 0, 0)}), kConfig);
}

TEST(ExtractorTest, MelFilterbankCoversSpectrum) {
  const auto bank = mel_filterbank(64, 1024, 16000.0);
  ASSERT_EQ(bank.size(), 64u);
  std::size_t prev_peak = 0;
  for (std::size_t b = 0; b < bank.size(); ++b) {
    ASSERT_EQ(bank[b].size(), 513u);
    std::size_t peak = 0;
    for (std::size_t k = 0; k < bank[b].size(); ++k) {
      EXPECT_GE(bank[b][k], 0.0);
      if (bank[b][k] > bank[b][peak]) peak = k;
    }
    EXPECT_GT(bank[b][peak], 0.0) << "band " << b;
    EXPECT_GE(peak, prev_peak);
    prev_peak = peak;
  }
}

TEST(MediaTest, LoadsByExtensionAndComputesFvs) {
  TempDir dir;
  write_png(dir / "a.png", ImageRGB::filled(4, 4, 1.0f, 0.0f, 0.0f));
  write_wav(dir / "b.wav", gen_sine_clip(300, 1.0));
  write_file(dir / "c.bmp", "");
  EXPECT_EQ(media_modality(load_media(dir / "a.png")), Modality::kImage);
  EXPECT_EQ(media_modality(load_media(dir / "b.wav")), Modality::kAudio);
  EXPECT_SYNEVAL_ERROR(load_media(dir / "c.bmp"), kInput);

  SampleRecord rec{"a", dir / "a.png", Split::kTrain, {}, {}, {}};
  const Media img = load_media(rec.media_path);
  EXPECT_NEAR(resolve_fv("saturation", rec, img), 1.0, 1e-6);
  rec.fv_values["saturation"] = 0.25;
  EXPECT_EQ(resolve_fv("saturation", rec, img), 0.25);
  EXPECT_SYNEVAL_ERROR_MSG(resolve_fv("speech_rate", rec, img), kConfig, "speech_rate");
  SampleRecord clip_rec{"b", dir / "b.wav", Split::kVal, {}, 2.0, "one two three four"};
  EXPECT_EQ(resolve_fv("speech_rate", clip_rec, load_media(clip_rec.media_path)), 2.0);
  EXPECT_SYNEVAL_ERROR(apply_transform(img, TransformKind::kPitchShift, 1.0, 0), kConfig);
}

TEST(PairsTest, MaterializeWritesConsistentArtifacts) {
  TempDir dir;
  const MediaDataset ds = image_dataset(12, 4);
  const ToyImageExtractor ex({8, 8, Modality::kImage});
  const TransformSpec spec = TransformSpec::defaults(TransformKind::kBrightnessShift, 5);
  MaterializeOptions opts;
  opts.output_dir = dir.path();
  opts.write_media = true;
  const auto result = materialize_pairs(ds, spec, ex, opts);
  EXPECT_TRUE(result.failures.empty());
  const auto& p = result.pairs;
  ASSERT_EQ(p.size(), 12u);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(p.params_raw[i], spec.draw(ds[i].record.id));
    EXPECT_NEAR(p.params_normalized[i], spec.normalize(p.params_raw[i]), 1e-12);
  }
  const auto recs = load_manifest(dir / "transformed.jsonl");
  ASSERT_EQ(recs.size(), 12u);
  EXPECT_TRUE(std::filesystem::exists(recs[0].media_path));

  const PairedEmbeddingSet ext = external_embeddings(
      [&] {
        std::vector<SampleRecord> r;
        for (const auto& s : ds) r.push_back(s.record);
        return r;
      }(),
      dir / "clean.emb", dir / "transformed.emb", dir / "params.json");
  EXPECT_EQ(ext.clean.matrix, p.clean.matrix);
  EXPECT_EQ(ext.transformed.matrix, p.transformed.matrix);
  EXPECT_EQ(ext.params_raw, p.params_raw);
  EXPECT_EQ(ext.transform_name(), "brightness_shift");

  // Rerunning yields the same media and embeddings.
  EXPECT_EQ(materialize_pairs(ds, spec, ex).pairs.transformed.matrix, p.transformed.matrix);
}

TEST(PairsTest, ModalityMismatchAndFailureBudget) {
  const ToyImageExtractor ex({8, 8, Modality::kImage});
  EXPECT_SYNEVAL_ERROR(
      materialize_pairs(image_dataset(2, 1), TransformSpec::defaults(TransformKind::kPitchShift), ex),
      kConfig);
  const ToyAudioExtractor audio({8, 8, Modality::kAudio});
  MediaDataset clips = audio_dataset(4, 3);
  std::get<AudioClip>(clips[1].media).samples.resize(1000);  // shorter than one window
  TransformSpec stretch = TransformSpec::defaults(TransformKind::kTimeStretch, 1);
  EXPECT_SYNEVAL_ERROR_MSG(materialize_pairs(clips, stretch, audio), kTransform, "clip1");
  MaterializeOptions lenient;
  lenient.max_failure_fraction = 0.5;
  const auto result = materialize_pairs(clips, stretch, audio, lenient);
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_EQ(result.failures[0].id, "clip1");
  EXPECT_EQ(result.pairs.size(), 3u);
}

TEST(PairsTest, ParamLogErrors) {
  TempDir dir;
  const ParamLog log{TransformSpec::defaults(TransformKind::kHueShift, 3), {"a", "b"}, {0.1, -0.2},
                     {0.6, 0.3}};
  write_param_log(dir / "p.json", log);
  const ParamLog back = read_param_log(dir / "p.json");
  EXPECT_EQ(back.ids, log.ids);
  EXPECT_EQ(back.raw, log.raw);
  EXPECT_EQ(back.transform.seed, 3u);

  auto doc = nlohmann::json::parse(syneval::testing::read_file(dir / "p.json"));
  doc["schema"] = "syneval.paramlog/99";
  write_file(dir / "v.json", doc.dump());
  EXPECT_SYNEVAL_ERROR(read_param_log(dir / "v.json"), kVersion);
  write_file(dir / "bad.json", "[1,2]");
  EXPECT_SYNEVAL_ERROR(read_param_log(dir / "bad.json"), kParse);
  EXPECT_SYNEVAL_ERROR(read_param_log(dir / "none.json"), kIo);
  ParamLog uneven = log;
  uneven.raw.pop_back();
  EXPECT_SYNEVAL_ERROR(write_param_log(dir / "u.json", uneven), kShape);
}

TEST(PairsTest, ExternalEmbeddingsCheckAlignment) {
  TempDir dir;
  EmbeddingStore clean{{"a", "b"}, Matrix::from_rows({{1, 0}, {0, 1}}), "ext", ""};
  EmbeddingStore wide{{"a", "b"}, Matrix::from_rows({{1, 0, 0}, {0, 1, 0}}), "ext", ""};
  write_embeddings(clean, dir / "c.emb");
  write_embeddings(wide, dir / "w.emb");
  write_param_log(dir / "p.json",
                  {TransformSpec::defaults(TransformKind::kHueShift), {"a"}, {0.1}, {0.6}});
  const std::vector<SampleRecord> recs = {{"a", "a.png", Split::kTrain, {}, {}, {}},
                                          {"b", "b.png", Split::kTest, {}, {}, {}}};
  EXPECT_SYNEVAL_ERROR(external_embeddings(recs, dir / "c.emb", dir / "w.emb", dir / "p.json"),
                       kFormat);
  EXPECT_SYNEVAL_ERROR_MSG(
      external_embeddings(recs, dir / "c.emb", dir / "c.emb", dir / "p.json"), kAlignment, "b");
  std::vector<SampleRecord> extra = recs;
  extra.push_back({"zz", "z.png", Split::kTrain, {}, {}, {}});
  EXPECT_SYNEVAL_ERROR_MSG(
      external_embeddings(extra, dir / "c.emb", dir / "c.emb", dir / "p.json"), kAlignment, "zz");
}

}  // namespace
}  // namespace syneval
