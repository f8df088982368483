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

#ifndef SYNEVAL_EXTRACTOR_H_
#define SYNEVAL_EXTRACTOR_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "syneval/embedding_store.h"
#include "syneval/matrix.h"
#include "syneval/media.h"
#include "syneval/transform_spec.h"

namespace syneval {

// x -> z. Implementations are immutable after construction, so one instance
// may be shared across threads.
class FeatureExtractor {
 public:
  virtual ~FeatureExtractor() = default;

  virtual std::string id() const = 0;
  virtual std::size_t dim() const = 0;
  virtual Modality modality() const = 0;

  // Throws kConfig on a modality mismatch.
  virtual std::vector<float> extract(const Media& media) const = 0;
};

struct ToyExtractorConfig {
  std::uint64_t seed = 0;
  std::size_t dim = 64;
  Modality modality = Modality::kImage;

  void validate() const;  // dim >= 2
};

// Image: bilinear 16x16 thumbnail, 768 centered RGB values, seeded Gaussian
// projection plus a small seeded bias, then ReLU.
class ToyImageExtractor final : public FeatureExtractor {
 public:
  static constexpr std::size_t kThumb = 16;
  static constexpr std::size_t kInputs = kThumb * kThumb * 3;

  explicit ToyImageExtractor(const ToyExtractorConfig& config);

  std::string id() const override;
  std::size_t dim() const override { return dim_; }
  Modality modality() const override { return Modality::kImage; }
  std::vector<float> extract(const Media& media) const override;

 private:
  std::uint64_t seed_;
  std::size_t dim_;
  Matrix projection_;  // dim x 768
  std::vector<float> bias_;
};

// Audio: 64-band log-mel power spectrogram (Hann 1024, hop 256), per-band
// mean and standard deviation over frames, seeded Gaussian projection.
// Clips shorter than 0.5 s raise kInput.
class ToyAudioExtractor final : public FeatureExtractor {
 public:
  static constexpr std::size_t kBands = 64;
  static constexpr std::size_t kWindow = 1024;
  static constexpr std::size_t kHop = 256;
  static constexpr double kMinDuration = 0.5;

  explicit ToyAudioExtractor(const ToyExtractorConfig& config);

  std::string id() const override;
  std::size_t dim() const override { return dim_; }
  Modality modality() const override { return Modality::kAudio; }
  std::vector<float> extract(const Media& media) const override;

  // The 128 pooled statistics before projection.
  std::vector<double> pooled_features(const AudioClip& clip) const;

 private:
  std::uint64_t seed_;
  std::size_t dim_;
  Matrix projection_;  // dim x 128
};

std::unique_ptr<FeatureExtractor> make_toy_extractor(const ToyExtractorConfig& config);

// Triangular mel filterbank (HTK mel scale) over rfft bins of an n_fft frame.
// Row b holds the weights of band b.
std::vector<std::vector<double>> mel_filterbank(std::size_t bands, std::size_t n_fft,
                                                double sample_rate);

// Embeds every sample, in dataset order.
EmbeddingStore embed_dataset(const FeatureExtractor& extractor, const MediaDataset& dataset);

}  // namespace syneval

#endif  // SYNEVAL_EXTRACTOR_H_
