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

#include "syneval/extractor.h"

#include <cmath>
#include <complex>

#include "syneval/dsp.h"
#include "syneval/error.h"
#include "syneval/rng.h"

namespace syneval {
namespace {

Matrix gaussian_projection(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
  for (float& v : m.values()) v = static_cast<float>(rng.normal() * scale);
  return m;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

void require_modality(const Media& media, Modality expected, const std::string& id) {
  if (media_modality(media) != expected) {
    fail(ErrorCode::kConfig, "extractor " + id + " expects " +
                                 std::string(modality_name(expected)) + " input");
  }
}

}  // namespace

void ToyExtractorConfig::validate() const {
  if (dim < 2) fail(ErrorCode::kConfig, "toy extractor dim must be >= 2");
}

ToyImageExtractor::ToyImageExtractor(const ToyExtractorConfig& config)
    : seed_(config.seed), dim_(config.dim) {
  config.validate();
  projection_ = gaussian_projection(dim_, kInputs, derive_seed(seed_, "toy-image/projection"));
  Rng rng(derive_seed(seed_, "toy-image/bias"));
  bias_.resize(dim_);
  for (float& b : bias_) b = static_cast<float>(0.1 * rng.normal());
}

std::string ToyImageExtractor::id() const {
  return "toy-image/d" + std::to_string(dim_) + "/s" + std::to_string(seed_);
}

std::vector<float> ToyImageExtractor::extract(const Media& media) const {
  require_modality(media, Modality::kImage, id());
  const ImageRGB thumb = resize_bilinear(std::get<ImageRGB>(media), kThumb, kThumb);
  std::vector<double> x(kInputs);
  for (std::size_t i = 0; i < kInputs; ++i) x[i] = thumb.pixels[i] - 0.5;
  std::vector<float> z(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    const auto w = projection_.row(r);
    double acc = bias_[r];
    for (std::size_t i = 0; i < kInputs; ++i) acc += w[i] * x[i];
    z[r] = static_cast<float>(std::max(acc, 0.0));
  }
  return z;
}

ToyAudioExtractor::ToyAudioExtractor(const ToyExtractorConfig& config)
    : seed_(config.seed), dim_(config.dim) {
  config.validate();
  projection_ = gaussian_projection(dim_, 2 * kBands, derive_seed(seed_, "toy-audio/projection"));
}

std::string ToyAudioExtractor::id() const {
  return "toy-audio/d" + std::to_string(dim_) + "/s" + std::to_string(seed_);
}

std::vector<std::vector<double>> mel_filterbank(std::size_t bands, std::size_t n_fft,
                                                double sample_rate) {
  const std::size_t bins = n_fft / 2 + 1;
  const double mel_max = hz_to_mel(sample_rate / 2.0);
  std::vector<double> edges(bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_max * static_cast<double>(i) / static_cast<double>(bands + 1));
  }
  std::vector<std::vector<double>> fb(bands, std::vector<double>(bins, 0.0));
  for (std::size_t b = 0; b < bands; ++b) {
    const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / static_cast<double>(n_fft);
      if (f > lo && f < hi) fb[b][k] = f <= mid ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
    }
  }
  return fb;
}

std::vector<double> ToyAudioExtractor::pooled_features(const AudioClip& clip) const {
  if (clip.duration_s() < kMinDuration) {
    fail(ErrorCode::kInput, "toy audio extractor needs at least 0.5 s of audio, got " +
                                std::to_string(clip.duration_s()) + " s");
  }
  const Stft spec = stft(clip.samples, kWindow, kHop);
  const auto fb = mel_filterbank(kBands, kWindow, clip.sample_rate);
  const std::size_t frames = spec.frames.size();
  std::vector<double> sum(kBands, 0.0), sum_sq(kBands, 0.0);
  std::vector<double> power(kWindow / 2 + 1);
  for (const auto& frame : spec.frames) {
    for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(frame[k]);
    for (std::size_t b = 0; b < kBands; ++b) {
      double e = 0.0;
      for (std::size_t k = 0; k < power.size(); ++k) e += fb[b][k] * power[k];
      const double log_e = std::log(e + 1e-6);
      sum[b] += log_e;
      sum_sq[b] += log_e * log_e;
    }
  }
  std::vector<double> features(2 * kBands);
  for (std::size_t b = 0; b < kBands; ++b) {
    const double mean = sum[b] / static_cast<double>(frames);
    features[b] = mean;
    features[kBands + b] = std::sqrt(std::max(0.0, sum_sq[b] / frames - mean * mean));
  }
  return features;
}

std::vector<float> ToyAudioExtractor::extract(const Media& media) const {
  require_modality(media, Modality::kAudio, id());
  const auto features = pooled_features(std::get<AudioClip>(media));
  std::vector<float> z(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    const auto w = projection_.row(r);
    double acc = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i) acc += w[i] * features[i];
    z[r] = static_cast<float>(acc);
  }
  return z;
}

std::unique_ptr<FeatureExtractor> make_toy_extractor(const ToyExtractorConfig& config) {
  if (config.modality == Modality::kImage) return std::make_unique<ToyImageExtractor>(config);
  return std::make_unique<ToyAudioExtractor>(config);
}

EmbeddingStore embed_dataset(const FeatureExtractor& extractor, const MediaDataset& dataset) {
  EmbeddingStore store;
  store.extractor_id = extractor.id();
  std::vector<float> values;
  values.reserve(dataset.size() * extractor.dim());
  for (const auto& sample : dataset) {
    std::vector<float> z;
    try {
      z = extractor.extract(sample.media);
    } catch (const Error& e) {
      fail(e.code(), "sample '" + sample.record.id + "': " + e.what());
    }
    values.insert(values.end(), z.begin(), z.end());
    store.ids.push_back(sample.record.id);
  }
  store.matrix = Matrix(dataset.size(), extractor.dim(), std::move(values));
  return store;
}

}  // namespace syneval
