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

#ifndef SYNEVAL_FIXTURES_H_
#define SYNEVAL_FIXTURES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "syneval/audio.h"
#include "syneval/axes.h"
#include "syneval/embedding_store.h"
#include "syneval/image.h"
#include "syneval/manifest.h"
#include "syneval/pairs.h"

namespace syneval {

// 70/15/15 train/val/test by index.
std::vector<Split> synthetic_splits(std::size_t n);

// A store whose rows are rendered from known FVs, so any FV can be moved in
// latent space and the row re-rendered with the same noise.
struct SyntheticStore {
  EmbeddingStore store;
  std::vector<std::string> fv_names;      // "fv0", "fv1", ...
  std::vector<std::vector<double>> fv;    // fv[k][row], uniform in [0, 1]
  std::vector<Split> splits;
  // Row `row` re-rendered with FV `k` shifted by `delta`.
  std::function<std::vector<float>(std::size_t row, std::size_t k, double delta)> shifted;

  LabeledEmbeddings labeled(std::size_t k) const;
};

// Each FV fills its own block of fv_dims[k] dimensions with FV + N(0, 0.01^2);
// the remaining dimensions hold N(0, 1) noise.
SyntheticStore gen_disentangled_store(std::size_t n, std::size_t d,
                                      const std::vector<std::size_t>& fv_dims, std::uint64_t seed);

// All FVs are summed into one shared block of max(fv_dims) dimensions (plus
// N(0, 0.01^2) noise), the rest is N(0, 1) noise, and the whole vector is
// rotated by a seeded random orthogonal matrix. The sum cannot be unmixed,
// so moving one FV shifts predictions of the others.
SyntheticStore gen_entangled_store(std::size_t n, std::size_t d,
                                   const std::vector<std::size_t>& fv_dims, std::uint64_t seed);

// z uniform on the unit sphere, z' = normalize(z + p u) for a fixed seeded
// unit direction u and p ~ U[0, 1] (z' = z exactly when p = 0). Raw and
// normalized parameters are both p.
PairedEmbeddingSet gen_linear_action_pairs(std::size_t n, std::size_t d, std::uint64_t seed);

// The direction u used by gen_linear_action_pairs for this (d, seed).
std::vector<float> linear_action_direction(std::size_t d, std::uint64_t seed);

// Random orthogonal d x d matrix (Gram-Schmidt on Gaussian columns).
Matrix random_rotation(std::size_t d, std::uint64_t seed);

AudioClip gen_sine_clip(double freq_hz, double duration_s, double sample_rate = kDefaultSampleRate,
                        double amplitude = 0.5);

// Voiced syllable bursts (harmonic stacks under Hann envelopes) separated by
// short pauses, one per word. The matching transcript is "w1 w2 ...".
struct SpeechLikeClip {
  AudioClip clip;
  std::string transcript;
};
SpeechLikeClip gen_speech_like_clip(std::size_t words, double duration_s, std::uint64_t seed,
                                    double sample_rate = kDefaultSampleRate);

// Horizontal value ramp at fixed hue and saturation: H = 0, S = 0.5,
// V = x / (w - 1). Mean V is exactly 0.5.
ImageRGB gen_gradient_image(std::size_t height, std::size_t width);

// Uniform random RGB noise smoothed with a 3x3 box filter.
ImageRGB gen_speckle_image(std::size_t height, std::size_t width, std::uint64_t seed);

// Solid HSV colour with mild seeded texture on V.
ImageRGB gen_textured_image(std::size_t height, std::size_t width, double hue, double saturation,
                            double value, std::uint64_t seed);

// Writes the bundled smoke dataset (images, audio, manifests) and its run
// config (one job per axis) to dir; returns the config path.
std::filesystem::path write_smoke_fixture(const std::filesystem::path& dir,
                                          std::size_t images = 32, std::size_t clips = 16);

}  // namespace syneval

#endif  // SYNEVAL_FIXTURES_H_
