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

#ifndef SYNEVAL_MEDIA_H_
#define SYNEVAL_MEDIA_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "syneval/audio.h"
#include "syneval/image.h"
#include "syneval/manifest.h"
#include "syneval/transform_spec.h"

namespace syneval {

using Media = std::variant<ImageRGB, AudioClip>;

Modality media_modality(const Media& media);

// Decodes by extension: .png images, .wav audio (mono, 16 kHz).
Media load_media(const std::filesystem::path& path);

// Applies `kind` at `value`. Kinds with an identity parameter return the
// input unchanged at that parameter. `seed` feeds the stochastic audio
// transforms. Modality mismatches raise kConfig.
Media apply_transform(const Media& media, TransformKind kind, double value, std::uint64_t seed,
                      std::string_view sample_id = {});

struct MediaSample {
  SampleRecord record;
  Media media;
};

using MediaDataset = std::vector<MediaSample>;

// Loads every record's media. All samples must share one modality.
MediaDataset load_dataset(const std::vector<SampleRecord>& records);
Modality dataset_modality(const MediaDataset& dataset);

// Ground-truth FVs computable from media alone: hue, saturation and
// brightness for images; speech_rate for audio with a transcript (using the
// manifest duration when given, else the clip length).
std::optional<double> compute_fv(std::string_view fv, const SampleRecord& record,
                                 const Media& media);

// Manifest value when present, else compute_fv; throws kConfig when
// neither is available.
double resolve_fv(std::string_view fv, const SampleRecord& record, const Media& media);

}  // namespace syneval

#endif  // SYNEVAL_MEDIA_H_
