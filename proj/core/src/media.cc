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

#include "syneval/media.h"

#include <algorithm>
#include <cctype>
#include <string>

#include "syneval/error.h"
#include "syneval/image_io.h"
#include "syneval/wav_io.h"

namespace syneval {

Modality media_modality(const Media& media) {
  return std::holds_alternative<ImageRGB>(media) ? Modality::kImage : Modality::kAudio;
}

Media load_media(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".png") return read_png(path);
  if (ext == ".wav") return read_wav(path);
  fail(ErrorCode::kInput, "unsupported media type '" + ext + "' for '" + path.string() + "'");
}

Media apply_transform(const Media& media, TransformKind kind, double value, std::uint64_t seed,
                      std::string_view sample_id) {
  const auto& info = transform_info(kind);
  if (info.modality != media_modality(media)) {
    fail(ErrorCode::kConfig, std::string(info.name) + " cannot be applied to " +
                                 std::string(modality_name(media_modality(media))) + " media");
  }
  if (info.has_identity && value == info.neutral) return media;

  switch (kind) {
    case TransformKind::kHueShift:
      return hue_shift(std::get<ImageRGB>(media), value);
    case TransformKind::kSaturationShift:
      return saturation_shift(std::get<ImageRGB>(media), value);
    case TransformKind::kBrightnessShift:
      return brightness_shift(std::get<ImageRGB>(media), value);
    case TransformKind::kJpegCompression:
      return jpeg_compress(std::get<ImageRGB>(media), value, sample_id);
    case TransformKind::kTimeStretch:
      return time_stretch(std::get<AudioClip>(media), value);
    case TransformKind::kPitchShift:
      return pitch_shift(std::get<AudioClip>(media), value);
    case TransformKind::kAdditiveWhiteNoise:
      return add_white_noise(std::get<AudioClip>(media), value, seed);
    case TransformKind::kRoomReverb:
      return room_reverb(std::get<AudioClip>(media), value, seed);
  }
  fail(ErrorCode::kConfig, "unknown transform kind");
}

MediaDataset load_dataset(const std::vector<SampleRecord>& records) {
  MediaDataset out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    try {
      out.push_back({rec, load_media(rec.media_path)});
    } catch (const Error& e) {
      fail(e.code(), "sample '" + rec.id + "': " + e.what());
    }
    if (media_modality(out.back().media) != media_modality(out.front().media)) {
      fail(ErrorCode::kInput, "sample '" + rec.id + "' has a different modality from '" +
                                  out.front().record.id + "'");
    }
  }
  return out;
}

Modality dataset_modality(const MediaDataset& dataset) {
  if (dataset.empty()) fail(ErrorCode::kInput, "dataset is empty");
  return media_modality(dataset.front().media);
}

std::optional<double> compute_fv(std::string_view fv, const SampleRecord& record,
                                 const Media& media) {
  if (const auto* img = std::get_if<ImageRGB>(&media)) {
    if (fv == "hue" || fv == "saturation" || fv == "brightness") {
      const MeanHsv m = mean_hsv(*img);
      if (fv == "hue") return m.hue;
      if (fv == "saturation") return m.saturation;
      return m.value;
    }
    return std::nullopt;
  }
  const auto& clip = std::get<AudioClip>(media);
  if (fv == "speech_rate" && record.transcript) {
    return speech_rate(*record.transcript, record.duration_s.value_or(clip.duration_s()));
  }
  return std::nullopt;
}

double resolve_fv(std::string_view fv, const SampleRecord& record, const Media& media) {
  if (auto it = record.fv_values.find(std::string(fv)); it != record.fv_values.end()) {
    return it->second;
  }
  if (auto v = compute_fv(fv, record, media)) return *v;
  fail(ErrorCode::kConfig, "sample '" + record.id + "' has no value for FV '" + std::string(fv) +
                               "' and it cannot be computed from the media");
}

}  // namespace syneval
