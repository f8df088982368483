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

#include "syneval/audio.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "syneval/dsp.h"
#include "syneval/error.h"
#include "syneval/rng.h"

namespace syneval {
namespace {

void clip_in_place(std::vector<float>& samples) {
  for (float& s : samples) s = std::clamp(s, -1.0f, 1.0f);
}

void check_range(double value, double lo, double hi, const char* what) {
  if (!std::isfinite(value) || value < lo || value > hi) {
    std::ostringstream msg;
    msg << what << " " << value << " outside [" << lo << ", " << hi << "]";
    fail(ErrorCode::kParameter, msg.str());
  }
}

std::vector<float> stretch_samples(std::span<const float> samples, double rate) {
  const Stft spec = stft(samples, kStretchWindow, kStretchHop);
  const auto out_len =
      static_cast<std::size_t>(std::llround(static_cast<double>(samples.size()) / rate));
  return istft(phase_vocoder(spec, rate), out_len);
}

void require_window(const AudioClip& clip, const char* op) {
  clip.validate();
  if (clip.samples.size() < kStretchWindow) {
    fail(ErrorCode::kTransform, std::string(op) + ": clip of " +
                                    std::to_string(clip.samples.size()) +
                                    " samples is shorter than one analysis window");
  }
}

}  // namespace

void AudioClip::validate() const {
  if (samples.empty()) fail(ErrorCode::kValidation, "audio clip is empty");
  if (!(sample_rate > 0.0)) fail(ErrorCode::kValidation, "sample rate must be positive");
  for (float s : samples) {
    if (!std::isfinite(s) || s < -1.0f || s > 1.0f) {
      fail(ErrorCode::kValidation, "audio sample outside [-1, 1]");
    }
  }
}

void AudioTransformParam::validate() const {
  switch (kind) {
    case AudioTransformKind::kTimeStretch:
      check_range(value, 0.5, 2.0, "time stretch rate");
      break;
    case AudioTransformKind::kPitchShift:
      check_range(value, -12.0, 12.0, "pitch shift semitones");
      break;
    case AudioTransformKind::kAdditiveWhiteNoise:
      check_range(value, -30.0, 50.0, "noise SNR dB");
      break;
    case AudioTransformKind::kRoomReverb:
      check_range(value, 0.0, 3.0, "reverb RT60");
      break;
  }
}

double rms(std::span<const float> samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (float s : samples) acc += static_cast<double>(s) * s;
  return std::sqrt(acc / static_cast<double>(samples.size()));
}

AudioClip time_stretch(const AudioClip& clip, double rate) {
  check_range(rate, 0.5, 2.0, "time stretch rate");
  require_window(clip, "time_stretch");
  AudioClip out{stretch_samples(clip.samples, rate), clip.sample_rate};
  clip_in_place(out.samples);
  return out;
}

AudioClip pitch_shift(const AudioClip& clip, double semitones) {
  check_range(semitones, -12.0, 12.0, "pitch shift semitones");
  require_window(clip, "pitch_shift");
  const double factor = std::exp2(semitones / 12.0);
  // Playing the clip back `factor` times faster raises every frequency by
  // `factor`; the stretch then restores the duration.
  const auto squeezed = resample(clip.samples, 1.0 / factor);
  auto restored = stretch_samples(squeezed, 1.0 / factor);
  restored.resize(clip.samples.size(), 0.0f);
  AudioClip out{std::move(restored), clip.sample_rate};
  clip_in_place(out.samples);
  return out;
}

std::vector<float> white_noise_for(const AudioClip& clip, double snr_db, std::uint64_t seed) {
  check_range(snr_db, -30.0, 50.0, "noise SNR dB");
  clip.validate();
  const double signal_rms = rms(clip.samples);
  if (signal_rms <= 0.0) fail(ErrorCode::kDegenerateInput, "cannot set an SNR on a silent clip");

  Rng rng(seed);
  std::vector<double> raw(clip.samples.size());
  double energy = 0.0;
  for (double& v : raw) {
    v = rng.normal();
    energy += v * v;
  }
  const double raw_rms = std::sqrt(energy / static_cast<double>(raw.size()));
  const double target_rms = signal_rms / std::pow(10.0, snr_db / 20.0);
  const double scale = raw_rms > 0.0 ? target_rms / raw_rms : 0.0;
  std::vector<float> noise(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) noise[i] = static_cast<float>(raw[i] * scale);
  return noise;
}

AudioClip add_white_noise(const AudioClip& clip, double snr_db, std::uint64_t seed) {
  const auto noise = white_noise_for(clip, snr_db, seed);
  AudioClip out = clip;
  for (std::size_t i = 0; i < noise.size(); ++i) out.samples[i] += noise[i];
  clip_in_place(out.samples);
  return out;
}

std::vector<double> reverb_impulse_response(double rt60_s, double sample_rate,
                                            std::uint64_t seed) {
  check_range(rt60_s, 0.0, 3.0, "reverb RT60");
  if (!(sample_rate > 0.0)) fail(ErrorCode::kValidation, "sample rate must be positive");
  if (rt60_s == 0.0) return {1.0};

  const auto length =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.5 * rt60_s * sample_rate)));
  // ln(1000): amplitude falls by 60 dB at t = rt60.
  constexpr double kDecay = 6.9078;
  Rng rng(seed);
  std::vector<double> ir(length);
  double energy = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    ir[i] = rng.normal() * std::exp(-kDecay * t / rt60_s);
    energy += ir[i] * ir[i];
  }
  const double norm = 1.0 / std::sqrt(energy);
  for (double& v : ir) v *= norm;
  return ir;
}

AudioClip room_reverb(const AudioClip& clip, double rt60_s, std::uint64_t seed) {
  check_range(rt60_s, 0.0, 3.0, "reverb RT60");
  clip.validate();
  if (rt60_s == 0.0) return clip;
  const auto ir = reverb_impulse_response(rt60_s, clip.sample_rate, seed);
  const std::vector<double> x(clip.samples.begin(), clip.samples.end());
  const auto y = fft_convolve(x, ir, x.size());
  AudioClip out{std::vector<float>(y.size()), clip.sample_rate};
  for (std::size_t i = 0; i < y.size(); ++i) out.samples[i] = static_cast<float>(y[i]);
  clip_in_place(out.samples);
  return out;
}

AudioClip apply_audio_transform(const AudioClip& clip, const AudioTransformParam& param,
                                std::uint64_t seed) {
  switch (param.kind) {
    case AudioTransformKind::kTimeStretch:
      return time_stretch(clip, param.value);
    case AudioTransformKind::kPitchShift:
      return pitch_shift(clip, param.value);
    case AudioTransformKind::kAdditiveWhiteNoise:
      return add_white_noise(clip, param.value, seed);
    case AudioTransformKind::kRoomReverb:
      return room_reverb(clip, param.value, seed);
  }
  fail(ErrorCode::kParameter, "unknown audio transform kind");
}

double speech_rate(std::string_view transcript, double duration_s) {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    fail(ErrorCode::kValidation, "speech rate needs a positive duration");
  }
  std::istringstream words{std::string(transcript)};
  std::size_t count = 0;
  for (std::string w; words >> w;) ++count;
  return static_cast<double>(count) / duration_s;
}

}  // namespace syneval
