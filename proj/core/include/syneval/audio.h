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

#ifndef SYNEVAL_AUDIO_H_
#define SYNEVAL_AUDIO_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace syneval {

inline constexpr double kDefaultSampleRate = 16000.0;

// Phase-vocoder frame geometry shared by time_stretch and pitch_shift.
inline constexpr std::size_t kStretchWindow = 2048;
inline constexpr std::size_t kStretchHop = 512;

// Mono clip with samples in [-1, 1].
struct AudioClip {
  std::vector<float> samples;
  double sample_rate = kDefaultSampleRate;

  double duration_s() const { return static_cast<double>(samples.size()) / sample_rate; }

  // Throws kValidation when empty, sample_rate <= 0, or a sample is outside
  // [-1, 1] or non-finite.
  void validate() const;

  friend bool operator==(const AudioClip&, const AudioClip&) = default;
};

enum class AudioTransformKind { kTimeStretch, kPitchShift, kAdditiveWhiteNoise, kRoomReverb };

struct AudioTransformParam {
  AudioTransformKind kind;
  double value = 0.0;

  // Throws kParameter when value is outside the kind's range.
  void validate() const;
};

double rms(std::span<const float> samples);

// Output length is round(len / rate). Clips shorter than one analysis window
// raise kTransform.
AudioClip time_stretch(const AudioClip& clip, double rate);

// Resamples by 2^(semitones/12) and stretches back to the input length.
AudioClip pitch_shift(const AudioClip& clip, double semitones);

// The noise that add_white_noise would add before clipping: seeded Gaussian
// samples rescaled so that rms(clip) / rms(noise) = 10^(snr_db/20) exactly.
std::vector<float> white_noise_for(const AudioClip& clip, double snr_db, std::uint64_t seed);
AudioClip add_white_noise(const AudioClip& clip, double snr_db, std::uint64_t seed);

// Synthetic exponentially decaying impulse response: Gaussian noise times
// exp(-6.9078 t / rt60), truncated at 1.5 * rt60 and scaled to unit energy.
std::vector<double> reverb_impulse_response(double rt60_s, double sample_rate,
                                            std::uint64_t seed);

inline constexpr std::uint64_t kDefaultReverbSeed = 0x5eedULL;

// Convolves with reverb_impulse_response(); rt60 = 0 returns the input.
AudioClip room_reverb(const AudioClip& clip, double rt60_s,
                      std::uint64_t seed = kDefaultReverbSeed);

// `seed` drives the stochastic transforms (noise, reverb IR) and is ignored by
// the deterministic ones.
AudioClip apply_audio_transform(const AudioClip& clip, const AudioTransformParam& param,
                                std::uint64_t seed);

// Words per second: whitespace-separated tokens divided by duration.
double speech_rate(std::string_view transcript, double duration_s);

}  // namespace syneval

#endif  // SYNEVAL_AUDIO_H_
