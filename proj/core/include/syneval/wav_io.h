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

#ifndef SYNEVAL_WAV_IO_H_
#define SYNEVAL_WAV_IO_H_

#include <filesystem>

#include "syneval/audio.h"

namespace syneval {

// Reads a PCM WAV file (8/16/24/32-bit integer or 32-bit float), averages
// channels to mono and resamples to `target_rate` when the file rate differs.
AudioClip read_wav(const std::filesystem::path& path, double target_rate = kDefaultSampleRate);

// Writes 16-bit PCM mono at the clip's sample rate (rounded to an integer).
void write_wav(const std::filesystem::path& path, const AudioClip& clip);

}  // namespace syneval

#endif  // SYNEVAL_WAV_IO_H_
