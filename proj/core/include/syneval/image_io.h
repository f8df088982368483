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

#ifndef SYNEVAL_IMAGE_IO_H_
#define SYNEVAL_IMAGE_IO_H_

#include <filesystem>

#include "syneval/image.h"

namespace syneval {

// 8-bit PNG carrier: channels are value/255 on read and round(value*255) on
// write. Grayscale and alpha inputs are converted to RGB on read.
ImageRGB read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ImageRGB& img);

}  // namespace syneval

#endif  // SYNEVAL_IMAGE_IO_H_
