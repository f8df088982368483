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

#include "syneval/image_io.h"

#include <png.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "syneval/error.h"

namespace syneval {

ImageRGB read_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    fail(ErrorCode::kIo, "cannot read PNG '" + path.string() + "': " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    png_image_free(&image);
    fail(ErrorCode::kIo, "cannot decode PNG '" + path.string() + "': " + image.message);
  }
  ImageRGB img{image.height, image.width, std::vector<float>(buffer.size())};
  for (std::size_t i = 0; i < buffer.size(); ++i) img.pixels[i] = buffer[i] / 255.0f;
  return img;
}

void write_png(const std::filesystem::path& path, const ImageRGB& img) {
  img.validate();
  std::vector<png_byte> buffer(img.pixels.size());
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    buffer[i] = static_cast<png_byte>(std::lround(img.pixels[i] * 255.0f));
  }
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, buffer.data(), 0, nullptr)) {
    fail(ErrorCode::kIo, "cannot write PNG '" + path.string() + "': " + image.message);
  }
}

}  // namespace syneval
