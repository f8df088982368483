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

#ifndef SYNEVAL_IMAGE_H_
#define SYNEVAL_IMAGE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace syneval {

// Interleaved H x W x 3 image with channel values in [0, 1].
struct ImageRGB {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<float> pixels;

  static ImageRGB filled(std::size_t height, std::size_t width, float r, float g, float b);

  std::size_t pixel_count() const { return height * width; }
  float at(std::size_t y, std::size_t x, std::size_t c) const {
    return pixels[(y * width + x) * 3 + c];
  }
  float& at(std::size_t y, std::size_t x, std::size_t c) {
    return pixels[(y * width + x) * 3 + c];
  }

  // Throws kValidation on empty dimensions, wrong pixel count, or values
  // outside [0, 1].
  void validate() const;

  friend bool operator==(const ImageRGB&, const ImageRGB&) = default;
};

// Hexcone HSV with every channel in [0, 1]. Hue of achromatic pixels is 0.
struct ImageHSV {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<float> pixels;  // interleaved (h, s, v)
};

ImageHSV rgb_to_hsv(const ImageRGB& img);
ImageRGB hsv_to_rgb(const ImageHSV& hsv);

enum class ImageTransformKind { kHueShift, kSaturationShift, kBrightnessShift, kJpegCompression };

struct ImageTransformParam {
  ImageTransformKind kind;
  double value = 0.0;

  // Throws kParameter when value is outside the kind's range.
  void validate() const;
};

// H' = (H + h) mod 1; h in [-0.5, 0.5].
ImageRGB hue_shift(const ImageRGB& img, double h);
// Additive shifts on S (resp. V), clamped to [0, 1]; parameter in [-2, 2].
ImageRGB saturation_shift(const ImageRGB& img, double s);
ImageRGB brightness_shift(const ImageRGB& img, double b);
// Baseline JPEG encode/decode round trip at quality round(q) (0 maps to 1).
// Codec failures raise kTransform naming sample_id.
ImageRGB jpeg_compress(const ImageRGB& img, double quality, std::string_view sample_id = {});

ImageRGB apply_image_transform(const ImageRGB& img, const ImageTransformParam& param,
                               std::string_view sample_id = {});

struct MeanHsv {
  double hue = 0.0;  // circular mean in [0, 1)
  double saturation = 0.0;
  double value = 0.0;
  // Set when the hue angles cancel (resultant length ~ 0); hue is then 0.
  bool hue_degenerate = false;
};

MeanHsv mean_hsv(const ImageRGB& img);

// Bilinear resize using pixel-center alignment.
ImageRGB resize_bilinear(const ImageRGB& img, std::size_t height, std::size_t width);

}  // namespace syneval

#endif  // SYNEVAL_IMAGE_H_
