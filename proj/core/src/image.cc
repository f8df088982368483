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

#include "syneval/image.h"

#include <jpeglib.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <string>

#include "syneval/error.h"

namespace syneval {
namespace {

struct Hsv {
  double h, s, v;
};

Hsv pixel_to_hsv(double r, double g, double b) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double c = mx - mn;
  Hsv out{0.0, mx > 0.0 ? c / mx : 0.0, mx};
  if (c > 0.0) {
    double h;
    if (mx == r) {
      h = (g - b) / c;
      if (h < 0.0) h += 6.0;
    } else if (mx == g) {
      h = (b - r) / c + 2.0;
    } else {
      h = (r - g) / c + 4.0;
    }
    h /= 6.0;
    out.h = h >= 1.0 ? h - 1.0 : h;
  }
  return out;
}

void hsv_to_pixel(double h, double s, double v, float* rgb) {
  const double h6 = (h - std::floor(h)) * 6.0;
  const int sector = static_cast<int>(h6) % 6;
  const double f = h6 - std::floor(h6);
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  double r, g, b;
  switch (sector) {
    case 0: r = v, g = t, b = p; break;
    case 1: r = q, g = v, b = p; break;
    case 2: r = p, g = v, b = t; break;
    case 3: r = p, g = q, b = v; break;
    case 4: r = t, g = p, b = v; break;
    default: r = v, g = p, b = q; break;
  }
  rgb[0] = static_cast<float>(std::clamp(r, 0.0, 1.0));
  rgb[1] = static_cast<float>(std::clamp(g, 0.0, 1.0));
  rgb[2] = static_cast<float>(std::clamp(b, 0.0, 1.0));
}

template <class Fn>
ImageRGB map_hsv(const ImageRGB& img, Fn&& fn) {
  img.validate();
  ImageRGB out{img.height, img.width, std::vector<float>(img.pixels.size())};
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const float* px = img.pixels.data() + 3 * i;
    Hsv hsv = pixel_to_hsv(px[0], px[1], px[2]);
    fn(hsv);
    hsv_to_pixel(hsv.h, hsv.s, hsv.v, out.pixels.data() + 3 * i);
  }
  return out;
}

void require_range(double value, double lo, double hi, const char* name) {
  if (!(value >= lo && value <= hi)) {
    fail(ErrorCode::kParameter, std::string(name) + " parameter " + std::to_string(value) +
                                    " outside [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
  }
}

// libjpeg reports fatal errors through error_exit, which must not return.
struct JpegErrorManager {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void jpeg_silent(j_common_ptr) {}

// Codec state lives in the caller's frame so nothing the setjmp frame
// modifies is an automatic local of that frame.
struct JpegSession {
  JpegErrorManager err;
  jpeg_compress_struct cinfo;
  jpeg_decompress_struct dinfo;
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  bool compress_created = false;
  bool decompress_created = false;

  void release() {
    if (compress_created) jpeg_destroy_compress(&cinfo);
    if (decompress_created) jpeg_destroy_decompress(&dinfo);
    compress_created = decompress_created = false;
    std::free(buffer);
    buffer = nullptr;
  }
};

// Plain-C round trip. Returns false and leaves the codec message in
// s->err.message on failure.
bool jpeg_round_trip(JpegSession* s, const unsigned char* rgb, int width, int height,
                     int quality, unsigned char* out_rgb) {
  s->cinfo.err = jpeg_std_error(&s->err.pub);
  s->dinfo.err = s->cinfo.err;
  s->err.pub.error_exit = jpeg_error_exit;
  s->err.pub.output_message = jpeg_silent;
  s->err.message[0] = '\0';

  if (setjmp(s->err.jump)) {
    s->release();
    return false;
  }

  jpeg_create_compress(&s->cinfo);
  s->compress_created = true;
  jpeg_mem_dest(&s->cinfo, &s->buffer, &s->size);
  s->cinfo.image_width = static_cast<JDIMENSION>(width);
  s->cinfo.image_height = static_cast<JDIMENSION>(height);
  s->cinfo.input_components = 3;
  s->cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&s->cinfo);
  jpeg_set_quality(&s->cinfo, quality, TRUE);
  jpeg_start_compress(&s->cinfo, TRUE);
  while (s->cinfo.next_scanline < s->cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(rgb + static_cast<std::size_t>(s->cinfo.next_scanline) *
                                                  static_cast<std::size_t>(width) * 3);
    jpeg_write_scanlines(&s->cinfo, &row, 1);
  }
  jpeg_finish_compress(&s->cinfo);
  jpeg_destroy_compress(&s->cinfo);
  s->compress_created = false;

  jpeg_create_decompress(&s->dinfo);
  s->decompress_created = true;
  jpeg_mem_src(&s->dinfo, s->buffer, s->size);
  jpeg_read_header(&s->dinfo, TRUE);
  s->dinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&s->dinfo);
  if (static_cast<int>(s->dinfo.output_width) != width ||
      static_cast<int>(s->dinfo.output_height) != height || s->dinfo.output_components != 3) {
    std::snprintf(s->err.message, JMSG_LENGTH_MAX, "decoded dimensions differ from input");
    s->release();
    return false;
  }
  while (s->dinfo.output_scanline < s->dinfo.output_height) {
    JSAMPROW row = out_rgb + static_cast<std::size_t>(s->dinfo.output_scanline) *
                                 static_cast<std::size_t>(width) * 3;
    jpeg_read_scanlines(&s->dinfo, &row, 1);
  }
  jpeg_finish_decompress(&s->dinfo);
  s->release();
  return true;
}

}  // namespace

ImageRGB ImageRGB::filled(std::size_t height, std::size_t width, float r, float g, float b) {
  ImageRGB img{height, width, std::vector<float>(height * width * 3)};
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    img.pixels[3 * i] = r;
    img.pixels[3 * i + 1] = g;
    img.pixels[3 * i + 2] = b;
  }
  img.validate();
  return img;
}

void ImageRGB::validate() const {
  if (height == 0 || width == 0) fail(ErrorCode::kValidation, "image has an empty dimension");
  if (pixels.size() != height * width * 3) {
    fail(ErrorCode::kValidation, "image pixel buffer has the wrong length");
  }
  for (float v : pixels) {
    if (!(v >= 0.0f && v <= 1.0f)) {
      fail(ErrorCode::kValidation, "image channel value " + std::to_string(v) +
                                       " outside [0, 1]");
    }
  }
}

ImageHSV rgb_to_hsv(const ImageRGB& img) {
  img.validate();
  ImageHSV out{img.height, img.width, std::vector<float>(img.pixels.size())};
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const float* px = img.pixels.data() + 3 * i;
    const Hsv hsv = pixel_to_hsv(px[0], px[1], px[2]);
    out.pixels[3 * i] = static_cast<float>(hsv.h);
    out.pixels[3 * i + 1] = static_cast<float>(hsv.s);
    out.pixels[3 * i + 2] = static_cast<float>(hsv.v);
  }
  return out;
}

ImageRGB hsv_to_rgb(const ImageHSV& hsv) {
  if (hsv.height == 0 || hsv.width == 0 || hsv.pixels.size() != hsv.height * hsv.width * 3) {
    fail(ErrorCode::kValidation, "HSV image has invalid dimensions");
  }
  ImageRGB out{hsv.height, hsv.width, std::vector<float>(hsv.pixels.size())};
  for (std::size_t i = 0; i < hsv.height * hsv.width; ++i) {
    const float* px = hsv.pixels.data() + 3 * i;
    for (int c = 0; c < 3; ++c) {
      if (!(px[c] >= 0.0f && px[c] <= 1.0f)) {
        fail(ErrorCode::kValidation, "HSV channel value outside [0, 1]");
      }
    }
    hsv_to_pixel(px[0], px[1], px[2], out.pixels.data() + 3 * i);
  }
  return out;
}

void ImageTransformParam::validate() const {
  switch (kind) {
    case ImageTransformKind::kHueShift: require_range(value, -0.5, 0.5, "hue_shift"); break;
    case ImageTransformKind::kSaturationShift:
      require_range(value, -2.0, 2.0, "saturation_shift");
      break;
    case ImageTransformKind::kBrightnessShift:
      require_range(value, -2.0, 2.0, "brightness_shift");
      break;
    case ImageTransformKind::kJpegCompression:
      require_range(value, 0.0, 100.0, "jpeg_compression");
      break;
  }
}

ImageRGB hue_shift(const ImageRGB& img, double h) {
  require_range(h, -0.5, 0.5, "hue_shift");
  return map_hsv(img, [h](Hsv& p) {
    const double shifted = p.h + h;
    p.h = shifted - std::floor(shifted);
  });
}

ImageRGB saturation_shift(const ImageRGB& img, double s) {
  require_range(s, -2.0, 2.0, "saturation_shift");
  return map_hsv(img, [s](Hsv& p) { p.s = std::clamp(p.s + s, 0.0, 1.0); });
}

ImageRGB brightness_shift(const ImageRGB& img, double b) {
  require_range(b, -2.0, 2.0, "brightness_shift");
  return map_hsv(img, [b](Hsv& p) { p.v = std::clamp(p.v + b, 0.0, 1.0); });
}

ImageRGB jpeg_compress(const ImageRGB& img, double quality, std::string_view sample_id) {
  require_range(quality, 0.0, 100.0, "jpeg_compression");
  img.validate();
  const int q = std::max(1, static_cast<int>(std::lround(quality)));
  std::vector<unsigned char> in(img.pixels.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    in[i] = static_cast<unsigned char>(std::lround(img.pixels[i] * 255.0f));
  }
  std::vector<unsigned char> out(in.size());
  auto session = std::make_unique<JpegSession>();
  if (!jpeg_round_trip(session.get(), in.data(), static_cast<int>(img.width),
                       static_cast<int>(img.height), q, out.data())) {
    fail(ErrorCode::kTransform, "jpeg_compress failed for sample '" + std::string(sample_id) +
                                    "': " + session->err.message);
  }
  ImageRGB result{img.height, img.width, std::vector<float>(out.size())};
  for (std::size_t i = 0; i < out.size(); ++i) result.pixels[i] = out[i] / 255.0f;
  return result;
}

ImageRGB apply_image_transform(const ImageRGB& img, const ImageTransformParam& param,
                               std::string_view sample_id) {
  switch (param.kind) {
    case ImageTransformKind::kHueShift: return hue_shift(img, param.value);
    case ImageTransformKind::kSaturationShift: return saturation_shift(img, param.value);
    case ImageTransformKind::kBrightnessShift: return brightness_shift(img, param.value);
    case ImageTransformKind::kJpegCompression: return jpeg_compress(img, param.value, sample_id);
  }
  fail(ErrorCode::kParameter, "unknown image transform");
}

MeanHsv mean_hsv(const ImageRGB& img) {
  img.validate();
  double sum_cos = 0.0, sum_sin = 0.0, sum_s = 0.0, sum_v = 0.0;
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const float* px = img.pixels.data() + 3 * i;
    const Hsv hsv = pixel_to_hsv(px[0], px[1], px[2]);
    const double angle = 2.0 * std::numbers::pi * hsv.h;
    sum_cos += std::cos(angle);
    sum_sin += std::sin(angle);
    sum_s += hsv.s;
    sum_v += hsv.v;
  }
  const double n = static_cast<double>(img.pixel_count());
  MeanHsv out;
  out.saturation = sum_s / n;
  out.value = sum_v / n;
  const double resultant = std::hypot(sum_cos, sum_sin) / n;
  if (resultant < 1e-6) {
    out.hue_degenerate = true;
    out.hue = 0.0;
  } else {
    double h = std::atan2(sum_sin, sum_cos) / (2.0 * std::numbers::pi);
    if (h < 0.0) h += 1.0;
    out.hue = h >= 1.0 ? 0.0 : h;
  }
  return out;
}

ImageRGB resize_bilinear(const ImageRGB& img, std::size_t height, std::size_t width) {
  img.validate();
  if (height == 0 || width == 0) fail(ErrorCode::kValidation, "resize to an empty image");
  ImageRGB out{height, width, std::vector<float>(height * width * 3)};
  const double sy = static_cast<double>(img.height) / height;
  const double sx = static_cast<double>(img.width) / width;
  for (std::size_t y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(img.height - 1));
    const std::size_t y0 = static_cast<std::size_t>(fy);
    const std::size_t y1 = std::min(y0 + 1, img.height - 1);
    const double wy = fy - y0;
    for (std::size_t x = 0; x < width; ++x) {
      const double fx =
          std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(img.width - 1));
      const std::size_t x0 = static_cast<std::size_t>(fx);
      const std::size_t x1 = std::min(x0 + 1, img.width - 1);
      const double wx = fx - x0;
      for (std::size_t c = 0; c < 3; ++c) {
        const double top = img.at(y0, x0, c) * (1.0 - wx) + img.at(y0, x1, c) * wx;
        const double bottom = img.at(y1, x0, c) * (1.0 - wx) + img.at(y1, x1, c) * wx;
        out.at(y, x, c) = static_cast<float>(top * (1.0 - wy) + bottom * wy);
      }
    }
  }
  return out;
}

}  // namespace syneval
