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

#include "syneval/fixtures.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <numbers>

#include "syneval/error.h"
#include "syneval/image_io.h"
#include "syneval/metrics.h"
#include "syneval/rng.h"
#include "syneval/wav_io.h"

namespace syneval {
namespace {

constexpr double kBlockNoise = 0.01;

std::string row_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "s%05zu", i);
  return buf;
}

// Everything needed to re-render a row deterministically.
struct StoreState {
  std::size_t d = 0;
  std::vector<std::size_t> fv_dims;
  std::vector<std::vector<double>> fv;
  Matrix noise;        // n x d
  Matrix rotation;     // empty when not rotated
  bool shared_block = false;
};

std::vector<float> render(const StoreState& s, std::size_t row, std::size_t shifted_k, double delta) {
  std::vector<double> z(s.d);
  for (std::size_t j = 0; j < s.d; ++j) z[j] = s.noise(row, j);
  auto fv_at = [&](std::size_t k) { return s.fv[k][row] + (k == shifted_k ? delta : 0.0); };
  if (s.shared_block) {
    const std::size_t width = *std::max_element(s.fv_dims.begin(), s.fv_dims.end());
    double sum = 0.0;
    for (std::size_t k = 0; k < s.fv.size(); ++k) sum += fv_at(k);
    for (std::size_t j = 0; j < width; ++j) z[j] += sum;
  } else {
    std::size_t offset = 0;
    for (std::size_t k = 0; k < s.fv.size(); ++k) {
      for (std::size_t j = 0; j < s.fv_dims[k]; ++j) z[offset + j] += fv_at(k);
      offset += s.fv_dims[k];
    }
  }
  std::vector<float> out(s.d);
  if (s.rotation.empty()) {
    for (std::size_t j = 0; j < s.d; ++j) out[j] = static_cast<float>(z[j]);
  } else {
    for (std::size_t r = 0; r < s.d; ++r) {
      double acc = 0.0;
      for (std::size_t j = 0; j < s.d; ++j) acc += s.rotation(r, j) * z[j];
      out[r] = static_cast<float>(acc);
    }
  }
  return out;
}

SyntheticStore build_store(std::size_t n, std::size_t d, const std::vector<std::size_t>& fv_dims,
                           std::uint64_t seed, bool entangled) {
  if (n == 0 || fv_dims.empty()) fail(ErrorCode::kConfig, "synthetic store needs samples and FVs");
  std::size_t used = 0;
  for (std::size_t w : fv_dims) {
    if (w == 0) fail(ErrorCode::kConfig, "FV block width must be positive");
    used = entangled ? std::max(used, w) : used + w;
  }
  if (used > d) fail(ErrorCode::kConfig, "FV blocks exceed the store dimension");

  auto state = std::make_shared<StoreState>();
  state->d = d;
  state->fv_dims = fv_dims;
  state->shared_block = entangled;
  Rng fv_rng(derive_seed(seed, "fv"));
  state->fv.assign(fv_dims.size(), std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& column : state->fv) column[i] = fv_rng.uniform();
  }
  Rng noise_rng(derive_seed(seed, "noise"));
  state->noise = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      state->noise(i, j) = static_cast<float>(noise_rng.normal() * (j < used ? kBlockNoise : 1.0));
    }
  }
  if (entangled) state->rotation = random_rotation(d, derive_seed(seed, "rotation"));

  SyntheticStore out;
  out.store.extractor_id = entangled ? "fixture/entangled" : "fixture/disentangled";
  out.store.created_by = "syneval fixtures";
  std::vector<float> values;
  values.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    out.store.ids.push_back(row_id(i));
    const auto z = render(*state, i, fv_dims.size(), 0.0);
    values.insert(values.end(), z.begin(), z.end());
  }
  out.store.matrix = Matrix(n, d, std::move(values));
  for (std::size_t k = 0; k < fv_dims.size(); ++k) out.fv_names.push_back("fv" + std::to_string(k));
  out.fv = state->fv;
  out.splits = synthetic_splits(n);
  out.shifted = [state](std::size_t row, std::size_t k, double delta) {
    return render(*state, row, k, delta);
  };
  return out;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << j.dump(2) << "\n";
}

}  // namespace

std::vector<Split> synthetic_splits(std::size_t n) {
  std::vector<Split> out(n);
  const std::size_t train = n * 70 / 100;
  const std::size_t val = n * 15 / 100;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = i < train ? Split::kTrain : i < train + val ? Split::kVal : Split::kTest;
  }
  return out;
}

LabeledEmbeddings SyntheticStore::labeled(std::size_t k) const {
  return {store, splits, fv.at(k), fv_names.at(k)};
}

SyntheticStore gen_disentangled_store(std::size_t n, std::size_t d,
                                      const std::vector<std::size_t>& fv_dims, std::uint64_t seed) {
  return build_store(n, d, fv_dims, seed, false);
}

SyntheticStore gen_entangled_store(std::size_t n, std::size_t d,
                                   const std::vector<std::size_t>& fv_dims, std::uint64_t seed) {
  return build_store(n, d, fv_dims, seed, true);
}

Matrix random_rotation(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> q;
  while (q.size() < d) {
    std::vector<double> v(d);
    for (double& x : v) x = rng.normal();
    for (const auto& u : q) {
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) dot += u[j] * v[j];
      for (std::size_t j = 0; j < d; ++j) v[j] -= dot * u[j];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (double& x : v) x /= norm;
    q.push_back(std::move(v));
  }
  Matrix m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m(r, c) = static_cast<float>(q[c][r]);
  }
  return m;
}

std::vector<float> linear_action_direction(std::size_t d, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "direction"));
  std::vector<float> u(d);
  for (float& x : u) x = static_cast<float>(rng.normal());
  return l2_normalize(u);
}

PairedEmbeddingSet gen_linear_action_pairs(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 2 || d < 2) fail(ErrorCode::kConfig, "linear action pairs need n, d >= 2");
  const auto u = linear_action_direction(d, seed);
  Rng rng(derive_seed(seed, "samples"));
  PairedEmbeddingSet pairs;
  std::vector<float> clean, moved;
  std::vector<float> z(d), zp(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (float& x : z) x = static_cast<float>(rng.normal());
    z = l2_normalize(z);
    const double p = rng.uniform();
    if (p == 0.0) {
      zp = z;
    } else {
      for (std::size_t j = 0; j < d; ++j) zp[j] = static_cast<float>(z[j] + p * u[j]);
      zp = l2_normalize(zp);
    }
    clean.insert(clean.end(), z.begin(), z.end());
    moved.insert(moved.end(), zp.begin(), zp.end());
    pairs.clean.ids.push_back(row_id(i));
    pairs.params_raw.push_back(p);
    pairs.params_normalized.push_back(p);
  }
  pairs.clean.matrix = Matrix(n, d, std::move(clean));
  pairs.clean.extractor_id = "fixture/linear-action";
  pairs.transformed.ids = pairs.clean.ids;
  pairs.transformed.matrix = Matrix(n, d, std::move(moved));
  pairs.transformed.extractor_id = pairs.clean.extractor_id;
  pairs.splits = synthetic_splits(n);
  return pairs;
}

AudioClip gen_sine_clip(double freq_hz, double duration_s, double sample_rate, double amplitude) {
  if (!(freq_hz > 0.0 && duration_s > 0.0 && sample_rate > 0.0 && amplitude > 0.0 && amplitude <= 1.0)) {
    fail(ErrorCode::kConfig, "sine clip parameters must be positive (amplitude <= 1)");
  }
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  AudioClip clip{std::vector<float>(n), sample_rate};
  for (std::size_t i = 0; i < n; ++i) {
    clip.samples[i] = static_cast<float>(
        amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / sample_rate));
  }
  return clip;
}

SpeechLikeClip gen_speech_like_clip(std::size_t words, double duration_s, std::uint64_t seed,
                                    double sample_rate) {
  if (!(duration_s > 0.0)) fail(ErrorCode::kConfig, "speech-like clip needs a positive duration");
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  SpeechLikeClip out{{std::vector<float>(n, 0.0f), sample_rate}, {}};
  Rng rng(seed);
  // A quiet noise floor keeps the clip non-silent between words.
  for (float& s : out.clip.samples) s = static_cast<float>(0.002 * rng.normal());
  if (words > 0) {
    const double slot = static_cast<double>(n) / static_cast<double>(words);
    for (std::size_t w = 0; w < words; ++w) {
      const double f0 = rng.uniform(100.0, 220.0);
      const auto start = static_cast<std::size_t>(slot * w + 0.1 * slot);
      const auto len = static_cast<std::size_t>(0.7 * slot);
      for (std::size_t t = 0; t < len && start + t < n; ++t) {
        const double env = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * t / std::max<std::size_t>(len - 1, 1));
        const double time = static_cast<double>(t) / sample_rate;
        double v = 0.0;
        for (int h = 1; h <= 4; ++h) v += std::sin(2.0 * std::numbers::pi * f0 * h * time) / h;
        out.clip.samples[start + t] += static_cast<float>(0.25 * env * v);
      }
      out.transcript += (w ? " w" : "w") + std::to_string(w + 1);
    }
  }
  for (float& s : out.clip.samples) s = std::clamp(s, -1.0f, 1.0f);
  return out;
}

ImageRGB gen_gradient_image(std::size_t height, std::size_t width) {
  if (height == 0 || width < 2) fail(ErrorCode::kConfig, "gradient image needs width >= 2");
  ImageHSV hsv{height, width, std::vector<float>(height * width * 3)};
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      float* px = hsv.pixels.data() + 3 * (y * width + x);
      px[0] = 0.0f;
      px[1] = 0.5f;
      px[2] = static_cast<float>(static_cast<double>(x) / static_cast<double>(width - 1));
    }
  }
  return hsv_to_rgb(hsv);
}

ImageRGB gen_speckle_image(std::size_t height, std::size_t width, std::uint64_t seed) {
  Rng rng(seed);
  ImageRGB raw{height, width, std::vector<float>(height * width * 3)};
  for (float& v : raw.pixels) v = static_cast<float>(rng.uniform());
  ImageRGB out = raw;
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      for (std::size_t c = 0; c < 3; ++c) {
        double acc = 0.0;
        int count = 0;
        for (std::size_t yy = y ? y - 1 : 0; yy <= std::min(y + 1, height - 1); ++yy) {
          for (std::size_t xx = x ? x - 1 : 0; xx <= std::min(x + 1, width - 1); ++xx) {
            acc += raw.at(yy, xx, c);
            ++count;
          }
        }
        out.at(y, x, c) = static_cast<float>(acc / count);
      }
    }
  }
  return out;
}

ImageRGB gen_textured_image(std::size_t height, std::size_t width, double hue, double saturation,
                            double value, std::uint64_t seed) {
  Rng rng(seed);
  ImageHSV hsv{height, width, std::vector<float>(height * width * 3)};
  for (std::size_t i = 0; i < height * width; ++i) {
    float* px = hsv.pixels.data() + 3 * i;
    px[0] = static_cast<float>(hue);
    px[1] = static_cast<float>(saturation);
    px[2] = static_cast<float>(std::clamp(value + 0.08 * (rng.uniform() - 0.5), 0.0, 1.0));
  }
  return hsv_to_rgb(hsv);
}

std::filesystem::path write_smoke_fixture(const std::filesystem::path& dir, std::size_t images,
                                          std::size_t clips) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "images");
  fs::create_directories(dir / "audio");
  Rng rng(20240601);

  std::vector<SampleRecord> image_records;
  const auto image_splits = synthetic_splits(images);
  for (std::size_t i = 0; i < images; ++i) {
    const double h = rng.uniform(), s = rng.uniform(0.3, 0.9), v = rng.uniform(0.3, 0.9);
    const std::string id = "img" + std::to_string(i);
    write_png(dir / "images" / (id + ".png"), gen_textured_image(32, 32, h, s, v, rng.next_u64()));
    image_records.push_back({id, fs::path("images") / (id + ".png"), image_splits[i], {}, {}, {}});
  }
  write_manifest(dir / "images.jsonl", image_records);

  std::vector<SampleRecord> audio_records;
  const auto audio_splits = synthetic_splits(clips);
  for (std::size_t i = 0; i < clips; ++i) {
    const std::size_t words = 3 + rng.below(6);
    const std::string id = "clip" + std::to_string(i);
    const auto speech = gen_speech_like_clip(words, 2.0, rng.next_u64());
    write_wav(dir / "audio" / (id + ".wav"), speech.clip);
    audio_records.push_back({id, fs::path("audio") / (id + ".wav"), audio_splits[i], {}, 2.0,
                             speech.transcript});
  }
  write_manifest(dir / "audio.jsonl", audio_records);

  using nlohmann::json;
  const json training = {{"max_epochs", 60}, {"patience", 10}};
  const json image_dataset = {{"name", "images"},
                              {"manifest", "images.jsonl"},
                              {"modality", "image"},
                              {"extractor", {{"kind", "toy"}, {"seed", 7}, {"dim", 64}}}};
  const json audio_dataset = {{"name", "speech"},
                              {"manifest", "audio.jsonl"},
                              {"modality", "audio"},
                              {"extractor", {{"kind", "toy"}, {"seed", 7}, {"dim", 64}}}};
  // One job per axis, spread over both modalities.
  const json jobs = {{{"name", "hue-informativeness"},
                      {"dataset", "images"},
                      {"axis", "informativeness"},
                      {"fv", "hue"},
                      {"probe", "mlp"},
                      {"seed", 101}},
                     {{"name", "brightness-p-equivariance"},
                      {"dataset", "images"},
                      {"axis", "p_equivariance"},
                      {"transform", {{"name", "brightness_shift"}, {"seed", 202}}},
                      {"probe", "mlp"},
                      {"seed", 102}},
                     {{"name", "pitch-r-equivariance"},
                      {"dataset", "speech"},
                      {"axis", "r_equivariance"},
                      {"transform", {{"name", "pitch_shift"}, {"seed", 303}}},
                      {"seed", 103}},
                     {{"name", "time-stretch-invariance"},
                      {"dataset", "speech"},
                      {"axis", "invariance"},
                      {"transform", {{"name", "time_stretch"}, {"seed", 404}}},
                      {"grid_points", 5}},
                     {{"name", "hue-vs-brightness-disentanglement"},
                      {"dataset", "images"},
                      {"axis", "disentanglement"},
                      {"fv", "hue"},
                      {"transform", {{"name", "brightness_shift"}, {"seed", 505}}},
                      {"seed", 104}}};
  const auto path = dir / "smoke.json";
  write_json(path, {{"schema", "syneval.config/1"},
                    {"output_dir", "results"},
                    {"training", training},
                    {"datasets", {image_dataset, audio_dataset}},
                    {"jobs", jobs}});
  return path;
}

}  // namespace syneval
