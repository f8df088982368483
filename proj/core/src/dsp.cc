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

#include "syneval/dsp.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "syneval/error.h"

namespace syneval {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// FFTW's planner is not thread-safe; plans are created once per size under
// a lock and then shared (execution with new arrays is thread-safe).
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

Plans plans_for(std::size_t n) {
  static std::map<std::size_t, Plans> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  Plans p;
  p.forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  p.inverse = fftw_plan_dft_c2r_1d(static_cast<int>(n), out, in, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  if (p.forward == nullptr || p.inverse == nullptr) {
    fail(ErrorCode::kTransform, "FFTW could not plan a transform of size " + std::to_string(n));
  }
  cache.emplace(n, p);
  return p;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

struct RealFft::Buffers {
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  Plans plans;

  ~Buffers() {
    fftw_free(real);
    fftw_free(spectrum);
  }
};

RealFft::RealFft(std::size_t n) : n_(n), buffers_(std::make_unique<Buffers>()) {
  if (n < 2) fail(ErrorCode::kTransform, "FFT size must be >= 2");
  buffers_->plans = plans_for(n);
  buffers_->real = fftw_alloc_real(n);
  buffers_->spectrum = fftw_alloc_complex(n / 2 + 1);
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  if (in.size() != n_ || out.size() != bins()) fail(ErrorCode::kShape, "RealFft::forward size");
  std::copy(in.begin(), in.end(), buffers_->real);
  fftw_execute_dft_r2c(buffers_->plans.forward, buffers_->real, buffers_->spectrum);
  for (std::size_t k = 0; k < bins(); ++k) {
    out[k] = {buffers_->spectrum[k][0], buffers_->spectrum[k][1]};
  }
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  if (in.size() != bins() || out.size() != n_) fail(ErrorCode::kShape, "RealFft::inverse size");
  for (std::size_t k = 0; k < bins(); ++k) {
    buffers_->spectrum[k][0] = in[k].real();
    buffers_->spectrum[k][1] = in[k].imag();
  }
  fftw_execute_dft_c2r(buffers_->plans.inverse, buffers_->spectrum, buffers_->real);
  std::copy(buffers_->real, buffers_->real + n_, out.begin());
}

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / n);
  }
  return w;
}

Stft stft(std::span<const float> signal, std::size_t n_fft, std::size_t hop) {
  if (hop == 0 || n_fft < 2) fail(ErrorCode::kTransform, "stft: invalid frame parameters");
  const std::size_t pad = n_fft / 2;
  std::vector<double> padded(signal.size() + 2 * pad, 0.0);
  std::copy(signal.begin(), signal.end(), padded.begin() + static_cast<std::ptrdiff_t>(pad));

  Stft out{n_fft, hop, {}};
  const std::size_t n_frames = padded.size() >= n_fft ? 1 + (padded.size() - n_fft) / hop : 0;
  const auto window = hann_window(n_fft);
  RealFft fft(n_fft);
  std::vector<double> frame(n_fft);
  out.frames.assign(n_frames, std::vector<std::complex<double>>(fft.bins()));
  for (std::size_t t = 0; t < n_frames; ++t) {
    const double* src = padded.data() + t * hop;
    for (std::size_t i = 0; i < n_fft; ++i) frame[i] = src[i] * window[i];
    fft.forward(frame, out.frames[t]);
  }
  return out;
}

std::vector<float> istft(const Stft& spec, std::size_t length) {
  const std::size_t n_fft = spec.n_fft;
  const std::size_t hop = spec.hop;
  const std::size_t pad = n_fft / 2;
  const std::size_t n_frames = spec.frames.size();
  const std::size_t total = n_frames == 0 ? 0 : n_fft + hop * (n_frames - 1);
  std::vector<double> acc(total, 0.0);
  std::vector<double> norm(total, 0.0);
  const auto window = hann_window(n_fft);
  RealFft fft(n_fft);
  std::vector<double> frame(n_fft);
  for (std::size_t t = 0; t < n_frames; ++t) {
    fft.inverse(spec.frames[t], frame);
    double* dst = acc.data() + t * hop;
    double* nrm = norm.data() + t * hop;
    for (std::size_t i = 0; i < n_fft; ++i) {
      dst[i] += frame[i] / static_cast<double>(n_fft) * window[i];
      nrm[i] += window[i] * window[i];
    }
  }
  std::vector<float> out(length, 0.0f);
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t j = i + pad;
    if (j >= total) break;
    out[i] = norm[j] > 1e-10 ? static_cast<float>(acc[j] / norm[j]) : 0.0f;
  }
  return out;
}

Stft phase_vocoder(const Stft& spec, double rate) {
  if (!(rate > 0.0)) fail(ErrorCode::kTransform, "phase_vocoder: rate must be positive");
  Stft out{spec.n_fft, spec.hop, {}};
  const std::size_t n_frames = spec.frames.size();
  if (n_frames == 0) return out;
  const std::size_t n_bins = spec.frames[0].size();

  std::vector<double> phi_advance(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    phi_advance[k] = 2.0 * std::numbers::pi * static_cast<double>(spec.hop) *
                     static_cast<double>(k) / static_cast<double>(spec.n_fft);
  }
  std::vector<double> phase_acc(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) phase_acc[k] = std::arg(spec.frames[0][k]);

  const std::vector<std::complex<double>> silent(n_bins);
  auto frame_at = [&](std::size_t t) -> const std::vector<std::complex<double>>& {
    return t < n_frames ? spec.frames[t] : silent;
  };

  const double two_pi = 2.0 * std::numbers::pi;
  for (double step = 0.0; step < static_cast<double>(n_frames); step += rate) {
    const std::size_t t0 = static_cast<std::size_t>(step);
    const double alpha = step - static_cast<double>(t0);
    const auto& c0 = frame_at(t0);
    const auto& c1 = frame_at(t0 + 1);
    std::vector<std::complex<double>> frame(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double mag = (1.0 - alpha) * std::abs(c0[k]) + alpha * std::abs(c1[k]);
      frame[k] = std::polar(mag, phase_acc[k]);
      double dphase = std::arg(c1[k]) - std::arg(c0[k]) - phi_advance[k];
      dphase -= two_pi * std::round(dphase / two_pi);
      phase_acc[k] += phi_advance[k] + dphase;
    }
    out.frames.push_back(std::move(frame));
  }
  return out;
}

namespace {

constexpr double kKaiserBeta = 8.6;
constexpr std::size_t kKaiserTable = 1 << 14;

// Kaiser window sampled over |r| in [0, 1]; linear interpolation between
// entries keeps the error far below float resolution.
double kaiser(double r) {
  static const std::vector<double> table = [] {
    std::vector<double> t(kKaiserTable + 1);
    const double norm = std::cyl_bessel_i(0.0, kKaiserBeta);
    for (std::size_t i = 0; i <= kKaiserTable; ++i) {
      const double x = static_cast<double>(i) / kKaiserTable;
      t[i] = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(std::max(0.0, 1.0 - x * x))) / norm;
    }
    return t;
  }();
  const double pos = std::abs(r) * kKaiserTable;
  const auto i = std::min(static_cast<std::size_t>(pos), kKaiserTable - 1);
  const double frac = pos - static_cast<double>(i);
  return table[i] + frac * (table[i + 1] - table[i]);
}

}  // namespace

std::vector<float> resample(std::span<const float> signal, double ratio) {
  if (!(ratio > 0.0)) fail(ErrorCode::kTransform, "resample: ratio must be positive");
  const std::size_t out_len =
      static_cast<std::size_t>(std::llround(static_cast<double>(signal.size()) * ratio));
  std::vector<float> out(out_len, 0.0f);
  if (signal.empty()) return out;

  constexpr double kZeroCrossings = 16.0;
  const double cutoff = std::min(1.0, ratio);
  const double half_width = kZeroCrossings / cutoff;
  const auto n = static_cast<std::ptrdiff_t>(signal.size());

  for (std::size_t j = 0; j < out_len; ++j) {
    const double t = static_cast<double>(j) / ratio;
    const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil(t - half_width)));
    const auto hi = std::min<std::ptrdiff_t>(n - 1, static_cast<std::ptrdiff_t>(std::floor(t + half_width)));
    double acc = 0.0;
    for (std::ptrdiff_t k = lo; k <= hi; ++k) {
      const double tau = t - static_cast<double>(k);
      const double r = tau / half_width;
      if (std::abs(r) >= 1.0) continue;
      acc += signal[static_cast<std::size_t>(k)] * cutoff * sinc(cutoff * tau) * kaiser(r);
    }
    out[j] = static_cast<float>(acc);
  }
  return out;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b,
                                 std::size_t length) {
  std::vector<double> out(length, 0.0);
  if (a.empty() || b.empty() || length == 0) return out;
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(std::max<std::size_t>(full, 2));
  RealFft fft(n);
  std::vector<double> pa(n, 0.0), pb(n, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  std::vector<std::complex<double>> fa(fft.bins()), fb(fft.bins());
  fft.forward(pa, fa);
  fft.forward(pb, fb);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  fft.inverse(fa, pa);
  const std::size_t keep = std::min(length, full);
  for (std::size_t i = 0; i < keep; ++i) out[i] = pa[i] / static_cast<double>(n);
  return out;
}

}  // namespace syneval
