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

#ifndef SYNEVAL_DSP_H_
#define SYNEVAL_DSP_H_

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace syneval {

// Real-to-complex FFT of a fixed size backed by FFTW. Each instance owns its
// buffers, so separate instances can be used from separate threads. The
// inverse is unnormalized (scales by size()).
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  struct Buffers;
  std::size_t n_;
  std::unique_ptr<Buffers> buffers_;
};

// Periodic Hann window of length n.
std::vector<double> hann_window(std::size_t n);

// Short-time Fourier transform with centered frames (n_fft/2 zero padding on
// both sides). frames[t][k] is bin k of frame t.
struct Stft {
  std::size_t n_fft = 0;
  std::size_t hop = 0;
  std::vector<std::vector<std::complex<double>>> frames;
};

Stft stft(std::span<const float> signal, std::size_t n_fft, std::size_t hop);

// Weighted overlap-add inverse of stft(); the output is trimmed or
// zero-padded to `length` samples.
std::vector<float> istft(const Stft& spec, std::size_t length);

// Phase-vocoder time-scale modification of a spectrogram: frames are read at
// fractional positions 0, rate, 2*rate, ... with magnitudes interpolated and
// phases accumulated from the per-bin instantaneous frequency.
Stft phase_vocoder(const Stft& spec, double rate);

// Band-limited resampling by `ratio` (output length = round(len * ratio))
// with a Kaiser-windowed sinc kernel; the cutoff tracks min(1, ratio) to
// avoid aliasing when downsampling.
std::vector<float> resample(std::span<const float> signal, double ratio);

// Linear convolution via FFT, truncated to the first `length` samples.
std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b,
                                 std::size_t length);

std::size_t next_pow2(std::size_t n);

}  // namespace syneval

#endif  // SYNEVAL_DSP_H_
