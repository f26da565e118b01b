// augsel/mel.hpp
//
// Copyright 2026 The augsel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "augsel/errors.hpp"
#include "augsel/fft.hpp"
#include "augsel/waveform.hpp"

namespace augsel {

inline constexpr int kMelBands = 64;
inline constexpr int kMelSampleRate = 16000;
inline constexpr int kMelWindowSamples = 400;  // 25 ms
inline constexpr int kMelHopSamples = 160;     // 10 ms
inline constexpr int kMelFftSize = 512;
inline constexpr double kMelLogFloor = 1e-10;

/// Log-Mel energies, one row per frame, kMelBands columns.
struct MelSpectrogram {
  Eigen::MatrixXd values;

  Eigen::Index frames() const { return values.rows(); }
};

inline double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

namespace detail {

struct MelFilterBank {
  // weights(band, bin) over the kMelFftSize/2 + 1 nonnegative-frequency bins
  Eigen::MatrixXd weights;
  std::vector<double> centers_hz;
};

/// 64 triangular filters, equally spaced on the HTK Mel scale over
/// [0, 8000] Hz, triangles linear in Mel.
inline const MelFilterBank& mel_filterbank() {
  static const MelFilterBank bank = [] {
    MelFilterBank b;
    const int bins = kMelFftSize / 2 + 1;
    const double mel_max = hz_to_mel(static_cast<double>(kMelSampleRate) / 2.0);
    std::vector<double> grid(kMelBands + 2);
    for (int i = 0; i < kMelBands + 2; ++i) {
      grid[i] = mel_max * static_cast<double>(i) / static_cast<double>(kMelBands + 1);
    }
    b.weights = Eigen::MatrixXd::Zero(kMelBands, bins);
    b.centers_hz.resize(kMelBands);
    for (int band = 0; band < kMelBands; ++band) {
      const double lo = grid[band], center = grid[band + 1], hi = grid[band + 2];
      b.centers_hz[band] = mel_to_hz(center);
      for (int k = 0; k < bins; ++k) {
        const double mel =
            hz_to_mel(static_cast<double>(k) * kMelSampleRate / static_cast<double>(kMelFftSize));
        double weight = 0.0;
        if (mel > lo && mel < center) {
          weight = (mel - lo) / (center - lo);
        } else if (mel >= center && mel < hi) {
          weight = (hi - mel) / (hi - center);
        }
        b.weights(band, k) = weight;
      }
    }
    return b;
  }();
  return bank;
}

}  // namespace detail

/// Filter center frequencies in Hz, in band order.
inline const std::vector<double>& mel_band_centers_hz() {
  return detail::mel_filterbank().centers_hz;
}

/// 64-band log-Mel spectrogram: Hann-windowed 400-sample frames with hop 160,
/// 512-point FFT power spectrum, triangular Mel filters, natural log with a
/// 1e-10 floor. Requires 16 kHz input of at least one window.
inline MelSpectrogram mel_spectrogram(const Waveform& w) {
  if (w.sample_rate != kMelSampleRate) {
    throw DataError("mel_spectrogram expects " + std::to_string(kMelSampleRate) + " Hz input, got " +
                    std::to_string(w.sample_rate) + " Hz");
  }
  if (w.samples.size() < kMelWindowSamples) {
    throw DataError("input shorter than one 25 ms analysis window");
  }
  const auto frames =
      static_cast<Eigen::Index>((w.samples.size() - kMelWindowSamples) / kMelHopSamples + 1);

  static const std::vector<double> hann = [] {
    std::vector<double> win(kMelWindowSamples);
    for (int i = 0; i < kMelWindowSamples; ++i) {
      win[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i /
                                    static_cast<double>(kMelWindowSamples - 1));
    }
    return win;
  }();

  const auto& bank = detail::mel_filterbank();
  const int bins = kMelFftSize / 2 + 1;
  FftPlan plan(kMelFftSize);
  std::vector<std::complex<double>> buf(kMelFftSize);
  Eigen::VectorXd power(bins);

  MelSpectrogram mel;
  mel.values.resize(frames, kMelBands);
  for (Eigen::Index f = 0; f < frames; ++f) {
    const std::size_t start = static_cast<std::size_t>(f) * kMelHopSamples;
    for (int i = 0; i < kMelWindowSamples; ++i) {
      buf[i] = w.samples[start + i] * hann[i];
    }
    std::fill(buf.begin() + kMelWindowSamples, buf.end(), std::complex<double>{});
    plan.forward(buf);
    for (int k = 0; k < bins; ++k) power[k] = std::norm(buf[k]);
    mel.values.row(f) =
        ((bank.weights * power).array() + kMelLogFloor).log().transpose();
  }
  return mel;
}

/// Per-band mean over frames; the representation kernels are evaluated on.
inline Eigen::VectorXd pool_mean(const MelSpectrogram& m) {
  if (m.values.rows() == 0) throw DataError("cannot pool an empty spectrogram");
  return m.values.colwise().mean().transpose();
}

}  // namespace augsel
