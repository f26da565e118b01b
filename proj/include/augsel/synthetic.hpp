// augsel/synthetic.hpp
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "augsel/errors.hpp"
#include "augsel/fft.hpp"
#include "augsel/rng.hpp"
#include "augsel/waveform.hpp"

namespace augsel {

/// Synthetic corpus for tests and demos: classes are distinguished only by
/// their spectral band, and every file gets its own narrow sub-band inside
/// the class band so views of the same file stay recognizable.
struct SyntheticCorpusOptions {
  int n_classes = 2;
  int per_class = 20;
  double duration_s = 2.0;
  std::uint64_t seed = 1;
};

namespace detail {

/// Noise confined to [lo_hz, hi_hz], built in the frequency domain with
/// random phases. Peak-normalized to 0.5.
inline Waveform band_noise(std::size_t n_samples, int rate, double lo_hz, double hi_hz, Rng& rng) {
  const std::size_t n = next_pow2(std::max<std::size_t>(n_samples, 2));
  std::vector<std::complex<double>> spec(n);
  const double bin_hz = static_cast<double>(rate) / static_cast<double>(n);
  for (std::size_t k = 1; k < n / 2; ++k) {
    const double f = static_cast<double>(k) * bin_hz;
    if (f < lo_hz || f > hi_hz) continue;
    const double phase = uniform_real(rng, 0.0, 2.0 * std::numbers::pi);
    spec[k] = std::polar(1.0, phase);
    spec[n - k] = std::conj(spec[k]);
  }
  FftPlan plan(n);
  plan.inverse(spec);
  Waveform w;
  w.sample_rate = rate;
  w.samples.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) w.samples[i] = spec[i].real();
  const double p = peak_amplitude(w);
  if (p > 0.0) {
    for (double& s : w.samples) s *= 0.5 / p;
  }
  return w;
}

}  // namespace detail

/// Writes WAV files plus a manifest.jsonl into `dir`; returns the manifest
/// path. Class c occupies one spectral band; each file is noise in a random
/// 600 Hz sub-band of its class band.
inline std::filesystem::path generate_synthetic_corpus(const std::filesystem::path& dir,
                                                       const SyntheticCorpusOptions& opt) {
  if (opt.n_classes < 2) throw DataError("synthetic corpus needs at least two classes");
  if (opt.per_class < 1) throw DataError("synthetic corpus needs at least one file per class");
  if (!(opt.duration_s > 0.0)) throw DataError("synthetic corpus duration must be positive");
  std::filesystem::create_directories(dir);

  const int rate = 16000;
  const auto n_samples = static_cast<std::size_t>(std::llround(opt.duration_s * rate));
  const double band_lo = 300.0, band_hi = 7000.0;
  const double class_span = (band_hi - band_lo) / static_cast<double>(opt.n_classes);
  const double sub_band = 600.0;

  const auto manifest_path = dir / "manifest.jsonl";
  std::ofstream manifest(manifest_path, std::ios::binary);
  if (!manifest) throw DataError("cannot write manifest: " + manifest_path.string());

  Rng rng(opt.seed);
  for (int c = 0; c < opt.n_classes; ++c) {
    const std::string label = "band" + std::to_string(c);
    const double lo = band_lo + class_span * static_cast<double>(c);
    const double hi = lo + 0.75 * class_span;  // gap between class bands
    for (int i = 0; i < opt.per_class; ++i) {
      const double center =
          uniform_real(rng, lo + sub_band / 2.0, std::max(lo + sub_band / 2.0, hi - sub_band / 2.0));
      const Waveform w =
          detail::band_noise(n_samples, rate, center - sub_band / 2.0, center + sub_band / 2.0, rng);
      char name[64];
      std::snprintf(name, sizeof(name), "%s_%03d.wav", label.c_str(), i);
      save_wav(dir / name, w);
      nlohmann::json rec{{"id", label + "_" + std::to_string(i)},
                         {"path", std::string(name)},
                         {"label", label}};
      manifest << rec.dump() << "\n";
    }
  }
  if (!manifest) throw DataError("failed writing manifest: " + manifest_path.string());
  return manifest_path;
}

}  // namespace augsel
