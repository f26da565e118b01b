// augsel/effects.hpp
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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "augsel/aug_params.hpp"
#include "augsel/errors.hpp"
#include "augsel/fft.hpp"
#include "augsel/rng.hpp"
#include "augsel/waveform.hpp"

namespace augsel {

// Band-reject centers are sampled from this range; it stays inside the
// Nyquist band at the 16 kHz pipeline rate.
inline constexpr double kBandRejectMinHz = 100.0;
inline constexpr double kBandRejectMaxHz = 7600.0;

namespace detail {

// Fixed seed for the reverb impulse-response noise, making apply_reverb a
// pure function of its arguments.
inline constexpr std::uint64_t kReverbRirSeed = 0x5249525f4e4f4953ull;

inline constexpr int kSincLobes = 8;
inline constexpr double kKaiserBeta = 8.0;
inline constexpr std::size_t kOlaFrame = 2048;

inline double bessel_i0(double x) {
  double sum = 1.0, term = 1.0;
  for (int k = 1; k < 64; ++k) {
    const double half = x / (2.0 * k);
    term *= half * half;
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

inline double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

/// Reads the input at positions m*step with linear interpolation.
inline std::vector<double> resample_linear(const std::vector<double>& x, double step) {
  const std::size_t n = x.size();
  const auto m_count = static_cast<std::size_t>(
                           std::floor(static_cast<double>(n - 1) / step)) + 1;
  std::vector<double> out(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const double pos = static_cast<double>(m) * step;
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    const double a = x[i];
    const double b = x[std::min(i + 1, n - 1)];
    out[m] = a + frac * (b - a);
  }
  return out;
}

/// Windowed-sinc interpolation (Kaiser window, kSincLobes zero crossings per
/// side). The sinc cutoff is lowered when reading faster than real time so
/// downshifts in duration do not alias.
inline std::vector<double> resample_sinc(const std::vector<double>& x, double step) {
  const std::size_t n = x.size();
  const double cutoff = std::min(1.0, 1.0 / step);
  const double half_width = static_cast<double>(kSincLobes) / cutoff;
  const double i0_beta = bessel_i0(kKaiserBeta);
  const auto m_count = static_cast<std::size_t>(
                           std::floor(static_cast<double>(n - 1) / step)) + 1;
  std::vector<double> out(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const double pos = static_cast<double>(m) * step;
    const auto j_lo = static_cast<long>(std::ceil(pos - half_width));
    const auto j_hi = static_cast<long>(std::floor(pos + half_width));
    double acc = 0.0, wsum = 0.0;
    for (long j = std::max<long>(j_lo, 0); j <= std::min<long>(j_hi, static_cast<long>(n) - 1);
         ++j) {
      const double t = static_cast<double>(j) - pos;
      const double r = t / half_width;
      const double window = bessel_i0(kKaiserBeta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
      const double k = cutoff * sinc(cutoff * t) * window;
      acc += x[static_cast<std::size_t>(j)] * k;
      wsum += k;
    }
    out[m] = std::abs(wsum) > 1e-12 ? acc / wsum : acc;
  }
  return out;
}

/// Overlap-add time stretch to an exact target length. Frames are weighted
/// with a half-sample-offset Hann window (nonzero at the edges, constant
/// overlap at hop = frame/2) and the accumulated window sum is divided out,
/// so every output sample is a convex combination of input samples.
inline std::vector<double> ola_stretch(const std::vector<double>& y, std::size_t target_len) {
  if (target_len == 0) return {};
  if (y.empty()) return std::vector<double>(target_len, 0.0);
  if (y.size() == target_len) return y;
  const std::size_t frame = std::min({kOlaFrame, target_len, y.size()});
  if (frame < 4) {
    // Degenerate sizes: nearest-index mapping.
    std::vector<double> out(target_len);
    for (std::size_t i = 0; i < target_len; ++i) {
      const double pos = target_len == 1
                             ? 0.0
                             : static_cast<double>(i) * static_cast<double>(y.size() - 1) /
                                   static_cast<double>(target_len - 1);
      out[i] = y[static_cast<std::size_t>(std::llround(pos))];
    }
    return out;
  }
  const std::size_t hop = frame / 2;

  std::vector<double> window(frame);
  for (std::size_t t = 0; t < frame; ++t) {
    window[t] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (static_cast<double>(t) + 0.5) /
                                     static_cast<double>(frame));
  }

  std::vector<std::size_t> positions;
  for (std::size_t p = 0;; p += hop) {
    if (p >= target_len - frame) {
      positions.push_back(target_len - frame);
      break;
    }
    positions.push_back(p);
  }

  std::vector<double> acc(target_len, 0.0), norm(target_len, 0.0);
  const std::size_t in_span = y.size() - frame;
  const std::size_t out_span = target_len - frame;
  for (std::size_t p : positions) {
    const std::size_t a =
        out_span == 0 ? 0
                      : static_cast<std::size_t>(std::llround(
                            static_cast<double>(p) * static_cast<double>(in_span) /
                            static_cast<double>(out_span)));
    for (std::size_t t = 0; t < frame; ++t) {
      acc[p + t] += window[t] * y[a + t];
      norm[p + t] += window[t];
    }
  }
  std::vector<double> out(target_len);
  for (std::size_t i = 0; i < target_len; ++i) {
    out[i] = norm[i] > 1e-12 ? acc[i] / norm[i] : 0.0;
  }
  return out;
}

inline void limit_peak_to(Waveform& w, double reference_peak) {
  const double p = peak_amplitude(w);
  if (p > reference_peak && p > 0.0) {
    const double scale = reference_peak / p;
    for (double& s : w.samples) s *= scale;
  }
}

}  // namespace detail

/// Zeroes one contiguous interval of round(drop_length_ms/1000 * rate)
/// samples starting at `start` (clamped to fit). Drops longer than the
/// waveform zero it entirely.
inline Waveform time_drop_at(const Waveform& w, std::size_t drop_samples, std::size_t start) {
  if (drop_samples == 0) return w;
  Waveform out = w;
  if (drop_samples >= out.samples.size()) {
    std::fill(out.samples.begin(), out.samples.end(), 0.0);
    return out;
  }
  start = std::min(start, out.samples.size() - drop_samples);
  std::fill(out.samples.begin() + static_cast<std::ptrdiff_t>(start),
            out.samples.begin() + static_cast<std::ptrdiff_t>(start + drop_samples), 0.0);
  return out;
}

/// Time dropout at a uniformly random valid position.
template <RandomSource R>
Waveform apply_time_drop(const Waveform& w, double drop_length_ms, R& rng) {
  if (drop_length_ms < 0.0) throw DataError("drop_length_ms must be nonnegative");
  if (w.samples.empty()) throw DataError("time drop needs a nonempty waveform");
  const auto drop = static_cast<std::size_t>(
      std::llround(drop_length_ms / 1000.0 * static_cast<double>(w.sample_rate)));
  if (drop == 0) return w;
  if (drop >= w.samples.size()) return time_drop_at(w, drop, 0);
  const std::size_t start = uniform_index(rng, w.samples.size() - drop + 1);
  return time_drop_at(w, drop, start);
}

/// Shifts perceived pitch by 2^(shift_cents/1200) while preserving duration:
/// the signal is resampled by that factor, then time-stretched back to the
/// original length by overlap-add. `quick` swaps the windowed-sinc
/// interpolation for cheap linear interpolation.
inline Waveform apply_pitch_shift(const Waveform& w, double shift_cents, bool quick) {
  if (!std::isfinite(shift_cents)) throw DataError("pitch shift must be finite");
  if (shift_cents == 0.0) return w;  // bypass, no resampling artifacts
  if (w.samples.size() < 2) return w;
  const double factor = std::exp2(shift_cents / 1200.0);
  auto resampled = quick ? detail::resample_linear(w.samples, factor)
                         : detail::resample_sinc(w.samples, factor);
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples = detail::ola_stretch(resampled, w.samples.size());
  detail::limit_peak_to(out, peak_amplitude(w));
  return out;
}

/// Convolves with a synthetic room impulse response: a unit direct path
/// followed by exponentially decaying white noise with RT60 = room_scale/100
/// seconds. Output is truncated to the input length and renormalized to the
/// input peak.
inline Waveform apply_reverb(const Waveform& w, double room_scale) {
  if (!(room_scale >= 0.0 && room_scale <= 100.0)) {
    throw DataError("room_scale must lie in [0, 100]");
  }
  const double rt60 = room_scale / 100.0;
  const auto tail = static_cast<std::size_t>(
      std::llround(rt60 * static_cast<double>(w.sample_rate)));
  if (tail == 0 || w.samples.empty()) return w;  // RT60 = 0 is a unit delta

  Rng rir_rng(detail::kReverbRirSeed);
  std::vector<double> rir(tail + 1);
  rir[0] = 1.0;
  for (std::size_t n = 1; n <= tail; ++n) {
    const double t = static_cast<double>(n) / static_cast<double>(w.sample_rate);
    const double envelope = std::pow(10.0, -3.0 * t / rt60);  // -60 dB at RT60
    rir[n] = 0.3 * gaussian(rir_rng) * envelope;
  }

  auto conv = fft_convolve(w.samples, rir);
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.assign(conv.begin(), conv.begin() + static_cast<std::ptrdiff_t>(w.samples.size()));

  const double in_peak = peak_amplitude(w);
  const double out_peak = peak_amplitude(out);
  if (out_peak > 0.0) {
    const double scale = in_peak / out_peak;
    for (double& s : out.samples) s *= scale;
  }
  return out;
}

/// Clamps every sample to [-clip_factor*m, +clip_factor*m] where m is the
/// input's peak magnitude. No rescaling afterward; silence passes through.
inline Waveform apply_clip(const Waveform& w, double clip_factor) {
  if (!(clip_factor > 0.0 && clip_factor <= 1.0)) {
    throw DataError("clip_factor must lie in (0, 1]");
  }
  const double m = peak_amplitude(w);
  if (m == 0.0) return w;
  const double bound = clip_factor * m;
  Waveform out = w;
  for (double& s : out.samples) s = std::clamp(s, -bound, bound);
  return out;
}

/// Second-order notch cascade (two identical RBJ biquads) centered at
/// center_hz with the given -3 dB bandwidth. width_hz <= 0 bypasses.
inline Waveform notch_filter(const Waveform& w, double center_hz, double width_hz) {
  if (width_hz <= 0.0) return w;
  const double nyquist = static_cast<double>(w.sample_rate) / 2.0;
  if (!(center_hz > 0.0 && center_hz < nyquist)) {
    throw DataError("notch center must lie inside (0, Nyquist)");
  }
  const double w0 = 2.0 * std::numbers::pi * center_hz / static_cast<double>(w.sample_rate);
  const double q = center_hz / width_hz;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  const double b0 = 1.0 / a0;
  const double b1 = -2.0 * std::cos(w0) / a0;
  const double b2 = 1.0 / a0;
  const double a1 = -2.0 * std::cos(w0) / a0;
  const double a2 = (1.0 - alpha) / a0;

  Waveform out = w;
  for (int pass = 0; pass < 2; ++pass) {
    double s1 = 0.0, s2 = 0.0;  // direct form II transposed state
    for (double& x : out.samples) {
      const double in = x;
      const double y = b0 * in + s1;
      s1 = b1 * in - a1 * y + s2;
      s2 = b2 * in - a2 * y;
      x = y;
    }
  }
  detail::limit_peak_to(out, peak_amplitude(w));
  return out;
}

/// Rejects a band around a random center f0 ~ U[100 Hz, 7600 Hz] with
/// bandwidth band_scaler * f0. band_scaler = 0 bypasses entirely.
template <RandomSource R>
Waveform apply_band_reject(const Waveform& w, double band_scaler, R& rng) {
  if (!(band_scaler >= 0.0 && band_scaler <= 1.0)) {
    throw DataError("band_scaler must lie in [0, 1]");
  }
  if (band_scaler == 0.0) return w;
  const double center = uniform_real(rng, kBandRejectMinHz, kBandRejectMaxHz);
  return notch_filter(w, center, band_scaler * center);
}

// --- Sampled chains --------------------------------------------------------

struct TimeDropSpec {
  double drop_length_ms;
  double offset_frac;  // position of the dropped interval, as a fraction of the valid range
  bool operator==(const TimeDropSpec&) const = default;
};
struct PitchShiftSpec {
  double shift_cents;
  bool quick;
  bool operator==(const PitchShiftSpec&) const = default;
};
struct ReverbSpec {
  double room_scale;
  bool operator==(const ReverbSpec&) const = default;
};
struct BandRejectSpec {
  double center_hz;
  double width_hz;
  bool operator==(const BandRejectSpec&) const = default;
};
struct ClipSpec {
  double clip_factor;
  bool operator==(const ClipSpec&) const = default;
};

using EffectApplication =
    std::variant<TimeDropSpec, PitchShiftSpec, ReverbSpec, BandRejectSpec, ClipSpec>;

/// One concrete realization of an AugDistribution: which effects apply, with
/// which sampled scalars, in the fixed application order
/// time drop -> pitch -> reverb -> band reject -> clip.
struct AugChain {
  std::vector<EffectApplication> effects;

  bool empty() const { return effects.empty(); }
};

/// Samples a chain: each effect is included independently with its apply
/// probability, and included effects draw their scalars uniformly from the
/// distribution's bounds. All randomness is consumed here; applying the
/// resulting chain is deterministic.
template <RandomSource R>
AugChain sample_chain(const AugDistribution& d, R& rng) {
  AugChain chain;
  if (rng.uniform01() < d.p_timedrop) {
    const double len = uniform_real(rng, 0.0, d.timedrop_max);
    chain.effects.emplace_back(TimeDropSpec{len, rng.uniform01()});
  }
  if (rng.uniform01() < d.p_pitch) {
    const double cents = uniform_real(rng, -d.pitch_shift_max, d.pitch_shift_max);
    const bool quick = rng.uniform01() < d.p_pitch_quick;
    chain.effects.emplace_back(PitchShiftSpec{cents, quick});
  }
  if (rng.uniform01() < d.p_reverb) {
    chain.effects.emplace_back(ReverbSpec{uniform_real(rng, d.room_scale_min, d.room_scale_max)});
  }
  if (rng.uniform01() < d.p_bandreject) {
    const double center = uniform_real(rng, kBandRejectMinHz, kBandRejectMaxHz);
    chain.effects.emplace_back(BandRejectSpec{center, d.band_scaler * center});
  }
  if (rng.uniform01() < d.p_clip) {
    chain.effects.emplace_back(ClipSpec{uniform_real(rng, d.clip_min, d.clip_max)});
  }
  return chain;
}

/// Applies the chain's effects in order. Length and rate are preserved.
inline Waveform apply_chain(const AugChain& chain, const Waveform& input) {
  Waveform w = input;
  for (const auto& effect : chain.effects) {
    w = std::visit(
        [&](const auto& spec) -> Waveform {
          using T = std::decay_t<decltype(spec)>;
          if constexpr (std::is_same_v<T, TimeDropSpec>) {
            const auto drop = static_cast<std::size_t>(std::llround(
                spec.drop_length_ms / 1000.0 * static_cast<double>(w.sample_rate)));
            if (drop == 0 || w.samples.empty()) return w;
            if (drop >= w.samples.size()) return time_drop_at(w, drop, 0);
            const std::size_t valid = w.samples.size() - drop + 1;
            auto start = static_cast<std::size_t>(spec.offset_frac * static_cast<double>(valid));
            start = std::min(start, valid - 1);
            return time_drop_at(w, drop, start);
          } else if constexpr (std::is_same_v<T, PitchShiftSpec>) {
            return apply_pitch_shift(w, spec.shift_cents, spec.quick);
          } else if constexpr (std::is_same_v<T, ReverbSpec>) {
            return apply_reverb(w, spec.room_scale);
          } else if constexpr (std::is_same_v<T, BandRejectSpec>) {
            return notch_filter(w, spec.center_hz, spec.width_hz);
          } else {
            return apply_clip(w, spec.clip_factor);
          }
        },
        effect);
  }
  return w;
}

inline nlohmann::json to_json(const AugChain& chain) {
  nlohmann::json effects = nlohmann::json::array();
  for (const auto& effect : chain.effects) {
    std::visit(
        [&](const auto& spec) {
          using T = std::decay_t<decltype(spec)>;
          nlohmann::json j;
          if constexpr (std::is_same_v<T, TimeDropSpec>) {
            j = {{"effect", "time_drop"},
                 {"drop_length_ms", spec.drop_length_ms},
                 {"offset_frac", spec.offset_frac}};
          } else if constexpr (std::is_same_v<T, PitchShiftSpec>) {
            j = {{"effect", "pitch_shift"}, {"shift_cents", spec.shift_cents}, {"quick", spec.quick}};
          } else if constexpr (std::is_same_v<T, ReverbSpec>) {
            j = {{"effect", "reverb"}, {"room_scale", spec.room_scale}};
          } else if constexpr (std::is_same_v<T, BandRejectSpec>) {
            j = {{"effect", "band_reject"},
                 {"center_hz", spec.center_hz},
                 {"width_hz", spec.width_hz}};
          } else {
            j = {{"effect", "clip"}, {"clip_factor", spec.clip_factor}};
          }
          effects.push_back(std::move(j));
        },
        effect);
  }
  return nlohmann::json{{"effects", std::move(effects)}};
}

}  // namespace augsel
