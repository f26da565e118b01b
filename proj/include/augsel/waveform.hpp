// augsel/waveform.hpp
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
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "augsel/errors.hpp"
#include "augsel/rng.hpp"

namespace augsel {

/// Length of the segments the pipeline works on.
inline constexpr double kSegmentSeconds = 1.0;

/// Mono audio buffer. Samples are real amplitudes, nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  std::size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / static_cast<double>(sample_rate);
  }
};

inline double peak_amplitude(const Waveform& w) {
  double m = 0.0;
  for (double s : w.samples) m = std::max(m, std::abs(s));
  return m;
}

inline double rms(const Waveform& w) {
  if (w.samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : w.samples) acc += s * s;
  return std::sqrt(acc / static_cast<double>(w.samples.size()));
}

namespace detail {

inline std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(static_cast<std::uint16_t>(p[0]) |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

inline void append_u32le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline void append_u16le(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace detail

/// Reads a RIFF WAVE file. Only 16-bit signed PCM, single channel is
/// accepted; anything else is a DataError. Samples are scaled to [-1, 1]
/// by dividing by 32768.
inline Waveform load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open audio file: " + path.string());
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
  if (bytes.size() < 12 || std::string(bytes.begin(), bytes.begin() + 4) != "RIFF" ||
      std::string(bytes.begin() + 8, bytes.begin() + 12) != "WAVE") {
    throw DataError("not a RIFF/WAVE file: " + path.string());
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t data_off = 0, data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id(bytes.begin() + pos, bytes.begin() + pos + 4);
    const std::uint32_t chunk_len = detail::read_u32le(&bytes[pos + 4]);
    const std::size_t body = pos + 8;
    if (body + chunk_len > bytes.size()) {
      throw DataError("truncated chunk '" + id + "' in " + path.string());
    }
    if (id == "fmt ") {
      if (chunk_len < 16) throw DataError("malformed fmt chunk in " + path.string());
      format = detail::read_u16le(&bytes[body]);
      channels = detail::read_u16le(&bytes[body + 2]);
      rate = detail::read_u32le(&bytes[body + 4]);
      bits = detail::read_u16le(&bytes[body + 14]);
      have_fmt = true;
    } else if (id == "data") {
      data_off = body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data_off == 0) {
    throw DataError("missing fmt/data chunk in " + path.string());
  }
  if (format != 1 || bits != 16) {
    throw DataError("unsupported encoding in " + path.string() + " (want 16-bit PCM)");
  }
  if (channels != 1) {
    throw DataError("multi-channel audio not supported: " + path.string() + " has " +
                    std::to_string(channels) + " channels");
  }
  if (rate == 0) throw DataError("zero sample rate in " + path.string());

  Waveform w;
  w.sample_rate = static_cast<int>(rate);
  w.samples.resize(data_len / 2);
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    const auto u = detail::read_u16le(&bytes[data_off + 2 * i]);
    const auto s = static_cast<std::int16_t>(u);
    w.samples[i] = static_cast<double>(s) / 32768.0;
  }
  return w;
}

/// Writes 16-bit PCM mono. Values coming from load_wav round-trip
/// bit-exactly; out-of-range values are clamped.
inline void save_wav(const std::filesystem::path& path, const Waveform& w) {
  const std::uint32_t data_len = static_cast<std::uint32_t>(w.samples.size() * 2);
  std::string out;
  out.reserve(44 + data_len);
  out += "RIFF";
  detail::append_u32le(out, 36 + data_len);
  out += "WAVEfmt ";
  detail::append_u32le(out, 16);
  detail::append_u16le(out, 1);  // PCM
  detail::append_u16le(out, 1);  // mono
  detail::append_u32le(out, static_cast<std::uint32_t>(w.sample_rate));
  detail::append_u32le(out, static_cast<std::uint32_t>(w.sample_rate) * 2);
  detail::append_u16le(out, 2);
  detail::append_u16le(out, 16);
  out += "data";
  detail::append_u32le(out, data_len);
  for (double s : w.samples) {
    double scaled = std::nearbyint(s * 32768.0);
    scaled = std::clamp(scaled, -32768.0, 32767.0);
    detail::append_u16le(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write audio file: " + path.string());
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw DataError("failed writing audio file: " + path.string());
}

/// Cuts a random segment of round(duration_s * sample_rate) samples, with the
/// start offset uniform over the valid positions. Shorter inputs are
/// zero-left-padded to the target length, keeping content aligned to the
/// segment end.
template <RandomSource R>
Waveform cut_random_segment(const Waveform& w, double duration_s, R& rng) {
  if (!(duration_s > 0.0)) throw DataError("segment duration must be positive");
  const auto target =
      static_cast<std::size_t>(std::llround(duration_s * static_cast<double>(w.sample_rate)));
  Waveform out;
  out.sample_rate = w.sample_rate;
  if (w.samples.size() <= target) {
    out.samples.assign(target, 0.0);
    std::copy(w.samples.begin(), w.samples.end(),
              out.samples.begin() + static_cast<std::ptrdiff_t>(target - w.samples.size()));
    return out;
  }
  const std::size_t offset = uniform_index(rng, w.samples.size() - target + 1);
  out.samples.assign(w.samples.begin() + static_cast<std::ptrdiff_t>(offset),
                     w.samples.begin() + static_cast<std::ptrdiff_t>(offset + target));
  return out;
}

}  // namespace augsel
