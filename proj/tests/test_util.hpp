// tests/test_util.hpp
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

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "augsel/rng.hpp"
#include "augsel/waveform.hpp"

namespace augsel::testing {

/// Unique scratch directory under the system temp dir; removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("augsel_" + tag + "_" + std::to_string(++counter) + "_" +
             std::to_string(static_cast<std::uint64_t>(::getpid())));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline Waveform sine_wave(double freq_hz, double duration_s = 1.0, int rate = 16000,
                          double amplitude = 0.5) {
  Waveform w;
  w.sample_rate = rate;
  const auto n = static_cast<std::size_t>(std::llround(duration_s * rate));
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] =
        amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / rate);
  }
  return w;
}

inline Waveform noise_wave(std::uint64_t seed, double duration_s = 1.0, int rate = 16000,
                           double amplitude = 0.9) {
  Waveform w;
  w.sample_rate = rate;
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(std::llround(duration_s * rate));
  w.samples.resize(n);
  for (auto& s : w.samples) s = uniform_real(rng, -amplitude, amplitude);
  return w;
}

/// Random source that replays a fixed script of uniform01 values, then
/// repeats the last one. Lets tests pin sampled effect parameters.
struct ScriptedRng {
  std::vector<double> values;
  std::size_t next = 0;

  double uniform01() {
    if (values.empty()) return 0.0;
    const double v = values[std::min(next, values.size() - 1)];
    ++next;
    return v;
  }
};

}  // namespace augsel::testing
