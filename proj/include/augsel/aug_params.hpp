// augsel/aug_params.hpp
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

#include <array>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "augsel/errors.hpp"
#include "augsel/rng.hpp"

namespace augsel {

/// An augmentation distribution: per-effect apply probabilities plus the
/// bounds and knobs from which concrete effect parameters are sampled.
/// All 13 fields live in fixed ranges; see aug_param_ranges().
struct AugDistribution {
  double p_timedrop = 0.0;
  double p_pitch = 0.0;
  double p_reverb = 0.0;
  double p_clip = 0.0;
  double p_bandreject = 0.0;
  double room_scale_min = 0.0;    // [0, 30]
  double room_scale_max = 30.0;   // [30, 100]
  double band_scaler = 0.0;       // [0, 1], rejected bandwidth as a fraction of center
  double pitch_shift_max = 150.0; // [150, 450] cents
  double p_pitch_quick = 0.0;     // [0, 1]
  double clip_min = 0.3;          // [0.3, 0.6]
  double clip_max = 0.6;          // [0.6, 1]
  double timedrop_max = 30.0;     // [30, 150] ms

  bool operator==(const AugDistribution&) const = default;
};

struct AugParamRange {
  std::string_view name;
  double lo;
  double hi;
};

/// Canonical parameter order; also the row order of MED reports.
inline constexpr std::array<AugParamRange, 13> aug_param_ranges() {
  return {{{"p_timedrop", 0.0, 1.0},
           {"p_pitch", 0.0, 1.0},
           {"p_reverb", 0.0, 1.0},
           {"p_clip", 0.0, 1.0},
           {"p_bandreject", 0.0, 1.0},
           {"room_scale_min", 0.0, 30.0},
           {"room_scale_max", 30.0, 100.0},
           {"band_scaler", 0.0, 1.0},
           {"pitch_shift_max", 150.0, 450.0},
           {"p_pitch_quick", 0.0, 1.0},
           {"clip_min", 0.3, 0.6},
           {"clip_max", 0.6, 1.0},
           {"timedrop_max", 30.0, 150.0}}};
}

namespace detail {

inline double* aug_param_slot(AugDistribution& d, std::string_view name) {
  if (name == "p_timedrop") return &d.p_timedrop;
  if (name == "p_pitch") return &d.p_pitch;
  if (name == "p_reverb") return &d.p_reverb;
  if (name == "p_clip") return &d.p_clip;
  if (name == "p_bandreject") return &d.p_bandreject;
  if (name == "room_scale_min") return &d.room_scale_min;
  if (name == "room_scale_max") return &d.room_scale_max;
  if (name == "band_scaler") return &d.band_scaler;
  if (name == "pitch_shift_max") return &d.pitch_shift_max;
  if (name == "p_pitch_quick") return &d.p_pitch_quick;
  if (name == "clip_min") return &d.clip_min;
  if (name == "clip_max") return &d.clip_max;
  if (name == "timedrop_max") return &d.timedrop_max;
  return nullptr;
}

}  // namespace detail

inline double aug_param_value(const AugDistribution& d, std::string_view name) {
  auto* slot = detail::aug_param_slot(const_cast<AugDistribution&>(d), name);
  if (!slot) throw DataError("unknown augmentation parameter: " + std::string(name));
  return *slot;
}

inline void validate(const AugDistribution& d) {
  for (const auto& r : aug_param_ranges()) {
    const double v = aug_param_value(d, r.name);
    if (!(v >= r.lo && v <= r.hi)) {
      throw DataError("augmentation parameter " + std::string(r.name) + "=" + std::to_string(v) +
                      " outside [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
    }
  }
}

/// Draws every field independently and uniformly from its range, in canonical
/// parameter order.
template <RandomSource R>
AugDistribution sample_distribution(R& rng) {
  AugDistribution d;
  for (const auto& r : aug_param_ranges()) {
    *detail::aug_param_slot(d, r.name) = uniform_real(rng, r.lo, r.hi);
  }
  return d;
}

/// Valid distribution that never applies any effect.
inline AugDistribution no_augmentation() { return AugDistribution{}; }

inline nlohmann::json to_json(const AugDistribution& d) {
  nlohmann::json j;
  for (const auto& r : aug_param_ranges()) j[std::string(r.name)] = aug_param_value(d, r.name);
  return j;
}

/// Parses the flat 13-field record. Unknown or missing fields and
/// out-of-range values are rejected.
inline AugDistribution aug_distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("augmentation distribution must be a flat object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    AugDistribution probe;
    if (!detail::aug_param_slot(probe, it.key())) {
      throw DataError("unknown field in augmentation distribution: " + it.key());
    }
  }
  AugDistribution d;
  for (const auto& r : aug_param_ranges()) {
    const std::string key(r.name);
    if (!j.contains(key) || !j[key].is_number()) {
      throw DataError("augmentation distribution missing numeric field: " + key);
    }
    *detail::aug_param_slot(d, r.name) = j[key].get<double>();
  }
  validate(d);
  return d;
}

inline AugDistribution load_aug_distribution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open distribution file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed distribution file " + path.string() + ": " + e.what());
  }
  return aug_distribution_from_json(j);
}

inline void save_aug_distribution(const std::filesystem::path& path, const AugDistribution& d) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write distribution file: " + path.string());
  out << to_json(d).dump(2) << "\n";
}

}  // namespace augsel
