// augsel/rng.hpp
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

#include <cassert>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

namespace augsel {

/// Anything that yields uniform doubles in [0, 1). Effects and samplers are
/// templated on this so tests can inject scripted sources.
template <class R>
concept RandomSource = requires(R r) {
  { r.uniform01() } -> std::convertible_to<double>;
};

/// SplitMix64 finalizer; used for seed derivation.
inline constexpr std::uint64_t split_mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic per-stream seed from a master seed, so streams (search
/// candidates, workers) can run in any order with reproducible results.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return split_mix64(split_mix64(master) ^
                     split_mix64(stream * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull));
}

/// Seeded random source used throughout the toolkit.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the standard.
/// The uniform mapping below is spelled out by hand because
/// std::uniform_real_distribution is implementation-defined and would break
/// byte-identical output files across standard libraries.
class Rng {
 public:
  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Engine state as text; std::mt19937_64 round-trips exactly through its
  /// stream operators, which is what checkpoint resume relies on.
  std::string save_state() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
  }

  void load_state(const std::string& state) {
    std::istringstream is(state);
    is >> engine_;
  }

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

template <RandomSource R>
double uniform_real(R& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform01();
}

/// Uniform index in [0, n). n must be positive.
template <RandomSource R>
std::size_t uniform_index(R& rng, std::size_t n) {
  assert(n > 0);
  auto idx = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(n));
  return idx < n ? idx : n - 1;
}

/// Standard normal via Box-Muller. Consumes exactly two uniform draws.
template <RandomSource R>
double gaussian(R& rng) {
  const double u1 =rng.uniform01();
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace augsel
