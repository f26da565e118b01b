// tests/test_fft.cpp
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

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <numbers>
#include <vector>

#include "augsel/fft.hpp"
#include "augsel/rng.hpp"

using namespace augsel;

namespace {

// O(n^2) reference transform
std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(k * t) / static_cast<double>(n);
      acc += x[t] * std::complex<double>{std::cos(ang), std::sin(ang)};
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("fft matches a naive DFT") {
  Rng rng(7);
  for (std::size_t n : {2u, 8u, 64u, 256u}) {
    std::vector<std::complex<double>> x(n);
    for (auto& c : x) c = {uniform_real(rng, -1.0, 1.0), uniform_real(rng, -1.0, 1.0)};
    auto expected = naive_dft(x);
    auto actual = x;
    FftPlan plan(n);
    plan.forward(actual);
    for (std::size_t k = 0; k < n; ++k) {
      REQUIRE(std::abs(actual[k] - expected[k]) < 1e-9 * static_cast<double>(n));
    }
  }
}

TEST_CASE("inverse fft round-trips") {
  Rng rng(11);
  std::vector<std::complex<double>> x(128);
  for (auto& c : x) c = {uniform_real(rng, -1.0, 1.0), 0.0};
  auto a = x;
  FftPlan plan(x.size());
  plan.forward(a);
  plan.inverse(a);
  for (std::size_t i = 0; i < x.size(); ++i) {
    REQUIRE(std::abs(a[i] - x[i]) < 1e-12);
  }
}

TEST_CASE("fft convolution matches direct convolution") {
  Rng rng(13);
  std::vector<double> a(37), b(23);
  for (auto& v : a) v = uniform_real(rng, -1.0, 1.0);
  for (auto& v : b) v = uniform_real(rng, -1.0, 1.0);

  std::vector<double> direct(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) direct[i + j] += a[i] * b[j];
  }

  const auto fast = fft_convolve(a, b);
  REQUIRE(fast.size() == direct.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    REQUIRE(std::abs(fast[i] - direct[i]) < 1e-10);
  }
}

TEST_CASE("next_pow2") {
  REQUIRE(next_pow2(1) == 1);
  REQUIRE(next_pow2(2) == 2);
  REQUIRE(next_pow2(3) == 4);
  REQUIRE(next_pow2(512) == 512);
  REQUIRE(next_pow2(513) == 1024);
}
