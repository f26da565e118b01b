// tests/test_corpus.cpp
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

#include <cstdint>
#include <fstream>
#include <set>
#include <string>

#include "augsel/dataset.hpp"
#include "augsel/errors.hpp"
#include "augsel/rng.hpp"
#include "augsel/waveform.hpp"
#include "test_util.hpp"

using namespace augsel;
using augsel::testing::TempDir;

namespace {

void write_text(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

}  // namespace

TEST_CASE("manifest with three lines and two labels") {
  TempDir dir("manifest");
  const auto path = dir.path() / "manifest.jsonl";
  write_text(path,
             R"({"id":"u1","path":"a.wav","label":"en"})" "\n"
             R"({"id":"u2","path":"b.wav","label":"fr"})" "\n"
             R"({"id":"u3","path":"c.wav","label":"en"})" "\n");
  const Dataset ds = load_manifest(path);
  REQUIRE(ds.entries.size() == 3);
  REQUIRE(ds.label_vocabulary == std::set<std::string>{"en", "fr"});
  REQUIRE(ds.entries[0].id == "u1");
  REQUIRE(ds.entries[2].label == "en");
  // relative paths resolve against the manifest directory
  REQUIRE(ds.entries[1].path == (dir.path() / "b.wav").string());
}

TEST_CASE("empty manifest gives an empty dataset") {
  TempDir dir("manifest_empty");
  const auto path = dir.path() / "manifest.jsonl";
  write_text(path, "");
  const Dataset ds = load_manifest(path);
  REQUIRE(ds.entries.empty());
  REQUIRE(ds.label_vocabulary.empty());
}

TEST_CASE("duplicate id is rejected by name") {
  TempDir dir("manifest_dup");
  const auto path = dir.path() / "manifest.jsonl";
  write_text(path,
             R"({"id":"u1","path":"a.wav","label":"en"})" "\n"
             R"({"id":"u1","path":"b.wav","label":"fr"})" "\n");
  REQUIRE_THROWS_MATCHES(load_manifest(path), DataError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("\"u1\"")));
}

TEST_CASE("malformed line reports its line number") {
  TempDir dir("manifest_bad");
  const auto path = dir.path() / "manifest.jsonl";
  write_text(path,
             R"({"id":"u1","path":"a.wav","label":"en"})" "\n"
             "this is not json\n");
  REQUIRE_THROWS_MATCHES(load_manifest(path), DataError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("line 2")));
}

TEST_CASE("missing manifest file") {
  REQUIRE_THROWS_AS(load_manifest("/nonexistent/manifest.jsonl"), DataError);
}

TEST_CASE("empty label is rejected") {
  TempDir dir("manifest_nolabel");
  const auto path = dir.path() / "manifest.jsonl";
  write_text(path, R"({"id":"u1","path":"a.wav","label":""})" "\n");
  REQUIRE_THROWS_AS(load_manifest(path), DataError);
}

TEST_CASE("wav files round-trip bit-exactly") {
  TempDir dir("wav");
  Rng rng(99);
  Waveform w;
  w.sample_rate = 16000;
  w.samples.resize(4321);
  for (auto& s : w.samples) {
    const auto raw = static_cast<std::int16_t>(uniform_index(rng, 65536) - 32768);
    s = static_cast<double>(raw) / 32768.0;
  }
  const auto path = dir.path() / "roundtrip.wav";
  save_wav(path, w);
  const Waveform back = load_wav(path);
  REQUIRE(back.sample_rate == 16000);
  REQUIRE(back.samples == w.samples);
}

TEST_CASE("silence and full-scale samples decode with the 1/32768 scale") {
  TempDir dir("wav_scale");
  Waveform w;
  w.sample_rate = 16000;
  w.samples = {0.0, 32767.0 / 32768.0, -1.0};
  const auto path = dir.path() / "scale.wav";
  save_wav(path, w);
  const Waveform back = load_wav(path);
  REQUIRE(back.samples[0] == 0.0);
  REQUIRE(back.samples[1] == 32767.0 / 32768.0);
  REQUIRE(back.samples[2] == -1.0);
}

TEST_CASE("stereo wav is rejected") {
  TempDir dir("wav_stereo");
  const auto path = dir.path() / "stereo.wav";
  // hand-built 2-channel header with a handful of frames
  std::string bytes;
  bytes += "RIFF";
  detail::append_u32le(bytes, 36 + 8);
  bytes += "WAVEfmt ";
  detail::append_u32le(bytes, 16);
  detail::append_u16le(bytes, 1);
  detail::append_u16le(bytes, 2);  // stereo
  detail::append_u32le(bytes, 16000);
  detail::append_u32le(bytes, 16000 * 4);
  detail::append_u16le(bytes, 4);
  detail::append_u16le(bytes, 16);
  bytes += "data";
  detail::append_u32le(bytes, 8);
  for (int i = 0; i < 8; ++i) bytes.push_back(0);
  write_text(path, bytes);
  REQUIRE_THROWS_MATCHES(load_wav(path), DataError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("channel")));
}

TEST_CASE("non-wav bytes are rejected") {
  TempDir dir("wav_garbage");
  const auto path = dir.path() / "garbage.wav";
  write_text(path, "definitely not RIFF data");
  REQUIRE_THROWS_AS(load_wav(path), DataError);
}

TEST_CASE("cut of an exact-length waveform is the waveform itself") {
  const Waveform w = testing::noise_wave(1, 1.0);
  Rng rng(5);
  const Waveform seg = cut_random_segment(w, 1.0, rng);
  REQUIRE(seg.samples == w.samples);
}

TEST_CASE("cut from a longer waveform is a contiguous slice of target length") {
  const Waveform w = testing::noise_wave(2, 2.0);
  Rng rng(5);
  const Waveform seg = cut_random_segment(w, 1.0, rng);
  REQUIRE(seg.samples.size() == 16000);
  // find the slice and verify contiguity
  bool found = false;
  for (std::size_t off = 0; off + 16000 <= w.samples.size(); ++off) {
    if (w.samples[off] == seg.samples[0] &&
        std::equal(seg.samples.begin(), seg.samples.end(), w.samples.begin() + off)) {
      found = true;
      break;
    }
  }
  REQUIRE(found);
}

TEST_CASE("short waveforms are zero-left-padded") {
  const Waveform w = testing::noise_wave(3, 0.5);
  Rng rng(5);
  const Waveform seg = cut_random_segment(w, 1.0, rng);
  REQUIRE(seg.samples.size() == 16000);
  for (std::size_t i = 0; i < 8000; ++i) REQUIRE(seg.samples[i] == 0.0);
  REQUIRE(std::equal(w.samples.begin(), w.samples.end(), seg.samples.begin() + 8000));
}

TEST_CASE("cut length is always round(duration * rate)") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const double duration = uniform_real(rng, 0.05, 1.5);
    const auto n = static_cast<std::size_t>(1 + uniform_index(rng, 40000));
    Waveform w;
    w.sample_rate = 16000;
    w.samples.assign(n, 0.25);
    const Waveform seg = cut_random_segment(w, duration, rng);
    REQUIRE(seg.samples.size() ==
            static_cast<std::size_t>(std::llround(duration * 16000.0)));
    REQUIRE(seg.sample_rate == 16000);
  }
}

TEST_CASE("cut is deterministic under a fixed seed") {
  const Waveform w = testing::noise_wave(4, 3.0);
  Rng rng_a(123), rng_b(123);
  const Waveform a = cut_random_segment(w, 1.0, rng_a);
  const Waveform b = cut_random_segment(w, 1.0, rng_b);
  REQUIRE(a.samples == b.samples);
}
