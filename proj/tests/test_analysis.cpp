// tests/test_analysis.cpp
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

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "augsel/analysis.hpp"
#include "augsel/rng.hpp"
#include "test_util.hpp"

using namespace augsel;
using augsel::testing::TempDir;

namespace {

/// Unsorted candidate soup; scores attached after the fact.
SearchResult make_result(const std::vector<double>& scores, Rng& rng) {
  SearchResult r;
  r.n_candidates = scores.size();
  r.master_seed = 7;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    ScoredCandidate c;
    c.distribution = sample_distribution(rng);
    c.score.value = scores[i];
    c.index = i;
    c.seed = derive_seed(7, i);
    r.candidates.push_back(std::move(c));
  }
  std::stable_sort(r.candidates.begin(), r.candidates.end(),
                   [](const auto& a, const auto& b) { return a.score.value < b.score.value; });
  return r;
}

/// Brute-force MED: re-sorts the raw candidate list from scratch and applies
/// the definition term by term.
double brute_med(const SearchResult& r, int k, std::string_view param) {
  std::vector<ScoredCandidate> raw = r.candidates;
  std::stable_sort(raw.begin(), raw.end(),
                   [](const auto& a, const auto& b) { return a.score.value < b.score.value; });
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    acc += aug_param_value(raw[static_cast<std::size_t>(i)].distribution, param) -
           aug_param_value(raw[raw.size() - 1 - static_cast<std::size_t>(i)].distribution, param);
  }
  return acc / static_cast<double>(k);
}

}  // namespace

TEST_CASE("med with k=1 is the best-minus-worst difference") {
  Rng rng(1);
  SearchResult r = make_result({0.1, 0.9}, rng);
  r.candidates[0].distribution.p_clip = 0.8;
  r.candidates[1].distribution.p_clip = 0.3;
  REQUIRE(med(r, 1, "p_clip") == 0.5);
}

TEST_CASE("reversing the score order negates every med value") {
  Rng rng(2);
  std::vector<double> scores;
  for (int i = 0; i < 40; ++i) scores.push_back(uniform_real(rng, -1.0, 1.0));
  const SearchResult r = make_result(scores, rng);

  SearchResult reversed = r;
  for (auto& c : reversed.candidates) c.score.value = -c.score.value;
  std::stable_sort(reversed.candidates.begin(), reversed.candidates.end(),
                   [](const auto& a, const auto& b) { return a.score.value < b.score.value; });

  for (const auto& range : aug_param_ranges()) {
    for (int k : {1, 5, 10}) {
      REQUIRE(med(reversed, k, range.name) == -med(r, k, range.name));
    }
  }
}

TEST_CASE("med matches the brute-force definition on random search results") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> scores;
    for (int i = 0; i < 100; ++i) scores.push_back(uniform_real(rng, 0.0, 10.0));
    const SearchResult r = make_result(scores, rng);
    for (int k : {1, 5, 10}) {
      for (const auto& range : aug_param_ranges()) {
        const double ours = med(r, k, range.name);
        const double brute = brute_med(r, k, range.name);
        REQUIRE(std::abs(ours - brute) <= 1e-12);
      }
    }
  }
}

TEST_CASE("identical candidates give an all-zero table") {
  Rng rng(4);
  SearchResult r = make_result(std::vector<double>(20, 1.0), rng);
  const AugDistribution fixed = r.candidates[0].distribution;
  for (auto& c : r.candidates) c.distribution = fixed;
  const MEDReport report = med_report(r, 10);
  REQUIRE(report.table.size() == 13);
  for (const auto& [name, value] : report.table) REQUIRE(value == 0.0);
}

TEST_CASE("k = 10 on 100 candidates yields the full 13-entry table") {
  Rng rng(5);
  std::vector<double> scores;
  for (int i = 0; i < 100; ++i) scores.push_back(uniform_real(rng, 0.0, 1.0));
  const SearchResult r = make_result(scores, rng);
  const MEDReport report = med_report(r, 10);
  REQUIRE(report.table.size() == 13);
  REQUIRE(report.k == 10);
  // canonical order
  for (std::size_t i = 0; i < report.table.size(); ++i) {
    REQUIRE(report.table[i].first == aug_param_ranges()[i].name);
  }
}

TEST_CASE("oversized k and unknown parameters are rejected") {
  Rng rng(6);
  const SearchResult r = make_result({0.1, 0.2, 0.3, 0.4}, rng);
  REQUIRE_THROWS_MATCHES(med(r, 3, "p_clip"), DataError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("too large")));
  REQUIRE_THROWS_AS(med(r, 1, "p_nonsense"), DataError);
  REQUIRE_NOTHROW(med(r, 2, "p_clip"));
}

TEST_CASE("rescaling scores by a positive factor leaves med unchanged") {
  Rng rng(7);
  std::vector<double> scores;
  for (int i = 0; i < 30; ++i) scores.push_back(uniform_real(rng, 0.0, 1.0));
  const SearchResult r = make_result(scores, rng);

  SearchResult scaled = r;
  for (auto& c : scaled.candidates) c.score.value = 42.0 * c.score.value + 3.0;
  std::stable_sort(scaled.candidates.begin(), scaled.candidates.end(),
                   [](const auto& a, const auto& b) { return a.score.value < b.score.value; });
  for (const auto& range : aug_param_ranges()) {
    REQUIRE(med(scaled, 5, range.name) == med(r, 5, range.name));
  }
}

TEST_CASE("delimited-columns report is a header plus 13 rows") {
  Rng rng(8);
  const SearchResult r = make_result({0.1, 0.2, 0.3, 0.4}, rng);
  const MEDReport report = med_report(r, 2);
  std::ostringstream out;
  emit_report(report, ReportFormat::kDelimitedColumns, out);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 14);
  REQUIRE(lines[0] == "parameter,med");
  REQUIRE(lines[1].rfind("p_timedrop,", 0) == 0);
}

TEST_CASE("med report round-trips through structured records") {
  Rng rng(9);
  std::vector<double> scores;
  for (int i = 0; i < 24; ++i) scores.push_back(uniform_real(rng, 0.0, 1.0));
  const SearchResult r = make_result(scores, rng);
  const MEDReport report = med_report(r, 7);

  TempDir dir("medio");
  const auto path = dir.path() / "med.jsonl";
  emit_report(report, ReportFormat::kStructuredRecords, path);
  const MEDReport loaded = load_med_report(path);
  REQUIRE(loaded.k == report.k);
  REQUIRE(loaded.provenance == report.provenance);
  REQUIRE(loaded.table == report.table);
}

TEST_CASE("search result emission counts records correctly") {
  Rng rng(10);
  const SearchResult r = make_result({0.5, 0.25, 0.75}, rng);

  std::ostringstream records;
  emit_report(r, ReportFormat::kStructuredRecords, records);
  std::istringstream in(records.str());
  std::string line;
  int config = 0, candidates = 0, selected = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    const std::string type = j.at("type");
    if (type == "config") ++config;
    if (type == "candidate") ++candidates;
    if (type == "selected") ++selected;
  }
  REQUIRE(config == 1);
  REQUIRE(candidates == 3);
  REQUIRE(selected == 1);

  std::ostringstream csv;
  emit_report(r, ReportFormat::kDelimitedColumns, csv);
  std::istringstream csv_in(csv.str());
  int csv_lines = 0;
  while (std::getline(csv_in, line)) ++csv_lines;
  REQUIRE(csv_lines == 1 + 3);
}

TEST_CASE("unwritable paths fail with the path in the message") {
  Rng rng(11);
  const SearchResult r = make_result({0.1, 0.2}, rng);
  const MEDReport report = med_report(r, 1);
  REQUIRE_THROWS_MATCHES(
      emit_report(report, ReportFormat::kTableText, "/nonexistent_dir/report.txt"), DataError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("/nonexistent_dir/report.txt")));
}

TEST_CASE("table text lists every parameter") {
  Rng rng(12);
  const SearchResult r = make_result({0.4, 0.3, 0.2, 0.1}, rng);
  const MEDReport report = med_report(r, 2);
  std::ostringstream out;
  emit_report(report, ReportFormat::kTableText, out);
  const std::string text = out.str();
  for (const auto& range : aug_param_ranges()) {
    REQUIRE(text.find(std::string(range.name)) != std::string::npos);
  }
}
