// augsel/analysis.hpp
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

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "augsel/aug_params.hpp"
#include "augsel/errors.hpp"
#include "augsel/selector.hpp"

namespace augsel {

/// Shortest decimal representation that round-trips the double exactly;
/// keeps emitted files byte-stable across runs and platforms.
inline std::string format_double(double v) { return nlohmann::json(v).dump(); }

/// Per-parameter mean difference between the k best- and k worst-scoring
/// candidates of a search.
struct MEDReport {
  int k = 0;
  std::vector<std::pair<std::string, double>> table;  // canonical parameter order
  std::string provenance;

  double value(std::string_view param) const {
    for (const auto& [name, v] : table) {
      if (name == param) return v;
    }
    throw DataError("unknown augmentation parameter: " + std::string(param));
  }
};

/// Mean Extremal Difference for one parameter: (1/k) * sum over the k
/// lowest-score (best) and k highest-score (worst) candidates of
/// best_i(p) - worst_i(p).
inline double med(const SearchResult& result, int k, std::string_view param) {
  if (k < 1) throw DataError("med: k must be positive");
  if (2 * static_cast<std::size_t>(k) > result.candidates.size()) {
    throw DataError("med: k = " + std::to_string(k) + " too large for " +
                    std::to_string(result.candidates.size()) + " candidates (need 2k)");
  }
  const auto& c = result.candidates;  // sorted ascending, best first
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    acc += aug_param_value(c[static_cast<std::size_t>(i)].distribution, param) -
           aug_param_value(c[c.size() - 1 - static_cast<std::size_t>(i)].distribution, param);
  }
  return acc / static_cast<double>(k);
}

inline MEDReport med_report(const SearchResult& result, int k) {
  MEDReport report;
  report.k = k;
  report.provenance = result.run_id();
  for (const auto& range : aug_param_ranges()) {
    report.table.emplace_back(std::string(range.name), med(result, k, range.name));
  }
  return report;
}

enum class ReportFormat { kTableText, kDelimitedColumns, kStructuredRecords };

// --- MED report emission ----------------------------------------------------

inline void emit_report(const MEDReport& report, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::kTableText: {
      out << "MED report (k = " << report.k << ", run " << report.provenance << ")\n";
      out << "parameter             med\n";
      out << "-------------------------\n";
      for (const auto& [name, value] : report.table) {
        out << std::left << std::setw(18) << name << "  " << format_double(value) << "\n";
      }
      break;
    }
    case ReportFormat::kDelimitedColumns: {
      out << "parameter,med\n";
      for (const auto& [name, value] : report.table) {
        out << name << "," << format_double(value) << "\n";
      }
      break;
    }
    case ReportFormat::kStructuredRecords: {
      out << nlohmann::json{{"type", "med_config"}, {"k", report.k}, {"provenance", report.provenance}}
                 .dump()
          << "\n";
      for (const auto& [name, value] : report.table) {
        out << nlohmann::json{{"type", "med"}, {"parameter", name}, {"value", value}}.dump()
            << "\n";
      }
      break;
    }
  }
}

inline void emit_report(const MEDReport& report, ReportFormat format,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write report file: " + path.string());
  emit_report(report, format, out);
  if (!out) throw DataError("failed writing report file: " + path.string());
}

/// Reads back the structured-records form; the lossless MEDReport format.
inline MEDReport load_med_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open report file: " + path.string());
  MEDReport report;
  bool have_config = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("malformed report line in " + path.string() + ": " + e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "med_config") {
      report.k = j.at("k").get<int>();
      report.provenance = j.value("provenance", "");
      have_config = true;
    } else if (type == "med") {
      report.table.emplace_back(j.at("parameter").get<std::string>(),
                                j.at("value").get<double>());
    }
  }
  if (!have_config || report.table.empty()) {
    throw DataError("not a MED report file: " + path.string());
  }
  return report;
}

// --- SearchResult emission ---------------------------------------------------

inline void emit_report(const SearchResult& result, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::kTableText: {
      out << "search result (run " << result.run_id() << ", " << result.candidates.size()
          << " candidates, seed " << result.master_seed << ")\n";
      out << "rank  index  score\n";
      for (std::size_t rank = 0; rank < result.candidates.size(); ++rank) {
        const auto& c = result.candidates[rank];
        out << std::left << std::setw(6) << rank << std::setw(7) << c.index
            << format_double(c.score.value) << "\n";
      }
      out << "selected: candidate " << result.best().index << " with score "
          << format_double(result.best().score.value) << "\n";
      break;
    }
    case ReportFormat::kDelimitedColumns: {
      out << "index,score,seed";
      for (const auto& range : aug_param_ranges()) out << "," << range.name;
      out << "\n";
      for (const auto& c : result.candidates) {
        out << c.index << "," << format_double(c.score.value) << "," << c.seed;
        for (const auto& range : aug_param_ranges()) {
          out << "," << format_double(aug_param_value(c.distribution, range.name));
        }
        out << "\n";
      }
      break;
    }
    case ReportFormat::kStructuredRecords:
      write_search_result(out, result);
      break;
  }
}

inline void emit_report(const SearchResult& result, ReportFormat format,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write report file: " + path.string());
  emit_report(result, format, out);
  if (!out) throw DataError("failed writing report file: " + path.string());
}

}  // namespace augsel
