// augsel/dataset.hpp
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
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "augsel/errors.hpp"

namespace augsel {

struct DatasetEntry {
  std::string id;
  std::string path;   // resolved against the manifest directory at load time
  std::string label;  // downstream class label
};

struct Dataset {
  std::vector<DatasetEntry> entries;
  std::set<std::string> label_vocabulary;

  std::size_t size() const { return entries.size(); }
};

/// Loads a JSONL manifest: one object per line with string fields
/// "id", "path", "label". Relative audio paths are resolved against the
/// manifest's parent directory. Blank lines are ignored.
inline Dataset load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path.string());
  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

  Dataset ds;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("malformed manifest line " + std::to_string(line_no) + " in " +
                      path.string() + ": " + e.what());
    }
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("path") ||
        !rec.contains("label") || !rec["id"].is_string() || !rec["path"].is_string() ||
        !rec["label"].is_string()) {
      throw DataError("malformed manifest line " + std::to_string(line_no) + " in " +
                      path.string() + ": need string fields id, path, label");
    }
    DatasetEntry entry;
    entry.id = rec["id"].get<std::string>();
    entry.label = rec["label"].get<std::string>();
    if (entry.label.empty()) {
      throw DataError("empty label at manifest line " + std::to_string(line_no) + " in " +
                      path.string());
    }
    std::filesystem::path audio = rec["path"].get<std::string>();
    entry.path = audio.is_absolute() ? audio.string() : (base / audio).string();
    if (!seen_ids.insert(entry.id).second) {
      throw DataError("duplicate id \"" + entry.id + "\" at manifest line " +
                      std::to_string(line_no) + " in " + path.string());
    }
    ds.label_vocabulary.insert(entry.label);
    ds.entries.push_back(std::move(entry));
  }
  return ds;
}

}  // namespace augsel
