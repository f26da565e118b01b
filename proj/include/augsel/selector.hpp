// augsel/selector.hpp
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
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "augsel/aug_params.hpp"
#include "augsel/dataset.hpp"
#include "augsel/effects.hpp"
#include "augsel/errors.hpp"
#include "augsel/kernels.hpp"
#include "augsel/mel.hpp"
#include "augsel/rng.hpp"
#include "augsel/waveform.hpp"

namespace augsel {

/// Augmented views of a dataset: pooled log-Mel features X', per-view origin
/// ids Z (the pretext labels) and downstream labels Y.
struct ViewSet {
  std::vector<Eigen::VectorXd> features;
  std::vector<std::string> origin_ids;
  std::vector<std::string> downstream_labels;

  std::size_t size() const { return features.size(); }
};

struct ScoringConfig {
  int n_views = 20;
  double epsilon = 1e-3;
  std::size_t max_origins = 100;
  int n_workers = 1;
};

/// Cuts n_views random 1 s segments from every sample, applies an
/// independently sampled chain to each, and pools log-Mel features.
/// All audio must be 16 kHz mono.
template <RandomSource R>
ViewSet generate_views(const Dataset& ds, const AugDistribution& d, int n_views, R& rng) {
  if (n_views < 1) throw DataError("generate_views: need at least one view per sample");
  if (ds.entries.empty()) throw DataError("generate_views: empty dataset");
  ViewSet views;
  views.features.reserve(ds.entries.size() * static_cast<std::size_t>(n_views));
  views.origin_ids.reserve(views.features.capacity());
  views.downstream_labels.reserve(views.features.capacity());
  for (const auto& entry : ds.entries) {
    const Waveform w = load_wav(entry.path);
    if (w.sample_rate != kMelSampleRate) {
      throw DataError("dataset audio must be " + std::to_string(kMelSampleRate) + " Hz; " +
                      entry.path + " is " + std::to_string(w.sample_rate) + " Hz");
    }
    for (int v = 0; v < n_views; ++v) {
      const Waveform segment = cut_random_segment(w, kSegmentSeconds, rng);
      const AugChain chain = sample_chain(d, rng);
      const Waveform augmented = apply_chain(chain, segment);
      views.features.push_back(pool_mean(mel_spectrogram(augmented)));
      views.origin_ids.push_back(entry.id);
      views.downstream_labels.push_back(entry.label);
    }
  }
  return views;
}

namespace detail {

template <RandomSource R>
Dataset subsample_origins(const Dataset& ds, std::size_t max_origins, R& rng) {
  if (ds.entries.size() <= max_origins) return ds;
  std::vector<std::size_t> indices(ds.entries.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  for (std::size_t i = 0; i < max_origins; ++i) {  // partial Fisher-Yates
    const std::size_t j = i + uniform_index(rng, indices.size() - i);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(max_origins);
  std::sort(indices.begin(), indices.end());
  Dataset sub;
  for (std::size_t i : indices) {
    sub.entries.push_back(ds.entries[i]);
    sub.label_vocabulary.insert(ds.entries[i].label);
  }
  return sub;
}

}  // namespace detail

/// Scores one augmentation distribution: Gaussian kernel on view features
/// (median-heuristic bandwidth), delta kernels on origin ids and labels,
/// conditional dependence of features and origins given labels. Lower means
/// the pretext labels add less information beyond the downstream labels.
template <RandomSource R>
DependenceScore score_distribution(const Dataset& ds, const AugDistribution& d,
                                   const ScoringConfig& cfg, R& rng) {
  if (ds.entries.size() < 2) throw DataError("scoring needs at least two samples");
  if (ds.label_vocabulary.size() < 2) {
    throw DataError("scoring needs at least two distinct downstream labels; conditioning on a "
                    "single label is vacuous");
  }
  const Dataset scored = detail::subsample_origins(ds, cfg.max_origins, rng);
  const ViewSet views = generate_views(scored, d, cfg.n_views, rng);
  const double sigma = median_heuristic(views.features);
  const GramMatrix gx = gaussian_gram(views.features, sigma);
  const GramMatrix gz = delta_gram(views.origin_ids);
  const GramMatrix gy = delta_gram(views.downstream_labels);
  return conditional_dependence(gx, gz, gy, cfg.epsilon);
}

struct ScoredCandidate {
  AugDistribution distribution;
  DependenceScore score;
  std::uint64_t seed = 0;  // per-candidate seed, derived from the master seed
  std::size_t index = 0;   // sampling order, used for deterministic tie-breaks
};

/// Candidates sorted ascending by score (ties broken by sampling order);
/// carries the configuration that makes the scores comparable.
struct SearchResult {
  std::vector<ScoredCandidate> candidates;
  ScoringConfig config;
  std::uint64_t master_seed = 0;
  std::size_t n_candidates = 0;
  std::string manifest_path;

  const ScoredCandidate& best() const {
    if (candidates.empty()) throw DataError("empty search result");
    return candidates.front();
  }

  /// Deterministic identifier for provenance lines in derived reports.
  std::string run_id() const {
    const std::uint64_t h =
        derive_seed(derive_seed(master_seed, n_candidates),
                    static_cast<std::uint64_t>(config.n_views) * 1000003u +
                        static_cast<std::uint64_t>(config.max_origins));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
  }
};

/// Random search over augmentation distributions: samples n_candidates
/// parametrizations with per-candidate seeds derived from master_seed,
/// scores each, and returns them sorted ascending by score. A candidate
/// whose scoring fails aborts the whole search (silent skipping would bias
/// the argmin). Scoring runs on config.n_workers threads; results do not
/// depend on scheduling.
inline SearchResult random_search(const Dataset& ds, std::size_t n_candidates,
                                  const ScoringConfig& cfg, std::uint64_t master_seed) {
  if (n_candidates < 1) throw DataError("random_search: need at least one candidate");

  std::vector<std::optional<ScoredCandidate>> slots(n_candidates);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_index = 0;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_candidates || failed.load()) return;
      try {
        const std::uint64_t seed = derive_seed(master_seed, i);
        Rng rng(seed);
        ScoredCandidate cand;
        cand.distribution = sample_distribution(rng);
        cand.score = score_distribution(ds, cand.distribution, cfg, rng);
        cand.seed = seed;
        cand.index = i;
        slots[i] = std::move(cand);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error || i < first_error_index) {
          first_error = std::current_exception();
          first_error_index = i;
        }
        failed.store(true);
        return;
      }
    }
  };

  const std::size_t n_threads =
      std::min<std::size_t>(std::max(cfg.n_workers, 1), n_candidates);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (first_error) {
    const std::string prefix = "scoring candidate " + std::to_string(first_error_index) + ": ";
    try {
      std::rethrow_exception(first_error);
    } catch (const NumericError& e) {
      throw NumericError(prefix + e.what());
    } catch (const std::exception& e) {
      throw DataError(prefix + e.what());
    }
  }

  SearchResult result;
  result.config = cfg;
  result.master_seed = master_seed;
  result.n_candidates = n_candidates;
  result.candidates.reserve(n_candidates);
  for (auto& slot : slots) result.candidates.push_back(std::move(*slot));
  std::stable_sort(result.candidates.begin(), result.candidates.end(),
                   [](const ScoredCandidate& a, const ScoredCandidate& b) {
                     return a.score.value < b.score.value;
                   });
  return result;
}

// --- Result file format (JSONL) --------------------------------------------

namespace detail {

inline nlohmann::json search_config_json(const SearchResult& r) {
  return nlohmann::json{{"type", "config"},
                        {"format", "augsel-search-result"},
                        {"version", 1},
                        {"run_id", r.run_id()},
                        {"manifest", r.manifest_path},
                        {"master_seed", r.master_seed},
                        {"n_candidates", r.n_candidates},
                        {"n_views", r.config.n_views},
                        {"epsilon", r.config.epsilon},
                        {"max_origins", r.config.max_origins}};
}

inline nlohmann::json candidate_json(const ScoredCandidate& c, const char* type) {
  return nlohmann::json{{"type", type},
                        {"index", c.index},
                        {"seed", c.seed},
                        {"score", c.score.value},
                        {"params", to_json(c.distribution)}};
}

}  // namespace detail

inline void write_search_result(std::ostream& out, const SearchResult& r) {
  out << detail::search_config_json(r).dump() << "\n";
  for (const auto& c : r.candidates) {
    out << detail::candidate_json(c, "candidate").dump() << "\n";
  }
  out << detail::candidate_json(r.best(), "selected").dump() << "\n";
}

inline void save_search_result(const std::filesystem::path& path, const SearchResult& r) {
  std::ofstream out(path, std::ios::binary);  // binary keeps line endings platform-independent
  if (!out) throw DataError("cannot write result file: " + path.string());
  write_search_result(out, r);
  if (!out) throw DataError("failed writing result file: " + path.string());
}

inline SearchResult load_search_result(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open result file: " + path.string());
  SearchResult r;
  bool have_config = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("malformed result line " + std::to_string(line_no) + " in " + path.string() +
                      ": " + e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "config") {
      r.master_seed = j.at("master_seed").get<std::uint64_t>();
      r.n_candidates = j.at("n_candidates").get<std::size_t>();
      r.manifest_path = j.value("manifest", "");
      r.config.n_views = j.at("n_views").get<int>();
      r.config.epsilon = j.at("epsilon").get<double>();
      r.config.max_origins = j.at("max_origins").get<std::size_t>();
      have_config = true;
    } else if (type == "candidate") {
      ScoredCandidate c;
      c.index = j.at("index").get<std::size_t>();
      c.seed = j.at("seed").get<std::uint64_t>();
      c.score.value = j.at("score").get<double>();
      c.score.epsilon = have_config ? r.config.epsilon : 0.0;
      c.distribution = aug_distribution_from_json(j.at("params"));
      r.candidates.push_back(std::move(c));
    } else if (type == "selected") {
      // redundant with the first candidate record; validated below
    } else {
      throw DataError("unknown record type '" + type + "' at result line " +
                      std::to_string(line_no) + " in " + path.string());
    }
  }
  if (!have_config) throw DataError("result file missing config record: " + path.string());
  if (r.candidates.empty()) throw DataError("result file has no candidates: " + path.string());
  std::stable_sort(r.candidates.begin(), r.candidates.end(),
                   [](const ScoredCandidate& a, const ScoredCandidate& b) {
                     return a.score.value < b.score.value;
                   });
  return r;
}

}  // namespace augsel
