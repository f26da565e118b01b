// augsel/trainer.hpp
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

#include <string>
#include <vector>

#include "augsel/contrastive.hpp"
#include "augsel/dataset.hpp"
#include "augsel/errors.hpp"
#include "augsel/rng.hpp"
#include "augsel/waveform.hpp"

namespace augsel {

struct ToyTrainOptions {
  int batch_size = 8;
  double learning_rate = 1e-2;
  EncoderConfig encoder;
  std::uint64_t seed = 1;
};

/// Desk-scale contrastive training loop. Per step: draw batch_size distinct
/// origin samples, make an augmented pair from each, take one SGD step.
/// The data-sampling RNG state is exposed so checkpoints can resume with the
/// next step bit-identical to an uninterrupted run.
class ToyTrainer {
 public:
  ToyTrainer(const Dataset& ds, const AugDistribution& dist, const ToyTrainOptions& opts)
      : dist_(dist), opts_(opts), rng_(derive_seed(opts.seed, 1)) {
    if (ds.entries.empty()) throw DataError("training needs a nonempty dataset");
    if (opts.batch_size < 1) throw DataError("batch size must be positive");
    if (static_cast<std::size_t>(opts.batch_size) > ds.entries.size()) {
      throw DataError("batch size " + std::to_string(opts.batch_size) +
                      " exceeds dataset size " + std::to_string(ds.entries.size()));
    }
    waveforms_.reserve(ds.entries.size());
    ids_.reserve(ds.entries.size());
    for (const auto& entry : ds.entries) {
      Waveform w = load_wav(entry.path);
      if (w.sample_rate != kMelSampleRate) {
        throw DataError("dataset audio must be " + std::to_string(kMelSampleRate) + " Hz; " +
                        entry.path + " is " + std::to_string(w.sample_rate) + " Hz");
      }
      waveforms_.push_back(std::move(w));
      ids_.push_back(entry.id);
    }
    params_ = init_encoder_params(opts.encoder, derive_seed(opts.seed, 0));
  }

  void restore(const EncoderParams& params, const std::string& rng_state, std::uint64_t step) {
    params_ = params;
    rng_.load_state(rng_state);
    step_ = step;
  }

  /// Runs one step and returns its pre-update loss.
  double run_step() {
    std::vector<std::size_t> order(waveforms_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto batch = static_cast<std::size_t>(opts_.batch_size);
    for (std::size_t i = 0; i < batch; ++i) {
      const std::size_t j = i + uniform_index(rng_, order.size() - i);
      std::swap(order[i], order[j]);
    }
    std::vector<SegmentPair> pairs;
    pairs.reserve(batch);
    for (std::size_t i = 0; i < batch; ++i) {
      pairs.push_back(make_training_pair(waveforms_[order[i]], dist_, rng_, ids_[order[i]]));
    }
    StepResult result = train_step(params_, pairs, opts_.learning_rate);
    params_ = std::move(result.params);
    ++step_;
    return result.loss;
  }

  const EncoderParams& params() const { return params_; }
  std::uint64_t step() const { return step_; }
  std::string rng_state() const { return rng_.save_state(); }
  int batch_size() const { return opts_.batch_size; }

 private:
  AugDistribution dist_;
  ToyTrainOptions opts_;
  Rng rng_;
  std::vector<Waveform> waveforms_;
  std::vector<std::string> ids_;
  EncoderParams params_;
  std::uint64_t step_ = 0;
};

}  // namespace augsel
