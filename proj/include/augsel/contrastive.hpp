// augsel/contrastive.hpp
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
#include <cmath>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "augsel/aug_params.hpp"
#include "augsel/effects.hpp"
#include "augsel/errors.hpp"
#include "augsel/mel.hpp"
#include "augsel/rng.hpp"
#include "augsel/waveform.hpp"

namespace augsel {

inline constexpr double kLayerNormStdFloor = 1e-5;

struct EncoderConfig {
  int input_dim = kMelBands;
  int hidden_dim = 128;
  int embed_dim = 64;  // h, the representation used downstream
  int proj_dim = 32;   // v, the contrastive projection
};

/// All trainable tensors: a two-layer feed-forward encoder on pooled log-Mel
/// input, a projection head (dense + layer normalization + tanh), and the
/// bilinear similarity matrix W.
struct EncoderParams {
  Eigen::MatrixXd enc_w1;      // hidden x input
  Eigen::VectorXd enc_b1;      // hidden
  Eigen::MatrixXd enc_w2;      // embed x hidden
  Eigen::VectorXd enc_b2;      // embed
  Eigen::MatrixXd proj_w;      // proj x embed
  Eigen::VectorXd proj_b;      // proj
  Eigen::VectorXd norm_gain;   // proj
  Eigen::VectorXd norm_offset; // proj
  Eigen::MatrixXd bilinear_w;  // proj x proj

  EncoderConfig config() const {
    return {static_cast<int>(enc_w1.cols()), static_cast<int>(enc_w1.rows()),
            static_cast<int>(enc_w2.rows()), static_cast<int>(proj_w.rows())};
  }

  EncoderParams zeros_like() const {
    EncoderParams z;
    z.enc_w1 = Eigen::MatrixXd::Zero(enc_w1.rows(), enc_w1.cols());
    z.enc_b1 = Eigen::VectorXd::Zero(enc_b1.size());
    z.enc_w2 = Eigen::MatrixXd::Zero(enc_w2.rows(), enc_w2.cols());
    z.enc_b2 = Eigen::VectorXd::Zero(enc_b2.size());
    z.proj_w = Eigen::MatrixXd::Zero(proj_w.rows(), proj_w.cols());
    z.proj_b = Eigen::VectorXd::Zero(proj_b.size());
    z.norm_gain = Eigen::VectorXd::Zero(norm_gain.size());
    z.norm_offset = Eigen::VectorXd::Zero(norm_offset.size());
    z.bilinear_w = Eigen::MatrixXd::Zero(bilinear_w.rows(), bilinear_w.cols());
    return z;
  }

  void axpy(double alpha, const EncoderParams& other) {
    enc_w1 += alpha * other.enc_w1;
    enc_b1 += alpha * other.enc_b1;
    enc_w2 += alpha * other.enc_w2;
    enc_b2 += alpha * other.enc_b2;
    proj_w += alpha * other.proj_w;
    proj_b += alpha * other.proj_b;
    norm_gain += alpha * other.norm_gain;
    norm_offset += alpha * other.norm_offset;
    bilinear_w += alpha * other.bilinear_w;
  }

  bool operator==(const EncoderParams& o) const {
    const auto eq = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
      return a.rows() == b.rows() && a.cols() == b.cols() &&
             std::equal(a.data(), a.data() + a.size(), b.data());
    };
    return eq(enc_w1, o.enc_w1) && eq(enc_b1, o.enc_b1) && eq(enc_w2, o.enc_w2) &&
           eq(enc_b2, o.enc_b2) && eq(proj_w, o.proj_w) && eq(proj_b, o.proj_b) &&
           eq(norm_gain, o.norm_gain) && eq(norm_offset, o.norm_offset) &&
           eq(bilinear_w, o.bilinear_w);
  }
};

namespace detail {

template <RandomSource R>
Eigen::MatrixXd uniform_matrix(Eigen::Index rows, Eigen::Index cols, double scale, R& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = uniform_real(rng, -scale, scale);
  }
  return m;
}

}  // namespace detail

/// Uniform fan-in-scaled weights, unit normalization gain, zero offsets, and
/// a small random bilinear matrix so initial similarity scores sit near zero
/// (initial loss near ln B).
template <RandomSource R>
EncoderParams init_encoder_params(const EncoderConfig& cfg, R& rng) {
  EncoderParams p;
  p.enc_w1 = detail::uniform_matrix(cfg.hidden_dim, cfg.input_dim,
                                    std::sqrt(6.0 / cfg.input_dim), rng);
  p.enc_b1 = Eigen::VectorXd::Zero(cfg.hidden_dim);
  p.enc_w2 = detail::uniform_matrix(cfg.embed_dim, cfg.hidden_dim,
                                    std::sqrt(6.0 / cfg.hidden_dim), rng);
  p.enc_b2 = Eigen::VectorXd::Zero(cfg.embed_dim);
  p.proj_w = detail::uniform_matrix(cfg.proj_dim, cfg.embed_dim,
                                    std::sqrt(6.0 / cfg.embed_dim), rng);
  p.proj_b = Eigen::VectorXd::Zero(cfg.proj_dim);
  p.norm_gain = Eigen::VectorXd::Ones(cfg.proj_dim);
  p.norm_offset = Eigen::VectorXd::Zero(cfg.proj_dim);
  p.bilinear_w =
      detail::uniform_matrix(cfg.proj_dim, cfg.proj_dim, 0.1 / std::sqrt(cfg.proj_dim), rng);
  return p;
}

inline EncoderParams init_encoder_params(const EncoderConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  return init_encoder_params(cfg, rng);
}

// --- Forward / backward ------------------------------------------------------

namespace detail {

struct ForwardCache {
  Eigen::VectorXd x;   // input features
  Eigen::VectorXd z1;  // pre-activation of layer 1
  Eigen::VectorXd a1;  // relu(z1)
  Eigen::VectorXd h;   // embedding
  Eigen::VectorXd u;   // normalized projection, pre gain/offset
  Eigen::VectorXd v;   // tanh output
  double inv_std = 0.0;
  bool std_floored = false;
};

inline Eigen::VectorXd encoder_forward(const EncoderParams& p, const Eigen::VectorXd& x,
                                       ForwardCache* cache) {
  Eigen::VectorXd z1 = p.enc_w1 * x + p.enc_b1;
  Eigen::VectorXd a1 = z1.cwiseMax(0.0);
  Eigen::VectorXd h = p.enc_w2 * a1 + p.enc_b2;
  if (cache) {
    cache->x = x;
    cache->z1 = std::move(z1);
    cache->a1 = std::move(a1);
    cache->h = h;
  }
  return h;
}

inline Eigen::VectorXd projection_forward(const EncoderParams& p, const Eigen::VectorXd& h,
                                          ForwardCache* cache) {
  const Eigen::VectorXd pre = p.proj_w * h + p.proj_b;
  const double mean = pre.mean();
  const Eigen::VectorXd centered = pre.array() - mean;
  double std = std::sqrt(centered.squaredNorm() / static_cast<double>(pre.size()));
  const bool floored = std < kLayerNormStdFloor;
  if (floored) std = kLayerNormStdFloor;
  const Eigen::VectorXd u = centered / std;
  Eigen::VectorXd v =
      (p.norm_gain.cwiseProduct(u) + p.norm_offset).array().tanh().matrix();
  if (cache) {
    cache->u = u;
    cache->v = v;
    cache->inv_std = 1.0 / std;
    cache->std_floored = floored;
  }
  return v;
}

/// Backpropagates dL/dv through the projection head and encoder for one
/// input, accumulating parameter gradients.
inline void net_backward(const EncoderParams& p, const ForwardCache& cache,
                         const Eigen::VectorXd& dv, EncoderParams& grads) {
  // v = tanh(gain .* u + offset)
  const Eigen::VectorXd dq =
      dv.cwiseProduct((1.0 - cache.v.array().square()).matrix());
  grads.norm_gain += dq.cwiseProduct(cache.u);
  grads.norm_offset += dq;
  const Eigen::VectorXd du = dq.cwiseProduct(p.norm_gain);

  // u = (pre - mean)/std, population std, floored std is constant
  const double d = static_cast<double>(du.size());
  const double du_mean = du.mean();
  Eigen::VectorXd dpre;
  if (cache.std_floored) {
    dpre = (du.array() - du_mean).matrix() * cache.inv_std;
  } else {
    const double proj = du.cwiseProduct(cache.u).sum() / d;
    dpre = ((du.array() - du_mean) - cache.u.array() * proj).matrix() * cache.inv_std;
  }

  grads.proj_w += dpre * cache.h.transpose();
  grads.proj_b += dpre;
  const Eigen::VectorXd dh = p.proj_w.transpose() * dpre;

  grads.enc_w2 += dh * cache.a1.transpose();
  grads.enc_b2 += dh;
  const Eigen::VectorXd da1 = p.enc_w2.transpose() * dh;
  const Eigen::VectorXd dz1 =
      da1.cwiseProduct((cache.z1.array() > 0.0).cast<double>().matrix());
  grads.enc_w1 += dz1 * cache.x.transpose();
  grads.enc_b1 += dz1;
}

}  // namespace detail

/// h for a 1 s segment: log-Mel, per-band time-mean pooling, two dense
/// layers with a rectified-linear nonlinearity between them.
inline Eigen::VectorXd encode(const EncoderParams& params, const Waveform& segment) {
  return detail::encoder_forward(params, pool_mean(mel_spectrogram(segment)), nullptr);
}

/// Projection head: dense layer, per-vector normalization (std floored at
/// 1e-5), gain/offset, tanh.
inline Eigen::VectorXd project(const EncoderParams& params, const Eigen::VectorXd& h) {
  return detail::projection_forward(params, h, nullptr);
}

inline double bilinear_similarity(const Eigen::VectorXd& v1, const Eigen::VectorXd& v2,
                                  const Eigen::MatrixXd& w) {
  if (v1.size() != w.rows() || v2.size() != w.cols()) {
    throw DataError("bilinear_similarity: dimension mismatch");
  }
  return v1.dot(w * v2);
}

/// Two augmented 1 s views cut from the same origin sample.
struct SegmentPair {
  Waveform view_a;
  Waveform view_b;
  std::string origin_id;
};

/// Cuts two independent random 1 s segments and applies two independently
/// sampled chains, one per view.
template <RandomSource R>
SegmentPair make_training_pair(const Waveform& w, const AugDistribution& d, R& rng,
                               std::string origin_id = "") {
  SegmentPair pair;
  pair.origin_id = std::move(origin_id);
  const Waveform seg_a = cut_random_segment(w, kSegmentSeconds, rng);
  const AugChain chain_a = sample_chain(d, rng);
  pair.view_a = apply_chain(chain_a, seg_a);
  const Waveform seg_b = cut_random_segment(w, kSegmentSeconds, rng);
  const AugChain chain_b = sample_chain(d, rng);
  pair.view_b = apply_chain(chain_b, seg_b);
  return pair;
}

/// Multi-class cross entropy over a B x B similarity matrix, positives on
/// the diagonal. Row-wise max subtraction keeps the exponentials stable.
inline double loss_from_logits(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols() || s.rows() < 1) {
    throw DataError("loss_from_logits: need a square nonempty logit matrix");
  }
  const auto b = s.rows();
  double loss = 0.0;
  for (Eigen::Index i = 0; i < b; ++i) {
    const double row_max = s.row(i).maxCoeff();
    const double lse = row_max + std::log((s.row(i).array() - row_max).exp().sum());
    loss += lse - s(i, i);
  }
  return loss / static_cast<double>(b);
}

/// Per-view pooled log-Mel features for a batch of pairs.
struct BatchFeatures {
  Eigen::MatrixXd a;  // B x input_dim
  Eigen::MatrixXd b;  // B x input_dim
};

inline BatchFeatures batch_features(std::span<const SegmentPair> pairs) {
  if (pairs.empty()) throw DataError("empty batch");
  std::unordered_set<std::string> origins;
  for (const auto& p : pairs) {
    if (!origins.insert(p.origin_id).second) {
      throw DataError("duplicate origin id in batch: " + p.origin_id);
    }
  }
  BatchFeatures f;
  const Eigen::VectorXd first = pool_mean(mel_spectrogram(pairs[0].view_a));
  f.a.resize(static_cast<Eigen::Index>(pairs.size()), first.size());
  f.b.resize(static_cast<Eigen::Index>(pairs.size()), first.size());
  f.a.row(0) = first.transpose();
  f.b.row(0) = pool_mean(mel_spectrogram(pairs[0].view_b)).transpose();
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    f.a.row(static_cast<Eigen::Index>(i)) = pool_mean(mel_spectrogram(pairs[i].view_a)).transpose();
    f.b.row(static_cast<Eigen::Index>(i)) = pool_mean(mel_spectrogram(pairs[i].view_b)).transpose();
  }
  return f;
}

namespace detail {

struct LossAndGrads {
  double loss = 0.0;
  EncoderParams grads;
};

inline double loss_on_features(const EncoderParams& params, const BatchFeatures& f) {
  const auto b = f.a.rows();
  Eigen::MatrixXd va(b, params.proj_w.rows()), vb(b, params.proj_w.rows());
  for (Eigen::Index i = 0; i < b; ++i) {
    va.row(i) =
        projection_forward(params, encoder_forward(params, f.a.row(i).transpose(), nullptr),
                           nullptr)
            .transpose();
    vb.row(i) =
        projection_forward(params, encoder_forward(params, f.b.row(i).transpose(), nullptr),
                           nullptr)
            .transpose();
  }
  return loss_from_logits(va * params.bilinear_w * vb.transpose());
}

inline LossAndGrads loss_and_grads_on_features(const EncoderParams& params,
                                               const BatchFeatures& f) {
  const auto b = f.a.rows();
  std::vector<ForwardCache> cache_a(static_cast<std::size_t>(b)),
      cache_b(static_cast<std::size_t>(b));
  Eigen::MatrixXd va(b, params.proj_w.rows()), vb(b, params.proj_w.rows());
  for (Eigen::Index i = 0; i < b; ++i) {
    auto& ca = cache_a[static_cast<std::size_t>(i)];
    auto& cb = cache_b[static_cast<std::size_t>(i)];
    va.row(i) =
        projection_forward(params, encoder_forward(params, f.a.row(i).transpose(), &ca), &ca)
            .transpose();
    vb.row(i) =
        projection_forward(params, encoder_forward(params, f.b.row(i).transpose(), &cb), &cb)
            .transpose();
  }
  const Eigen::MatrixXd s = va * params.bilinear_w * vb.transpose();

  // softmax cross entropy: dL/dS = (softmax - I)/B
  Eigen::MatrixXd ds(b, b);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < b; ++i) {
    const double row_max = s.row(i).maxCoeff();
    const Eigen::ArrayXd ex = (s.row(i).array() - row_max).exp();
    const double denom = ex.sum();
    loss += row_max + std::log(denom) - s(i, i);
    ds.row(i) = (ex / denom).matrix().transpose();
    ds(i, i) -= 1.0;
  }
  loss /= static_cast<double>(b);
  ds /= static_cast<double>(b);

  LossAndGrads out;
  out.loss = loss;
  out.grads = params.zeros_like();
  out.grads.bilinear_w = va.transpose() * ds * vb;
  const Eigen::MatrixXd dva = ds * vb * params.bilinear_w.transpose();
  const Eigen::MatrixXd dvb = ds.transpose() * va * params.bilinear_w;
  for (Eigen::Index i = 0; i < b; ++i) {
    net_backward(params, cache_a[static_cast<std::size_t>(i)], dva.row(i).transpose(), out.grads);
    net_backward(params, cache_b[static_cast<std::size_t>(i)], dvb.row(i).transpose(), out.grads);
  }
  return out;
}

inline std::vector<double*> param_entries(EncoderParams& p) {
  std::vector<double*> entries;
  auto add = [&entries](auto& tensor) {
    for (Eigen::Index i = 0; i < tensor.size(); ++i) entries.push_back(tensor.data() + i);
  };
  add(p.enc_w1);
  add(p.enc_b1);
  add(p.enc_w2);
  add(p.enc_b2);
  add(p.proj_w);
  add(p.proj_b);
  add(p.norm_gain);
  add(p.norm_offset);
  add(p.bilinear_w);
  return entries;
}

}  // namespace detail

/// Mean over i of -log(e^{s(a_i, b_i)} / sum_j e^{s(a_i, b_j)}).
inline double contrastive_batch_loss(const EncoderParams& params,
                                     std::span<const SegmentPair> pairs) {
  return detail::loss_on_features(params, batch_features(pairs));
}

/// Compares the analytic gradient of the batch loss against central finite
/// differences (step 1e-4) for every parameter entry; returns the max
/// relative error. Entries whose gradient is below the resolution of the
/// finite differences (1e-6 on an O(1) loss) compare absolutely instead,
/// which also covers exactly-zero gradients of unused parameters.
inline double grad_check(const EncoderParams& params, std::span<const SegmentPair> pairs) {
  const BatchFeatures features = batch_features(pairs);
  const auto analytic = detail::loss_and_grads_on_features(params, features);

  EncoderParams probe = params;
  EncoderParams analytic_grads = analytic.grads;
  const auto probe_entries = detail::param_entries(probe);
  const auto grad_entries = detail::param_entries(analytic_grads);

  const double step = 1e-4;
  double max_err = 0.0;
  for (std::size_t i = 0; i < probe_entries.size(); ++i) {
    const double saved = *probe_entries[i];
    *probe_entries[i] = saved + step;
    const double plus = detail::loss_on_features(probe, features);
    *probe_entries[i] = saved - step;
    const double minus = detail::loss_on_features(probe, features);
    *probe_entries[i] = saved;
    const double fd = (plus - minus) / (2.0 * step);
    const double ga = *grad_entries[i];
    const double denom = std::max(std::abs(fd), std::abs(ga));
    const double err = denom < 1e-6 ? std::abs(fd - ga) : std::abs(fd - ga) / denom;
    max_err = std::max(max_err, err);
  }
  return max_err;
}

struct StepResult {
  EncoderParams params;
  double loss = 0.0;
};

/// One stochastic-gradient-descent update over all parameters including the
/// bilinear matrix. Returns the pre-update loss.
inline StepResult train_step(const EncoderParams& params, std::span<const SegmentPair> pairs,
                             double learning_rate) {
  auto lg = detail::loss_and_grads_on_features(params, batch_features(pairs));
  if (!std::isfinite(lg.loss)) {
    throw NumericError("train_step: non-finite loss (batch of " + std::to_string(pairs.size()) +
                       " pairs, lr " + std::to_string(learning_rate) + ")");
  }
  StepResult out;
  out.params = params;
  out.params.axpy(-learning_rate, lg.grads);
  out.loss = lg.loss;
  return out;
}

/// Segment start offsets for utterance embedding: a 1 s window every 200 ms,
/// anchored at the tail so the last window covers through the end and the
/// grid stays arithmetic.
inline std::vector<std::size_t> utterance_segment_offsets(std::size_t n_samples,
                                                          std::size_t segment_samples,
                                                          std::size_t step_samples) {
  if (n_samples <= segment_samples) return {0};
  std::vector<std::size_t> offsets;
  for (std::size_t off = n_samples - segment_samples;; off -= step_samples) {
    offsets.push_back(off);
    if (off < step_samples) break;
  }
  std::reverse(offsets.begin(), offsets.end());
  return offsets;
}

/// Mean of encode() over 1 s segments cut every 200 ms. Sub-second input is
/// zero-left-padded to a single segment.
inline Eigen::VectorXd embed_utterance(const EncoderParams& params, const Waveform& w) {
  if (w.samples.empty()) throw DataError("embed_utterance: empty waveform");
  const auto segment = static_cast<std::size_t>(std::llround(
      kSegmentSeconds * static_cast<double>(w.sample_rate)));
  const auto step =
      static_cast<std::size_t>(std::llround(0.2 * static_cast<double>(w.sample_rate)));
  const auto offsets = utterance_segment_offsets(w.samples.size(), segment, step);

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(params.enc_w2.rows());
  for (const std::size_t off : offsets) {
    Waveform seg;
    seg.sample_rate = w.sample_rate;
    if (w.samples.size() < segment) {
      seg.samples.assign(segment, 0.0);
      std::copy(w.samples.begin(), w.samples.end(),
                seg.samples.begin() + static_cast<std::ptrdiff_t>(segment - w.samples.size()));
    } else {
      seg.samples.assign(w.samples.begin() + static_cast<std::ptrdiff_t>(off),
                         w.samples.begin() + static_cast<std::ptrdiff_t>(off + segment));
    }
    acc += encode(params, seg);
  }
  return acc / static_cast<double>(offsets.size());
}

// --- Checkpointing -----------------------------------------------------------

struct Checkpoint {
  EncoderParams params;
  std::uint64_t step = 0;
  std::string rng_state;
  nlohmann::json config;  // resolved run configuration, embedded for provenance
};

namespace detail {

inline nlohmann::json tensor_json(const Eigen::MatrixXd& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  }
  return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Eigen::MatrixXd tensor_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw DataError("checkpoint tensor shape mismatch");
  }
  Eigen::MatrixXd m(rows, cols);
  std::size_t i = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[i++].get<double>();
  }
  return m;
}

}  // namespace detail

inline void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  nlohmann::json j{{"type", "checkpoint"},
                   {"version", 1},
                   {"step", cp.step},
                   {"rng_state", cp.rng_state},
                   {"config", cp.config}};
  j["tensors"] = nlohmann::json{{"enc_w1", detail::tensor_json(cp.params.enc_w1)},
                                {"enc_b1", detail::tensor_json(cp.params.enc_b1)},
                                {"enc_w2", detail::tensor_json(cp.params.enc_w2)},
                                {"enc_b2", detail::tensor_json(cp.params.enc_b2)},
                                {"proj_w", detail::tensor_json(cp.params.proj_w)},
                                {"proj_b", detail::tensor_json(cp.params.proj_b)},
                                {"norm_gain", detail::tensor_json(cp.params.norm_gain)},
                                {"norm_offset", detail::tensor_json(cp.params.norm_offset)},
                                {"bilinear_w", detail::tensor_json(cp.params.bilinear_w)}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint: " + path.string());
  out << j.dump() << "\n";
  if (!out) throw DataError("failed writing checkpoint: " + path.string());
}

inline Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed checkpoint " + path.string() + ": " + e.what());
  }
  if (j.value("type", "") != "checkpoint") {
    throw DataError("not a checkpoint file: " + path.string());
  }
  Checkpoint cp;
  cp.step = j.at("step").get<std::uint64_t>();
  cp.rng_state = j.at("rng_state").get<std::string>();
  cp.config = j.value("config", nlohmann::json::object());
  const auto& t = j.at("tensors");
  cp.params.enc_w1 = detail::tensor_from_json(t.at("enc_w1"));
  cp.params.enc_b1 = detail::tensor_from_json(t.at("enc_b1"));
  cp.params.enc_w2 = detail::tensor_from_json(t.at("enc_w2"));
  cp.params.enc_b2 = detail::tensor_from_json(t.at("enc_b2"));
  cp.params.proj_w = detail::tensor_from_json(t.at("proj_w"));
  cp.params.proj_b = detail::tensor_from_json(t.at("proj_b"));
  cp.params.norm_gain = detail::tensor_from_json(t.at("norm_gain"));
  cp.params.norm_offset = detail::tensor_from_json(t.at("norm_offset"));
  cp.params.bilinear_w = detail::tensor_from_json(t.at("bilinear_w"));
  return cp;
}

}  // namespace augsel
