// Copyright 2026 e2rkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "e2r/model.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <json.hpp>

namespace e2r {

namespace {

constexpr double kProbFloor = 1e-12;

// Deterministic gaussian stream; avoids std::normal_distribution so the
// parameter stream is identical across standard libraries.
class GaussianRng {
public:
  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

std::string_view encoder_kind_name(EncoderKind kind) {
  return kind == EncoderKind::MeanPool ? "mean_pool" : "self_attention";
}

EncoderKind parse_encoder_kind(std::string_view name) {
  if (name == "mean_pool") return EncoderKind::MeanPool;
  if (name == "self_attention") return EncoderKind::SelfAttention;
  throw InvalidConfig("unknown encoder kind: " + std::string(name));
}

std::string_view activation_name(Activation act) {
  return act == Activation::Tanh ? "tanh" : "identity";
}

Activation parse_activation(std::string_view name) {
  if (name == "tanh") return Activation::Tanh;
  if (name == "identity") return Activation::Identity;
  throw InvalidConfig("unknown activation: " + std::string(name));
}

void ModelConfig::validate() const {
  if (vocab_size < 3)
    throw InvalidConfig("vocab_size must cover the reserved specials (>= 3)");
  if (embed_dim < 1) throw InvalidConfig("embed_dim must be >= 1");
  if (hidden_dim < 1) throw InvalidConfig("hidden_dim must be >= 1");
  if (num_classes < 2) throw InvalidConfig("num_classes must be >= 2");
  if (max_len < 2) throw InvalidConfig("max_len must be >= 2");
}

std::size_t Model::attention_offset() const {
  return static_cast<std::size_t>(config_.vocab_size) *
         static_cast<std::size_t>(config_.embed_dim);
}

std::size_t Model::w1_offset() const {
  std::size_t off = attention_offset();
  if (config_.encoder == EncoderKind::SelfAttention) {
    off += 3u * static_cast<std::size_t>(config_.embed_dim) *
           static_cast<std::size_t>(config_.embed_dim);
  }
  return off;
}

std::size_t Model::b1_offset() const {
  return w1_offset() + static_cast<std::size_t>(config_.hidden_dim) *
                           static_cast<std::size_t>(config_.embed_dim);
}

std::size_t Model::w2_offset() const {
  return b1_offset() + static_cast<std::size_t>(config_.hidden_dim);
}

std::size_t Model::b2_offset() const {
  return w2_offset() + static_cast<std::size_t>(config_.num_classes) *
                           static_cast<std::size_t>(config_.hidden_dim);
}

Model::Model(const ModelConfig& config) : config_(config) {
  config_.validate();
  params_.assign(b2_offset() + static_cast<std::size_t>(config_.num_classes),
                 0.0);
  GaussianRng rng(config_.seed);
  // Embeddings start hot so mean-pooled features land in tanh's healthy
  // range; the zero-initialised head still makes the untrained model
  // exactly uniform.
  const double embed_scale = 1.5;
  const double proj_scale = 1.0 / std::sqrt(static_cast<double>(config_.embed_dim));
  for (std::size_t i = 0; i < attention_offset(); ++i)
    params_[i] = embed_scale * rng.normal();
  for (std::size_t i = attention_offset(); i < w1_offset(); ++i)
    params_[i] = proj_scale * rng.normal();
  for (std::size_t i = w1_offset(); i < b1_offset(); ++i)
    params_[i] = proj_scale * rng.normal();
  // b1 stays zero; W2 and b2 stay zero so the untrained model is uniform.
}

std::vector<double> softmax(std::span<const double> logits) {
  double max_logit = logits[0];
  for (double z : logits) max_logit = std::max(max_logit, z);
  std::vector<double> probs(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - max_logit);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

int argmax_lowest(std::span<const double> values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[static_cast<std::size_t>(i)] >
        values[static_cast<std::size_t>(best)])
      best = i;
  }
  return best;
}

std::vector<double> Model::embed(const Encoded& input) const {
  const auto max_len = static_cast<std::size_t>(config_.max_len);
  const auto dim = static_cast<std::size_t>(config_.embed_dim);
  if (input.ids.size() != max_len)
    throw DimensionMismatch("encoded input length does not match max_len");
  if (input.true_length < 1 || input.true_length > config_.max_len)
    throw DimensionMismatch("true_length outside [1, max_len]");
  std::vector<double> embeddings(max_len * dim);
  for (std::size_t t = 0; t < max_len; ++t) {
    const int id = input.ids[t];
    if (id < 0 || id >= config_.vocab_size)
      throw DimensionMismatch("token id outside the vocabulary: " +
                              std::to_string(id));
    const double* row = params_.data() + static_cast<std::size_t>(id) * dim;
    std::copy(row, row + dim, embeddings.begin() + static_cast<long>(t * dim));
  }
  return embeddings;
}

struct Model::ForwardState {
  int true_length = 0;
  // Attention intermediates, valid rows only (empty for MeanPool).
  std::vector<double> q, k, v;  // TL x D
  std::vector<double> attn;     // TL x TL
  std::vector<double> encoded;  // TL x D, post-residual
  std::vector<double> pooled;   // D
  std::vector<double> hidden_pre;  // H
  std::vector<double> hidden;      // H
  std::vector<double> logits;      // C
};

void Model::check_embeddings(std::span<const double> embeddings,
                             int true_length) const {
  const std::size_t expected = static_cast<std::size_t>(config_.max_len) *
                               static_cast<std::size_t>(config_.embed_dim);
  if (embeddings.size() != expected)
    throw DimensionMismatch("embedding matrix must be max_len x embed_dim");
  if (true_length < 1 || true_length > config_.max_len)
    throw DimensionMismatch("true_length outside [1, max_len]");
}

Model::ForwardState Model::run_forward(std::span<const double> embeddings,
                                       int true_length) const {
  check_embeddings(embeddings, true_length);
  const auto tl = static_cast<std::size_t>(true_length);
  const auto dim = static_cast<std::size_t>(config_.embed_dim);
  const auto hidden_dim = static_cast<std::size_t>(config_.hidden_dim);
  const auto num_classes = static_cast<std::size_t>(config_.num_classes);

  ForwardState state;
  state.true_length = true_length;
  state.encoded.assign(tl * dim, 0.0);

  if (config_.encoder == EncoderKind::SelfAttention) {
    const double* wq = params_.data() + attention_offset();
    const double* wk = wq + dim * dim;
    const double* wv = wk + dim * dim;
    state.q.assign(tl * dim, 0.0);
    state.k.assign(tl * dim, 0.0);
    state.v.assign(tl * dim, 0.0);
    for (std::size_t t = 0; t < tl; ++t) {
      const double* x = embeddings.data() + t * dim;
      for (std::size_t i = 0; i < dim; ++i) {
        double sq = 0.0, sk = 0.0, sv = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
          sq += wq[i * dim + j] * x[j];
          sk += wk[i * dim + j] * x[j];
          sv += wv[i * dim + j] * x[j];
        }
        state.q[t * dim + i] = sq;
        state.k[t * dim + i] = sk;
        state.v[t * dim + i] = sv;
      }
    }
    const double inv_sqrt_dim = 1.0 / std::sqrt(static_cast<double>(dim));
    state.attn.assign(tl * tl, 0.0);
    std::vector<double> scores(tl);
    for (std::size_t t = 0; t < tl; ++t) {
      for (std::size_t u = 0; u < tl; ++u) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
          s += state.q[t * dim + i] * state.k[u * dim + i];
        scores[u] = s * inv_sqrt_dim;
      }
      std::vector<double> row = softmax(scores);
      std::copy(row.begin(), row.end(), state.attn.begin() + static_cast<long>(t * tl));
    }
    for (std::size_t t = 0; t < tl; ++t) {
      for (std::size_t i = 0; i < dim; ++i) {
        double y = 0.0;
        for (std::size_t u = 0; u < tl; ++u)
          y += state.attn[t * tl + u] * state.v[u * dim + i];
        state.encoded[t * dim + i] = embeddings[t * dim + i] + y;
      }
    }
  } else {
    std::copy(embeddings.begin(), embeddings.begin() + static_cast<long>(tl * dim),
              state.encoded.begin());
  }

  state.pooled.assign(dim, 0.0);
  for (std::size_t t = 0; t < tl; ++t)
    for (std::size_t i = 0; i < dim; ++i)
      state.pooled[i] += state.encoded[t * dim + i];
  for (double& p : state.pooled) p /= static_cast<double>(tl);

  const double* w1 = params_.data() + w1_offset();
  const double* b1 = params_.data() + b1_offset();
  state.hidden_pre.assign(hidden_dim, 0.0);
  state.hidden.assign(hidden_dim, 0.0);
  for (std::size_t i = 0; i < hidden_dim; ++i) {
    double s = b1[i];
    for (std::size_t j = 0; j < dim; ++j) s += w1[i * dim + j] * state.pooled[j];
    state.hidden_pre[i] = s;
    state.hidden[i] = config_.activation == Activation::Tanh ? std::tanh(s) : s;
  }

  const double* w2 = params_.data() + w2_offset();
  const double* b2 = params_.data() + b2_offset();
  state.logits.assign(num_classes, 0.0);
  for (std::size_t c = 0; c < num_classes; ++c) {
    double s = b2[c];
    for (std::size_t i = 0; i < hidden_dim; ++i)
      s += w2[c * hidden_dim + i] * state.hidden[i];
    state.logits[c] = s;
  }
  return state;
}

Prediction Model::forward(const Encoded& input) const {
  return forward_from_embeddings(embed(input), input.true_length);
}

Prediction Model::forward_from_embeddings(std::span<const double> embeddings,
                                          int true_length) const {
  ForwardState state = run_forward(embeddings, true_length);
  Prediction pred;
  pred.probabilities = softmax(state.logits);
  pred.predicted = argmax_lowest(pred.probabilities);
  return pred;
}

double Model::logit(std::span<const double> embeddings, int true_length,
                    int target_class) const {
  if (target_class < 0 || target_class >= config_.num_classes)
    throw DimensionMismatch("target class outside [0, num_classes)");
  ForwardState state = run_forward(embeddings, true_length);
  return state.logits[static_cast<std::size_t>(target_class)];
}

std::vector<double> Model::grad_wrt_embeddings(
    std::span<const double> embeddings, int true_length,
    int target_class) const {
  if (target_class < 0 || target_class >= config_.num_classes)
    throw DimensionMismatch("target class outside [0, num_classes)");
  ForwardState state = run_forward(embeddings, true_length);

  const auto tl = static_cast<std::size_t>(true_length);
  const auto dim = static_cast<std::size_t>(config_.embed_dim);
  const auto hidden_dim = static_cast<std::size_t>(config_.hidden_dim);

  // d(logit)/d(hidden) is the target row of W2.
  const double* w2 = params_.data() + w2_offset();
  std::vector<double> d_hidden(hidden_dim);
  for (std::size_t i = 0; i < hidden_dim; ++i)
    d_hidden[i] = w2[static_cast<std::size_t>(target_class) * hidden_dim + i];

  std::vector<double> d_pre(hidden_dim);
  for (std::size_t i = 0; i < hidden_dim; ++i) {
    const double deriv = config_.activation == Activation::Tanh
                             ? 1.0 - state.hidden[i] * state.hidden[i]
                             : 1.0;
    d_pre[i] = d_hidden[i] * deriv;
  }

  const double* w1 = params_.data() + w1_offset();
  std::vector<double> d_pooled(dim, 0.0);
  for (std::size_t i = 0; i < hidden_dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      d_pooled[j] += w1[i * dim + j] * d_pre[i];

  std::vector<double> d_encoded(tl * dim);
  const double inv_tl = 1.0 / static_cast<double>(tl);
  for (std::size_t t = 0; t < tl; ++t)
    for (std::size_t j = 0; j < dim; ++j)
      d_encoded[t * dim + j] = d_pooled[j] * inv_tl;

  std::vector<double> d_embeddings(
      static_cast<std::size_t>(config_.max_len) * dim, 0.0);

  if (config_.encoder == EncoderKind::MeanPool) {
    std::copy(d_encoded.begin(), d_encoded.end(), d_embeddings.begin());
    return d_embeddings;
  }

  // Self-attention backward (residual included), no parameter grads.
  const double* wq = params_.data() + attention_offset();
  const double* wk = wq + dim * dim;
  const double* wv = wk + dim * dim;
  const double inv_sqrt_dim = 1.0 / std::sqrt(static_cast<double>(dim));

  std::vector<double> d_v(tl * dim, 0.0);
  std::vector<double> d_scores(tl * tl, 0.0);
  for (std::size_t t = 0; t < tl; ++t) {
    // dA[t][u] = dY_t . v_u, then softmax backward per row.
    double dot_sum = 0.0;
    std::vector<double> da(tl);
    for (std::size_t u = 0; u < tl; ++u) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        s += d_encoded[t * dim + i] * state.v[u * dim + i];
      da[u] = s;
      dot_sum += state.attn[t * tl + u] * s;
    }
    for (std::size_t u = 0; u < tl; ++u) {
      d_scores[t * tl + u] = state.attn[t * tl + u] * (da[u] - dot_sum);
      for (std::size_t i = 0; i < dim; ++i)
        d_v[u * dim + i] += state.attn[t * tl + u] * d_encoded[t * dim + i];
    }
  }
  std::vector<double> d_q(tl * dim, 0.0);
  std::vector<double> d_k(tl * dim, 0.0);
  for (std::size_t t = 0; t < tl; ++t) {
    for (std::size_t u = 0; u < tl; ++u) {
      const double ds = d_scores[t * tl + u] * inv_sqrt_dim;
      for (std::size_t i = 0; i < dim; ++i) {
        d_q[t * dim + i] += ds * state.k[u * dim + i];
        d_k[u * dim + i] += ds * state.q[t * dim + i];
      }
    }
  }
  for (std::size_t t = 0; t < tl; ++t) {
    for (std::size_t j = 0; j < dim; ++j) {
      double s = d_encoded[t * dim + j];  // residual path
      for (std::size_t i = 0; i < dim; ++i) {
        s += wq[i * dim + j] * d_q[t * dim + i];
        s += wk[i * dim + j] * d_k[t * dim + i];
        s += wv[i * dim + j] * d_v[t * dim + i];
      }
      d_embeddings[t * dim + j] = s;
    }
  }
  return d_embeddings;
}

Model::LossGrad Model::batch_loss_and_grad(
    std::span<const Encoded> inputs, std::span<const int> targets,
    std::span<const double> sample_weights) const {
  if (inputs.empty()) throw EmptyInput("cannot train on an empty batch");
  if (inputs.size() != targets.size() || inputs.size() != sample_weights.size())
    throw LengthMismatch("batch inputs, targets and weights differ in length");

  const auto dim = static_cast<std::size_t>(config_.embed_dim);
  const auto hidden_dim = static_cast<std::size_t>(config_.hidden_dim);
  const auto num_classes = static_cast<std::size_t>(config_.num_classes);

  double weight_sum = 0.0;
  for (double w : sample_weights) weight_sum += w;
  if (weight_sum <= 0.0)
    throw NumericalError("batch weight sum must be positive");

  LossGrad result;
  result.grad.assign(params_.size(), 0.0);

  for (std::size_t n = 0; n < inputs.size(); ++n) {
    const int target = targets[n];
    if (target < 0 || target >= config_.num_classes)
      throw DimensionMismatch("target class outside [0, num_classes)");
    const std::vector<double> embeddings = embed(inputs[n]);
    ForwardState state = run_forward(embeddings, inputs[n].true_length);
    const std::vector<double> probs = softmax(state.logits);
    const double p_target =
        std::max(probs[static_cast<std::size_t>(target)], kProbFloor);
    const double coef = sample_weights[n] / weight_sum;
    result.loss += coef * -std::log(p_target);

    const auto tl = static_cast<std::size_t>(inputs[n].true_length);

    // dL/dlogits = coef * (p - onehot)
    std::vector<double> d_logits(num_classes);
    for (std::size_t c = 0; c < num_classes; ++c)
      d_logits[c] = coef * (probs[c] - (static_cast<int>(c) == target ? 1.0 : 0.0));

    double* g = result.grad.data();
    double* g_w2 = g + w2_offset();
    double* g_b2 = g + b2_offset();
    std::vector<double> d_hidden(hidden_dim, 0.0);
    const double* w2 = params_.data() + w2_offset();
    for (std::size_t c = 0; c < num_classes; ++c) {
      for (std::size_t i = 0; i < hidden_dim; ++i) {
        g_w2[c * hidden_dim + i] += d_logits[c] * state.hidden[i];
        d_hidden[i] += w2[c * hidden_dim + i] * d_logits[c];
      }
      g_b2[c] += d_logits[c];
    }

    std::vector<double> d_pre(hidden_dim);
    for (std::size_t i = 0; i < hidden_dim; ++i) {
      const double deriv = config_.activation == Activation::Tanh
                               ? 1.0 - state.hidden[i] * state.hidden[i]
                               : 1.0;
      d_pre[i] = d_hidden[i] * deriv;
    }

    double* g_w1 = g + w1_offset();
    double* g_b1 = g + b1_offset();
    const double* w1 = params_.data() + w1_offset();
    std::vector<double> d_pooled(dim, 0.0);
    for (std::size_t i = 0; i < hidden_dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        g_w1[i * dim + j] += d_pre[i] * state.pooled[j];
        d_pooled[j] += w1[i * dim + j] * d_pre[i];
      }
      g_b1[i] += d_pre[i];
    }

    const double inv_tl = 1.0 / static_cast<double>(tl);
    std::vector<double> d_encoded(tl * dim);
    for (std::size_t t = 0; t < tl; ++t)
      for (std::size_t j = 0; j < dim; ++j)
        d_encoded[t * dim + j] = d_pooled[j] * inv_tl;

    std::vector<double> d_x(tl * dim, 0.0);
    if (config_.encoder == EncoderKind::MeanPool) {
      d_x = d_encoded;
    } else {
      const double* wq = params_.data() + attention_offset();
      const double* wk = wq + dim * dim;
      const double* wv = wk + dim * dim;
      double* g_wq = g + attention_offset();
      double* g_wk = g_wq + dim * dim;
      double* g_wv = g_wk + dim * dim;
      const double inv_sqrt_dim = 1.0 / std::sqrt(static_cast<double>(dim));

      std::vector<double> d_v(tl * dim, 0.0);
      std::vector<double> d_scores(tl * tl, 0.0);
      for (std::size_t t = 0; t < tl; ++t) {
        double dot_sum = 0.0;
        std::vector<double> da(tl);
        for (std::size_t u = 0; u < tl; ++u) {
          double s = 0.0;
          for (std::size_t i = 0; i < dim; ++i)
            s += d_encoded[t * dim + i] * state.v[u * dim + i];
          da[u] = s;
          dot_sum += state.attn[t * tl + u] * s;
        }
        for (std::size_t u = 0; u < tl; ++u) {
          d_scores[t * tl + u] = state.attn[t * tl + u] * (da[u] - dot_sum);
          for (std::size_t i = 0; i < dim; ++i)
            d_v[u * dim + i] += state.attn[t * tl + u] * d_encoded[t * dim + i];
        }
      }
      std::vector<double> d_q(tl * dim, 0.0);
      std::vector<double> d_k(tl * dim, 0.0);
      for (std::size_t t = 0; t < tl; ++t) {
        for (std::size_t u = 0; u < tl; ++u) {
          const double ds = d_scores[t * tl + u] * inv_sqrt_dim;
          for (std::size_t i = 0; i < dim; ++i) {
            d_q[t * dim + i] += ds * state.k[u * dim + i];
            d_k[u * dim + i] += ds * state.q[t * dim + i];
          }
        }
      }
      for (std::size_t t = 0; t < tl; ++t) {
        const double* x = embeddings.data() + t * dim;
        for (std::size_t i = 0; i < dim; ++i) {
          for (std::size_t j = 0; j < dim; ++j) {
            g_wq[i * dim + j] += d_q[t * dim + i] * x[j];
            g_wk[i * dim + j] += d_k[t * dim + i] * x[j];
            g_wv[i * dim + j] += d_v[t * dim + i] * x[j];
          }
        }
        for (std::size_t j = 0; j < dim; ++j) {
          double s = d_encoded[t * dim + j];  // residual path
          for (std::size_t i = 0; i < dim; ++i) {
            s += wq[i * dim + j] * d_q[t * dim + i];
            s += wk[i * dim + j] * d_k[t * dim + i];
            s += wv[i * dim + j] * d_v[t * dim + i];
          }
          d_x[t * dim + j] = s;
        }
      }
    }

    double* g_embed = g + embedding_offset();
    for (std::size_t t = 0; t < tl; ++t) {
      const auto id = static_cast<std::size_t>(inputs[n].ids[t]);
      for (std::size_t j = 0; j < dim; ++j)
        g_embed[id * dim + j] += d_x[t * dim + j];
    }
  }

  if (!std::isfinite(result.loss))
    throw NumericalError("non-finite training loss");
  return result;
}

void save_checkpoint(const std::filesystem::path& path, const Model& model,
                     const Vocabulary& vocab,
                     const std::vector<std::string>& class_names,
                     const std::string& task) {
  const ModelConfig& cfg = model.config();
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "e2r-checkpoint";
  doc["model_config"] = {
      {"vocab_size", cfg.vocab_size},
      {"embed_dim", cfg.embed_dim},
      {"hidden_dim", cfg.hidden_dim},
      {"num_classes", cfg.num_classes},
      {"max_len", cfg.max_len},
      {"seed", cfg.seed},
      {"encoder", std::string(encoder_kind_name(cfg.encoder))},
      {"activation", std::string(activation_name(cfg.activation))}};
  doc["class_names"] = class_names;
  doc["task"] = task;
  doc["vocab"] = vocab.to_json();
  doc["params"] = model.params();
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write checkpoint: " + path.string());
  out << doc.dump() << "\n";
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open checkpoint: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  if (doc.value("kind", std::string()) != "e2r-checkpoint")
    throw ParseError("not a checkpoint file: " + path.string());
  Checkpoint ckpt;
  const auto& mc = doc.at("model_config");
  ckpt.config.vocab_size = mc.at("vocab_size").get<int>();
  ckpt.config.embed_dim = mc.at("embed_dim").get<int>();
  ckpt.config.hidden_dim = mc.at("hidden_dim").get<int>();
  ckpt.config.num_classes = mc.at("num_classes").get<int>();
  ckpt.config.max_len = mc.at("max_len").get<int>();
  ckpt.config.seed = mc.at("seed").get<std::uint64_t>();
  ckpt.config.encoder = parse_encoder_kind(mc.at("encoder").get<std::string>());
  ckpt.config.activation =
      parse_activation(mc.at("activation").get<std::string>());
  ckpt.params = doc.at("params").get<std::vector<double>>();
  ckpt.vocab = Vocabulary::from_json(doc.at("vocab"));
  ckpt.class_names = doc.at("class_names").get<std::vector<std::string>>();
  ckpt.task = doc.value("task", std::string("strategy"));
  if (ckpt.vocab.size() != ckpt.config.vocab_size)
    throw ParseError("checkpoint vocabulary size disagrees with the config");
  if (static_cast<int>(ckpt.class_names.size()) != ckpt.config.num_classes)
    throw ParseError("checkpoint class names disagree with num_classes");
  return ckpt;
}

Model model_from_checkpoint(const Checkpoint& checkpoint) {
  Model model(checkpoint.config);
  if (model.params().size() != checkpoint.params.size())
    throw ParseError("checkpoint parameter count disagrees with the config");
  model.params() = checkpoint.params;
  return model;
}

}  // namespace e2r
