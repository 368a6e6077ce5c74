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

#ifndef E2R_MODEL_HPP
#define E2R_MODEL_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "e2r/text.hpp"

namespace e2r {

enum class EncoderKind { MeanPool, SelfAttention };
enum class Activation { Tanh, Identity };

std::string_view encoder_kind_name(EncoderKind kind);
EncoderKind parse_encoder_kind(std::string_view name);
std::string_view activation_name(Activation act);
Activation parse_activation(std::string_view name);

struct ModelConfig {
  int vocab_size = 0;
  int embed_dim = 0;
  int hidden_dim = 0;
  int num_classes = 0;
  int max_len = 0;
  std::uint64_t seed = 0;
  EncoderKind encoder = EncoderKind::MeanPool;
  Activation activation = Activation::Tanh;

  void validate() const;  // throws InvalidConfig
  bool operator==(const ModelConfig&) const = default;
};

struct Prediction {
  std::vector<double> probabilities;
  int predicted = 0;  // argmax, lowest index on ties
};

/// Embedding table + optional single-head self-attention block (with
/// residual) + mean pooling over non-PAD positions + one hidden layer +
/// linear head. Small enough that every gradient is finite-difference
/// checkable. Parameters live in one flat array; a trained model is
/// immutable and safe for concurrent forward/gradient calls.
class Model {
public:
  explicit Model(const ModelConfig& config);

  const ModelConfig& config() const { return config_; }
  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  std::size_t num_params() const { return params_.size(); }

  // Flat-array offsets of each parameter block.
  std::size_t embedding_offset() const { return 0; }
  std::size_t attention_offset() const;  // Wq, then Wk, then Wv
  std::size_t w1_offset() const;
  std::size_t b1_offset() const;
  std::size_t w2_offset() const;
  std::size_t b2_offset() const;

  /// Embedding-table lookup, a max_len x embed_dim row-major matrix.
  std::vector<double> embed(const Encoded& input) const;

  Prediction forward(const Encoded& input) const;
  Prediction forward_from_embeddings(std::span<const double> embeddings,
                                     int true_length) const;

  /// Pre-softmax score of `target_class` at the given embeddings.
  double logit(std::span<const double> embeddings, int true_length,
               int target_class) const;

  /// d(logit of target_class)/d(embeddings); zero at PAD positions.
  std::vector<double> grad_wrt_embeddings(std::span<const double> embeddings,
                                          int true_length,
                                          int target_class) const;

  /// Weighted cross-entropy over the batch (weighted mean, i.e. divided
  /// by the weight sum) and its gradient with respect to all parameters.
  struct LossGrad {
    double loss = 0.0;
    std::vector<double> grad;
  };
  LossGrad batch_loss_and_grad(std::span<const Encoded> inputs,
                               std::span<const int> targets,
                               std::span<const double> sample_weights) const;

private:
  struct ForwardState;
  ForwardState run_forward(std::span<const double> embeddings,
                           int true_length) const;
  void check_embeddings(std::span<const double> embeddings,
                        int true_length) const;

  ModelConfig config_;
  std::vector<double> params_;
};

std::vector<double> softmax(std::span<const double> logits);
int argmax_lowest(std::span<const double> values);

/// Everything `explain`/`evaluate` need to run a trained model.
struct Checkpoint {
  ModelConfig config;
  std::vector<double> params;
  Vocabulary vocab;
  std::vector<std::string> class_names;
  std::string task;  // "strategy" or "complexity"
};

void save_checkpoint(const std::filesystem::path& path, const Model& model,
                     const Vocabulary& vocab,
                     const std::vector<std::string>& class_names,
                     const std::string& task);
Checkpoint load_checkpoint(const std::filesystem::path& path);
Model model_from_checkpoint(const Checkpoint& checkpoint);

}  // namespace e2r

#endif  // E2R_MODEL_HPP
