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

#ifndef E2R_TRAINING_HPP
#define E2R_TRAINING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "e2r/corpus.hpp"
#include "e2r/evaluation.hpp"
#include "e2r/model.hpp"

namespace e2r {

struct TrainConfig {
  double learning_rate = 1e-3;  // desk-scale default
  int batch_size = 8;
  double weight_decay = 0.01;
  int max_epochs = 20;
  int patience = 3;
  double clip_threshold = 1.0;
  int folds = 5;
  std::uint64_t seed = 42;

  /// Preset for fine-tuning large pre-trained encoders.
  static constexpr double kLargeEncoderLearningRate = 5e-6;

  void validate() const;  // throws InvalidConfig
};

/// Inverse-frequency class weights: w_c = (1/freq_c) * (N/2).
struct ClassWeights {
  std::vector<double> weights;      // per class index, 1.0 where absent
  std::vector<long> frequencies;    // per class index
  long total = 0;                   // N

  /// Neutral 1.0 for classes the training labels never contained.
  double weight_of(int cls) const {
    return weights[static_cast<std::size_t>(cls)];
  }
};

ClassWeights compute_class_weights(std::span<const int> labels,
                                   int num_classes);  // EmptyInput
ClassWeights compute_class_weights(const std::vector<ClassLabel>& labels);

/// Weighted mean of per-sample cross-entropies: sum_i w_{y_i} * (-log
/// p_i[y_i]) / sum_i w_{y_i}. Probabilities are clamped at 1e-12 before
/// the log.
double weighted_cross_entropy(
    const std::vector<std::vector<double>>& probabilities,
    std::span<const int> targets, const ClassWeights& weights);

/// Scales the whole vector by threshold/||g||_2 when the norm exceeds the
/// threshold; otherwise returns it bitwise unchanged (zero included).
std::vector<double> clip_gradient_norm(std::vector<double> gradients,
                                       double threshold);

/// Disjoint index sets partitioning [0, n); per-class counts differ by at
/// most 1 across folds. Deterministic given the seed.
std::vector<std::vector<std::size_t>> stratified_folds(
    std::span<const int> labels, int k, std::uint64_t seed);  // InvalidK
std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<ClassLabel>& labels, int k, std::uint64_t seed);

/// Deterministic seed derivation for per-fold / per-epoch streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

/// Stop when the validation loss has not strictly improved for `patience`
/// consecutive epochs. Kept separate so its trace is testable.
class EarlyStopper {
public:
  explicit EarlyStopper(int patience) : patience_(patience) {}

  /// Returns true when this epoch is the new best.
  bool observe(double val_loss);
  bool should_stop() const { return stale_ >= patience_; }
  int best_epoch() const { return best_epoch_; }  // 1-based
  double best_loss() const { return best_loss_; }

private:
  int patience_;
  int epoch_ = 0;
  int stale_ = 0;
  int best_epoch_ = 0;
  double best_loss_ = 0.0;
  bool has_best_ = false;
};

/// Encoded instances with integer labels over a named class order.
struct Dataset {
  std::vector<Encoded> inputs;
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::vector<std::string> ids;  // originating pair ids
};

/// Labelled pairs only; the complex side is the instance.
Dataset make_strategy_dataset(const Corpus& corpus, const Vocabulary& vocab,
                              int max_len);
/// Every complex side becomes a Complex instance, every simple side a
/// Simple instance. Class order: {Simple, Complex}.
Dataset make_binary_dataset(const Corpus& corpus, const Vocabulary& vocab,
                            int max_len);

struct EpochStats {
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_macro_f1 = 0.0;
};

struct TrainOutcome {
  Model model;
  std::vector<EpochStats> history;
  int best_epoch = 0;  // 1-based index into history
};

/// Mini-batch gradient descent with per-batch norm clipping and decoupled
/// weight decay; restores the best-validation-loss parameters.
TrainOutcome train_with_early_stopping(Model model, const Dataset& data,
                                       std::span<const std::size_t> train_idx,
                                       std::span<const std::size_t> val_idx,
                                       const ClassWeights& weights,
                                       const TrainConfig& config);

struct FoldResult {
  int fold_index = 0;
  std::vector<EpochStats> history;
  int best_epoch = 0;
  ClassificationReport report;   // on the validation fold
  double train_accuracy = 0.0;   // restored model on its training split
  std::optional<Model> model;    // restored best-epoch parameters
};

struct CrossValResult {
  std::vector<FoldResult> folds;
  ClassificationReport averaged;  // unweighted mean over folds
  std::vector<std::string> warnings;
};

/// Class weights are recomputed on each training split; per-fold model
/// seeds derive from model_config.seed.
CrossValResult cross_validate(const Dataset& data,
                              const ModelConfig& model_config,
                              const TrainConfig& config);

double dataset_accuracy(const Model& model, const Dataset& data,
                        std::span<const std::size_t> indices);

/// epoch,fold,train_loss,val_loss,val_macro_f1 rows for every fold.
std::string history_csv(const CrossValResult& result);

std::string format_double(double value);  // shortest round-trip decimal

}  // namespace e2r

#endif  // E2R_TRAINING_HPP
