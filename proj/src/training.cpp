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

#include "e2r/training.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace e2r {

void TrainConfig::validate() const {
  if (learning_rate <= 0.0) throw InvalidConfig("learning_rate must be positive");
  if (batch_size < 1) throw InvalidConfig("batch_size must be positive");
  if (weight_decay <= 0.0) throw InvalidConfig("weight_decay must be positive");
  if (max_epochs < 1) throw InvalidConfig("max_epochs must be positive");
  if (patience < 1) throw InvalidConfig("patience must be positive");
  if (patience > max_epochs)
    throw InvalidConfig("patience must not exceed max_epochs");
  if (clip_threshold <= 0.0)
    throw InvalidConfig("clip_threshold must be positive");
  if (folds < 2) throw InvalidConfig("folds must be at least 2");
}

ClassWeights compute_class_weights(std::span<const int> labels,
                                   int num_classes) {
  if (labels.empty())
    throw EmptyInput("class weights need at least one label");
  ClassWeights cw;
  cw.frequencies.assign(static_cast<std::size_t>(num_classes), 0);
  for (int label : labels) {
    if (label < 0 || label >= num_classes)
      throw DimensionMismatch("label index outside the class order");
    cw.frequencies[static_cast<std::size_t>(label)] += 1;
  }
  cw.total = static_cast<long>(labels.size());
  const double half_n = 0.5 * static_cast<double>(cw.total);
  cw.weights.assign(static_cast<std::size_t>(num_classes), 1.0);
  for (int c = 0; c < num_classes; ++c) {
    const long freq = cw.frequencies[static_cast<std::size_t>(c)];
    if (freq > 0)
      cw.weights[static_cast<std::size_t>(c)] =
          half_n / static_cast<double>(freq);
  }
  return cw;
}

ClassWeights compute_class_weights(const std::vector<ClassLabel>& labels) {
  std::vector<int> indices;
  indices.reserve(labels.size());
  for (ClassLabel label : labels) indices.push_back(static_cast<int>(label));
  return compute_class_weights(indices, kNumClassLabels);
}

double weighted_cross_entropy(
    const std::vector<std::vector<double>>& probabilities,
    std::span<const int> targets, const ClassWeights& weights) {
  if (probabilities.empty())
    throw EmptyInput("cross-entropy needs at least one sample");
  if (probabilities.size() != targets.size())
    throw LengthMismatch("probabilities and targets differ in length");
  double loss_sum = 0.0;
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const int y = targets[i];
    if (y < 0 || y >= static_cast<int>(probabilities[i].size()))
      throw DimensionMismatch("target class outside the probability vector");
    const double p =
        std::max(probabilities[i][static_cast<std::size_t>(y)], 1e-12);
    const double w = weights.weight_of(y);
    loss_sum += w * -std::log(p);
    weight_sum += w;
  }
  return loss_sum / weight_sum;
}

std::vector<double> clip_gradient_norm(std::vector<double> gradients,
                                       double threshold) {
  if (threshold <= 0.0)
    throw InvalidConfig("clip threshold must be positive");
  double sq = 0.0;
  for (double g : gradients) sq += g * g;
  const double norm = std::sqrt(sq);
  if (norm > threshold) {
    const double scale = threshold / norm;
    for (double& g : gradients) g *= scale;
  }
  return gradients;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<std::vector<std::size_t>> stratified_folds(
    std::span<const int> labels, int k, std::uint64_t seed) {
  const auto n = labels.size();
  if (k < 2 || static_cast<std::size_t>(k) > n)
    throw InvalidK("k must be in [2, number of samples]");
  int num_classes = 0;
  for (int label : labels) {
    if (label < 0) throw DimensionMismatch("negative label index");
    num_classes = std::max(num_classes, label + 1);
  }
  std::vector<std::vector<std::size_t>> by_class(
      static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < n; ++i)
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);

  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  // Dealing each class round-robin from a rotating start keeps both the
  // per-class counts and the overall fold sizes within 1 of each other.
  std::size_t offset = 0;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    std::mt19937_64 gen(derive_seed(seed, c));
    for (std::size_t i = members.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(gen() % i);
      std::swap(members[i - 1], members[j]);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      folds[(offset + i) % static_cast<std::size_t>(k)].push_back(members[i]);
    }
    offset = (offset + members.size()) % static_cast<std::size_t>(k);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<ClassLabel>& labels, int k, std::uint64_t seed) {
  std::vector<int> indices;
  indices.reserve(labels.size());
  for (ClassLabel label : labels) indices.push_back(static_cast<int>(label));
  return stratified_folds(indices, k, seed);
}

bool EarlyStopper::observe(double val_loss) {
  ++epoch_;
  if (!has_best_ || val_loss < best_loss_) {
    has_best_ = true;
    best_loss_ = val_loss;
    best_epoch_ = epoch_;
    stale_ = 0;
    return true;
  }
  ++stale_;
  return false;
}

Dataset make_strategy_dataset(const Corpus& corpus, const Vocabulary& vocab,
                              int max_len) {
  Dataset data;
  data.class_names = class_label_names();
  for (const auto& pair : corpus.pairs) {
    if (!pair.label) continue;
    data.inputs.push_back(encode(pair.complex_text, vocab, max_len));
    data.labels.push_back(static_cast<int>(*pair.label));
    data.ids.push_back(pair.id);
  }
  return data;
}

Dataset make_binary_dataset(const Corpus& corpus, const Vocabulary& vocab,
                            int max_len) {
  Dataset data;
  data.class_names = {"Simple", "Complex"};
  for (const auto& pair : corpus.pairs) {
    data.inputs.push_back(encode(pair.complex_text, vocab, max_len));
    data.labels.push_back(1);
    data.ids.push_back(pair.id);
    for (std::size_t s = 0; s < pair.simple_texts.size(); ++s) {
      data.inputs.push_back(encode(pair.simple_texts[s], vocab, max_len));
      data.labels.push_back(0);
      data.ids.push_back(pair.id + ":s" + std::to_string(s));
    }
  }
  return data;
}

namespace {

std::vector<std::vector<double>> predict_probs(
    const Model& model, const Dataset& data,
    std::span<const std::size_t> indices) {
  std::vector<std::vector<double>> probs;
  probs.reserve(indices.size());
  for (std::size_t idx : indices)
    probs.push_back(model.forward(data.inputs[idx]).probabilities);
  return probs;
}

std::vector<int> labels_at(const Dataset& data,
                           std::span<const std::size_t> indices) {
  std::vector<int> out;
  out.reserve(indices.size());
  for (std::size_t idx : indices) out.push_back(data.labels[idx]);
  return out;
}

}  // namespace

TrainOutcome train_with_early_stopping(Model model, const Dataset& data,
                                       std::span<const std::size_t> train_idx,
                                       std::span<const std::size_t> val_idx,
                                       const ClassWeights& weights,
                                       const TrainConfig& config) {
  config.validate();
  if (train_idx.empty() || val_idx.empty())
    throw EmptyInput("train and validation splits must be non-empty");

  const std::vector<int> val_gold = labels_at(data, val_idx);
  std::vector<std::size_t> order(train_idx.begin(), train_idx.end());

  EarlyStopper stopper(config.patience);
  std::vector<double> best_params = model.params();
  std::vector<EpochStats> history;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::mt19937_64 gen(derive_seed(config.seed, static_cast<std::uint64_t>(epoch)));
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(gen() % i);
      std::swap(order[i - 1], order[j]);
    }

    double epoch_loss_sum = 0.0;
    double epoch_weight_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t stop = std::min(
          order.size(), start + static_cast<std::size_t>(config.batch_size));
      std::vector<Encoded> inputs;
      std::vector<int> targets;
      std::vector<double> sample_weights;
      double batch_weight = 0.0;
      for (std::size_t i = start; i < stop; ++i) {
        const std::size_t idx = order[i];
        inputs.push_back(data.inputs[idx]);
        targets.push_back(data.labels[idx]);
        sample_weights.push_back(weights.weight_of(data.labels[idx]));
        batch_weight += sample_weights.back();
      }
      Model::LossGrad lg =
          model.batch_loss_and_grad(inputs, targets, sample_weights);
      const std::vector<double> grad =
          clip_gradient_norm(std::move(lg.grad), config.clip_threshold);
      auto& params = model.params();
      const double decay = 1.0 - config.learning_rate * config.weight_decay;
      for (std::size_t p = 0; p < params.size(); ++p)
        params[p] = params[p] * decay - config.learning_rate * grad[p];
      epoch_loss_sum += lg.loss * batch_weight;
      epoch_weight_sum += batch_weight;
    }

    EpochStats stats;
    stats.train_loss = epoch_loss_sum / epoch_weight_sum;
    const auto val_probs = predict_probs(model, data, val_idx);
    stats.val_loss = weighted_cross_entropy(val_probs, val_gold, weights);
    if (!std::isfinite(stats.val_loss))
      throw NumericalError("non-finite validation loss");
    std::vector<int> val_pred;
    val_pred.reserve(val_probs.size());
    for (const auto& p : val_probs) val_pred.push_back(argmax_lowest(p));
    stats.val_macro_f1 =
        classification_report(val_gold, val_pred, data.class_names).macro_f1;
    history.push_back(stats);

    if (stopper.observe(stats.val_loss)) best_params = model.params();
    if (stopper.should_stop()) break;
  }

  model.params() = std::move(best_params);
  return TrainOutcome{std::move(model), std::move(history),
                      stopper.best_epoch()};
}

double dataset_accuracy(const Model& model, const Dataset& data,
                        std::span<const std::size_t> indices) {
  if (indices.empty()) throw EmptyInput("accuracy over an empty index set");
  long correct = 0;
  for (std::size_t idx : indices) {
    if (model.forward(data.inputs[idx]).predicted == data.labels[idx])
      ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(indices.size());
}

CrossValResult cross_validate(const Dataset& data,
                              const ModelConfig& model_config,
                              const TrainConfig& config) {
  config.validate();
  if (data.inputs.empty())
    throw EmptyInput("cross-validation needs a labelled dataset");
  const int num_classes = static_cast<int>(data.class_names.size());

  CrossValResult result;
  std::vector<long> counts(static_cast<std::size_t>(num_classes), 0);
  for (int label : data.labels) counts[static_cast<std::size_t>(label)] += 1;
  for (int c = 0; c < num_classes; ++c) {
    const long count = counts[static_cast<std::size_t>(c)];
    if (count > 0 && count < config.folds) {
      result.warnings.push_back(
          "class " + data.class_names[static_cast<std::size_t>(c)] +
          " has only " + std::to_string(count) + " samples for " +
          std::to_string(config.folds) + " folds");
    }
  }

  const auto folds = stratified_folds(data.labels, config.folds, config.seed);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g == f) continue;
      train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    const std::vector<int> train_labels = labels_at(data, train_idx);
    const ClassWeights weights =
        compute_class_weights(train_labels, num_classes);

    ModelConfig fold_config = model_config;
    fold_config.seed = derive_seed(model_config.seed, f);
    TrainOutcome outcome = train_with_early_stopping(
        Model(fold_config), data, train_idx, folds[f], weights, config);

    FoldResult fold_result;
    fold_result.fold_index = static_cast<int>(f);
    fold_result.history = std::move(outcome.history);
    fold_result.best_epoch = outcome.best_epoch;
    std::vector<int> val_pred;
    val_pred.reserve(folds[f].size());
    for (std::size_t idx : folds[f])
      val_pred.push_back(outcome.model.forward(data.inputs[idx]).predicted);
    fold_result.report = classification_report(labels_at(data, folds[f]),
                                               val_pred, data.class_names);
    fold_result.train_accuracy =
        dataset_accuracy(outcome.model, data, train_idx);
    fold_result.model = std::move(outcome.model);
    result.folds.push_back(std::move(fold_result));
  }

  // Unweighted mean of per-fold metrics; supports are summed (every
  // sample validates exactly once).
  ClassificationReport& avg = result.averaged;
  avg.class_order = data.class_names;
  avg.per_class.resize(static_cast<std::size_t>(num_classes));
  const double fold_count = static_cast<double>(result.folds.size());
  for (const FoldResult& fold : result.folds) {
    for (int c = 0; c < num_classes; ++c) {
      const ClassMetrics& m = fold.report.per_class[static_cast<std::size_t>(c)];
      ClassMetrics& a = avg.per_class[static_cast<std::size_t>(c)];
      a.precision += m.precision / fold_count;
      a.recall += m.recall / fold_count;
      a.f1 += m.f1 / fold_count;
      a.support += m.support;
    }
    avg.macro_precision += fold.report.macro_precision / fold_count;
    avg.macro_recall += fold.report.macro_recall / fold_count;
    avg.macro_f1 += fold.report.macro_f1 / fold_count;
    avg.weighted_precision += fold.report.weighted_precision / fold_count;
    avg.weighted_recall += fold.report.weighted_recall / fold_count;
    avg.weighted_f1 += fold.report.weighted_f1 / fold_count;
    avg.accuracy += fold.report.accuracy / fold_count;
    avg.total_support += fold.report.total_support;
  }
  return result;
}

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string history_csv(const CrossValResult& result) {
  std::ostringstream out;
  out << "epoch,fold,train_loss,val_loss,val_macro_f1\n";
  for (const FoldResult& fold : result.folds) {
    for (std::size_t e = 0; e < fold.history.size(); ++e) {
      const EpochStats& s = fold.history[e];
      out << (e + 1) << "," << fold.fold_index << ","
          << format_double(s.train_loss) << "," << format_double(s.val_loss)
          << "," << format_double(s.val_macro_f1) << "\n";
    }
  }
  return out.str();
}

}  // namespace e2r
