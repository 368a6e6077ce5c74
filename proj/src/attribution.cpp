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

#include "e2r/attribution.hpp"

#include <cmath>

namespace e2r {

std::string_view baseline_kind_name(BaselineKind kind) {
  return kind == BaselineKind::ZeroEmbedding ? "zero" : "pad";
}

BaselineKind parse_baseline_kind(std::string_view name) {
  if (name == "zero" || name == "zero_embedding")
    return BaselineKind::ZeroEmbedding;
  if (name == "pad" || name == "pad_embedding") return BaselineKind::PadEmbedding;
  throw InvalidConfig("unknown IG baseline: " + std::string(name));
}

IGResult integrated_gradients(const Model& model, const Encoded& input,
                              const IGConfig& config) {
  if (config.steps < 1) throw InvalidConfig("IG steps must be >= 1");
  const ModelConfig& mc = model.config();
  const auto dim = static_cast<std::size_t>(mc.embed_dim);
  const auto size = static_cast<std::size_t>(mc.max_len) * dim;

  const std::vector<double> x = model.embed(input);
  std::vector<double> baseline(size, 0.0);
  if (config.baseline == BaselineKind::PadEmbedding) {
    const double* pad_row =
        model.params().data() + static_cast<std::size_t>(Vocabulary::kPad) * dim;
    for (std::size_t t = 0; t < static_cast<std::size_t>(mc.max_len); ++t)
      std::copy(pad_row, pad_row + dim,
                baseline.begin() + static_cast<long>(t * dim));
  }

  std::vector<double> avg_grad(size, 0.0);
  std::vector<double> point(size);
  const double inv_steps = 1.0 / static_cast<double>(config.steps);
  for (int k = 1; k <= config.steps; ++k) {
    const double alpha = static_cast<double>(k) * inv_steps;
    for (std::size_t i = 0; i < size; ++i)
      point[i] = baseline[i] + alpha * (x[i] - baseline[i]);
    const std::vector<double> grad =
        model.grad_wrt_embeddings(point, input.true_length, config.target);
    for (std::size_t i = 0; i < size; ++i) avg_grad[i] += grad[i];
  }

  IGResult result;
  result.matrix.resize(size);
  double total = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    result.matrix[i] = (x[i] - baseline[i]) * avg_grad[i] * inv_steps;
    total += result.matrix[i];
  }
  result.f_input = model.logit(x, input.true_length, config.target);
  result.f_baseline = model.logit(baseline, input.true_length, config.target);
  result.completeness_gap =
      std::abs(total - (result.f_input - result.f_baseline));
  return result;
}

AttributionResult token_attributions(const Model& model, const IGResult& ig,
                                     const Encoded& input,
                                     const Vocabulary& vocab) {
  const ModelConfig& mc = model.config();
  const auto dim = static_cast<std::size_t>(mc.embed_dim);
  if (ig.matrix.size() != static_cast<std::size_t>(mc.max_len) * dim)
    throw DimensionMismatch("attribution matrix does not match the model");

  AttributionResult result;
  result.tokens = decode(input, vocab);
  for (int t = 1; t < input.true_length; ++t) {
    double score = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      score += ig.matrix[static_cast<std::size_t>(t) * dim + i];
    result.scores.push_back(score);
  }
  result.prediction = model.forward(input);
  result.completeness_gap = ig.completeness_gap;
  return result;
}

AttributionResult attribute(const Model& model, const Encoded& input,
                            const Vocabulary& vocab, const IGConfig& config) {
  return token_attributions(model, integrated_gradients(model, input, config),
                            input, vocab);
}

BucketLabel bucket_label(double score, const BucketThresholds& thresholds) {
  if (!std::isfinite(score))
    throw InvalidConfig("bucket_label needs a finite score");
  if (std::abs(score) < thresholds.neutral) return BucketLabel::Neutral;
  if (score > 0.0) {
    if (score < thresholds.moderate) return BucketLabel::SlightlyComplex;
    if (score < thresholds.high) return BucketLabel::ModeratelyComplex;
    return BucketLabel::HighlyComplex;
  }
  if (score > -thresholds.moderate) return BucketLabel::SlightlyEasy;
  return BucketLabel::Easy;
}

std::string_view bucket_label_name(BucketLabel label) {
  switch (label) {
    case BucketLabel::Neutral: return "Neutral";
    case BucketLabel::SlightlyEasy: return "Slightly Easy";
    case BucketLabel::Easy: return "Easy";
    case BucketLabel::SlightlyComplex: return "Slightly Complex";
    case BucketLabel::ModeratelyComplex: return "Moderately Complex";
    case BucketLabel::HighlyComplex: return "Highly Complex";
  }
  return "Neutral";
}

}  // namespace e2r
