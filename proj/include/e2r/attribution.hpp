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

#ifndef E2R_ATTRIBUTION_HPP
#define E2R_ATTRIBUTION_HPP

#include <string>
#include <vector>

#include "e2r/model.hpp"

namespace e2r {

enum class BaselineKind { ZeroEmbedding, PadEmbedding };

std::string_view baseline_kind_name(BaselineKind kind);
BaselineKind parse_baseline_kind(std::string_view name);

struct IGConfig {
  int steps = 64;
  BaselineKind baseline = BaselineKind::PadEmbedding;
  int target = 0;
};

/// Per-coordinate integrated gradients of the target logit:
///   IG_i = (x_i - x'_i) * (1/m) * sum_{k=1..m} dF(x' + (k/m)(x - x'))/dx_i,
/// a right-Riemann approximation of the path integral. The completeness
/// gap is |sum_i IG_i - (F(x) - F(x'))|.
struct IGResult {
  std::vector<double> matrix;  // max_len x embed_dim, row-major
  double completeness_gap = 0.0;
  double f_input = 0.0;
  double f_baseline = 0.0;
};

IGResult integrated_gradients(const Model& model, const Encoded& input,
                              const IGConfig& config);

/// Word-level scores: per token, the sum of its embedding-coordinate
/// attributions (sign-preserving). CLS and PAD positions are excluded.
struct AttributionResult {
  std::vector<std::string> tokens;
  std::vector<double> scores;
  Prediction prediction;
  double completeness_gap = 0.0;
};

AttributionResult token_attributions(const Model& model, const IGResult& ig,
                                     const Encoded& input,
                                     const Vocabulary& vocab);

/// integrated_gradients + token_attributions in one call.
AttributionResult attribute(const Model& model, const Encoded& input,
                            const Vocabulary& vocab, const IGConfig& config);

enum class BucketLabel {
  Neutral,
  SlightlyEasy,
  Easy,
  SlightlyComplex,
  ModeratelyComplex,
  HighlyComplex,
};

/// |s| < neutral is Neutral; positive scores then step through Slightly /
/// Moderately / Highly Complex at the three thresholds, negative scores
/// mirror into Slightly Easy / Easy.
struct BucketThresholds {
  double neutral = 0.10;
  double moderate = 0.16;
  double high = 0.20;
};

BucketLabel bucket_label(double score, const BucketThresholds& thresholds = {});
std::string_view bucket_label_name(BucketLabel label);  // "Highly Complex"

}  // namespace e2r

#endif  // E2R_ATTRIBUTION_HPP
