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

#ifndef E2R_EVALUATION_HPP
#define E2R_EVALUATION_HPP

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "e2r/taxonomy.hpp"

namespace e2r {

/// rows = gold, columns = predicted.
struct ConfusionMatrix {
  std::vector<std::string> class_order;
  std::vector<long> counts;  // row-major C x C

  int num_classes() const { return static_cast<int>(class_order.size()); }
  long at(int gold, int predicted) const {
    return counts[static_cast<std::size_t>(gold) *
                      static_cast<std::size_t>(num_classes()) +
                  static_cast<std::size_t>(predicted)];
  }
};

ConfusionMatrix confusion_matrix(std::span<const int> gold,
                                 std::span<const int> predicted,
                                 std::vector<std::string> class_order);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long support = 0;
};

struct ClassificationReport {
  std::vector<std::string> class_order;
  std::vector<ClassMetrics> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
  double accuracy = 0.0;
  long total_support = 0;
};

/// 2PR/(P+R), 0 when both are 0.
double f1_score(double precision, double recall);

/// P = TP/(TP+FP), R = TP/(TP+FN); zero denominators score 0, matching
/// report rows for never-predicted classes. Macro averages run over the
/// full class_order; weighted averages are support-weighted.
ClassificationReport classification_report(std::span<const int> gold,
                                           std::span<const int> predicted,
                                           std::vector<std::string> class_order);
ClassificationReport classification_report(
    const std::vector<ClassLabel>& gold,
    const std::vector<ClassLabel>& predicted);

/// Constant predictor returning the modal training class (lowest class
/// index on ties).
struct MajorityBaseline {
  int modal_class = 0;
  int predict() const { return modal_class; }
};

MajorityBaseline majority_baseline(std::span<const int> train_labels,
                                   int num_classes);
MajorityBaseline majority_baseline(const std::vector<ClassLabel>& train_labels);

/// Closed-form scores of a constant majority predictor on a label set with
/// majority proportion p and C classes:
///   accuracy = p, weighted_f1 = 2p^2/(1+p), macro_f1 = (2p/(1+p))/C.
struct BaselineScores {
  double accuracy = 0.0;
  double weighted_f1 = 0.0;
  double macro_f1 = 0.0;
};

BaselineScores baseline_expected_scores(double majority_proportion,
                                        int num_classes);

/// Aligned-column table: per-class rows, Avg (Macro), Avg (Weighted),
/// Accuracy, Support, at 2 decimal places.
std::string report_to_text(const ClassificationReport& report);
nlohmann::json report_to_json(const ClassificationReport& report);

}  // namespace e2r

#endif  // E2R_EVALUATION_HPP
