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

#include "e2r/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace e2r {

namespace {

std::vector<int> to_indices(const std::vector<ClassLabel>& labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (ClassLabel label : labels) out.push_back(static_cast<int>(label));
  return out;
}

std::string fixed2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

}  // namespace

ConfusionMatrix confusion_matrix(std::span<const int> gold,
                                 std::span<const int> predicted,
                                 std::vector<std::string> class_order) {
  if (gold.size() != predicted.size())
    throw LengthMismatch("gold and predicted label lists differ in length");
  const int num_classes = static_cast<int>(class_order.size());
  ConfusionMatrix cm;
  cm.class_order = std::move(class_order);
  cm.counts.assign(
      static_cast<std::size_t>(num_classes) * static_cast<std::size_t>(num_classes), 0);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const int g = gold[i];
    const int p = predicted[i];
    if (g < 0 || g >= num_classes || p < 0 || p >= num_classes)
      throw DimensionMismatch("label index outside the class order");
    cm.counts[static_cast<std::size_t>(g) * static_cast<std::size_t>(num_classes) +
              static_cast<std::size_t>(p)] += 1;
  }
  return cm;
}

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  if (denom <= 0.0) return 0.0;
  return 2.0 * precision * recall / denom;
}

ClassificationReport classification_report(
    std::span<const int> gold, std::span<const int> predicted,
    std::vector<std::string> class_order) {
  if (gold.empty()) throw EmptyInput("cannot report on an empty label list");
  ConfusionMatrix cm = confusion_matrix(gold, predicted, std::move(class_order));
  const int num_classes = cm.num_classes();

  ClassificationReport report;
  report.class_order = cm.class_order;
  report.per_class.resize(static_cast<std::size_t>(num_classes));
  long correct = 0;
  for (int c = 0; c < num_classes; ++c) {
    long tp = cm.at(c, c);
    long gold_count = 0;
    long pred_count = 0;
    for (int j = 0; j < num_classes; ++j) {
      gold_count += cm.at(c, j);
      pred_count += cm.at(j, c);
    }
    ClassMetrics& m = report.per_class[static_cast<std::size_t>(c)];
    m.support = gold_count;
    m.precision = pred_count > 0
                      ? static_cast<double>(tp) / static_cast<double>(pred_count)
                      : 0.0;
    m.recall = gold_count > 0
                   ? static_cast<double>(tp) / static_cast<double>(gold_count)
                   : 0.0;
    m.f1 = f1_score(m.precision, m.recall);
    correct += tp;
  }
  const auto total = static_cast<long>(gold.size());
  report.total_support = total;
  report.accuracy = static_cast<double>(correct) / static_cast<double>(total);
  for (const ClassMetrics& m : report.per_class) {
    report.macro_precision += m.precision;
    report.macro_recall += m.recall;
    report.macro_f1 += m.f1;
    const double w = static_cast<double>(m.support) / static_cast<double>(total);
    report.weighted_precision += w * m.precision;
    report.weighted_recall += w * m.recall;
    report.weighted_f1 += w * m.f1;
  }
  report.macro_precision /= num_classes;
  report.macro_recall /= num_classes;
  report.macro_f1 /= num_classes;
  return report;
}

ClassificationReport classification_report(
    const std::vector<ClassLabel>& gold,
    const std::vector<ClassLabel>& predicted) {
  return classification_report(to_indices(gold), to_indices(predicted),
                               class_label_names());
}

MajorityBaseline majority_baseline(std::span<const int> train_labels,
                                   int num_classes) {
  if (train_labels.empty())
    throw EmptyInput("majority baseline needs at least one training label");
  std::vector<long> counts(static_cast<std::size_t>(num_classes), 0);
  for (int label : train_labels) {
    if (label < 0 || label >= num_classes)
      throw DimensionMismatch("label index outside the class order");
    counts[static_cast<std::size_t>(label)] += 1;
  }
  MajorityBaseline baseline;
  long best = -1;
  for (int c = 0; c < num_classes; ++c) {
    if (counts[static_cast<std::size_t>(c)] > best) {
      best = counts[static_cast<std::size_t>(c)];
      baseline.modal_class = c;
    }
  }
  return baseline;
}

MajorityBaseline majority_baseline(const std::vector<ClassLabel>& train_labels) {
  return majority_baseline(to_indices(train_labels), kNumClassLabels);
}

BaselineScores baseline_expected_scores(double majority_proportion,
                                        int num_classes) {
  const double p = majority_proportion;
  BaselineScores scores;
  scores.accuracy = p;
  scores.weighted_f1 = 2.0 * p * p / (1.0 + p);
  scores.macro_f1 = (2.0 * p / (1.0 + p)) / static_cast<double>(num_classes);
  return scores;
}

std::string report_to_text(const ClassificationReport& report) {
  std::size_t name_width = std::string("Avg (Weighted)").size();
  for (const auto& name : report.class_order)
    name_width = std::max(name_width, name.size());

  std::ostringstream out;
  auto row = [&](const std::string& name, const std::string& p,
                 const std::string& r, const std::string& f1,
                 const std::string& support) {
    out << name << std::string(name_width - name.size(), ' ');
    for (const std::string* cell : {&p, &r, &f1, &support}) {
      out << "  " << std::string(cell->size() < 9 ? 9 - cell->size() : 0, ' ')
          << *cell;
    }
    out << "\n";
  };
  row("Class", "Precision", "Recall", "F1-Score", "Support");
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const ClassMetrics& m = report.per_class[c];
    row(report.class_order[c], fixed2(m.precision), fixed2(m.recall),
        fixed2(m.f1), std::to_string(m.support));
  }
  row("Avg (Macro)", fixed2(report.macro_precision),
      fixed2(report.macro_recall), fixed2(report.macro_f1), "");
  row("Avg (Weighted)", fixed2(report.weighted_precision),
      fixed2(report.weighted_recall), fixed2(report.weighted_f1), "");
  row("Accuracy", "", "", fixed2(report.accuracy),
      std::to_string(report.total_support));
  return out.str();
}

nlohmann::json report_to_json(const ClassificationReport& report) {
  nlohmann::json per_class = nlohmann::json::array();
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const ClassMetrics& m = report.per_class[c];
    per_class.push_back({{"class", report.class_order[c]},
                         {"precision", m.precision},
                         {"recall", m.recall},
                         {"f1", m.f1},
                         {"support", m.support}});
  }
  return nlohmann::json{
      {"per_class", per_class},
      {"macro", {{"precision", report.macro_precision},
                 {"recall", report.macro_recall},
                 {"f1", report.macro_f1}}},
      {"weighted", {{"precision", report.weighted_precision},
                    {"recall", report.weighted_recall},
                    {"f1", report.weighted_f1}}},
      {"accuracy", report.accuracy},
      {"total_support", report.total_support}};
}

}  // namespace e2r
