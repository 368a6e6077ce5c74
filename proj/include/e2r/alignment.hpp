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

#ifndef E2R_ALIGNMENT_HPP
#define E2R_ALIGNMENT_HPP

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "e2r/attribution.hpp"
#include "e2r/corpus.hpp"

namespace e2r {

/// Overlap between model-attributed complex words and words human editors
/// removed in the Easy-to-Read versions. Counting is per sentence
/// occurrence: a word deduplicates within a sentence but counts again in
/// every other sentence that contains it.
struct AlignmentReport {
  long total_complex_words = 0;
  long removed_complex_words = 0;
  double overlap_ratio = 0.0;  // removed/total, 0 when total is 0
  bool zero_total = false;
  std::vector<std::pair<std::string, long>> top_removed;
};

/// Normalized words whose attribution is >= threshold, deduplicated
/// within the sentence. Surface forms only, no stemming.
std::set<std::string> extract_complex_words(const AttributionResult& attr,
                                            double threshold);

/// Normalized words present in the complex sentence and absent from the
/// union of its simple counterparts.
std::set<std::string> removed_words(
    std::string_view complex_sentence,
    std::span<const std::string> simple_sentences);

/// Aggregates over every pair that has at least one simple side; the
/// attributions map (pair id -> result) must cover all of them.
AlignmentReport alignment_report(
    const Corpus& corpus,
    const std::map<std::string, AttributionResult>& attributions,
    double threshold, int top_n);

/// 0.673062 -> "67.31%".
std::string format_percent(double ratio);

}  // namespace e2r

#endif  // E2R_ALIGNMENT_HPP
