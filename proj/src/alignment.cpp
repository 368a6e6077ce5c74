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

#include "e2r/alignment.hpp"

#include <algorithm>
#include <cstdio>

namespace e2r {

std::set<std::string> extract_complex_words(const AttributionResult& attr,
                                            double threshold) {
  if (threshold <= 0.0)
    throw InvalidConfig("complexity threshold must be positive");
  std::set<std::string> words;
  for (std::size_t i = 0; i < attr.tokens.size(); ++i) {
    if (attr.scores[i] < threshold) continue;
    std::string word = normalize_word(attr.tokens[i]);
    if (!word.empty()) words.insert(std::move(word));
  }
  return words;
}

std::set<std::string> removed_words(
    std::string_view complex_sentence,
    std::span<const std::string> simple_sentences) {
  std::set<std::string> kept;
  for (const auto& sentence : simple_sentences) {
    for (const auto& token : word_tokenize(sentence)) {
      std::string word = normalize_word(token);
      if (!word.empty()) kept.insert(std::move(word));
    }
  }
  std::set<std::string> removed;
  for (const auto& token : word_tokenize(complex_sentence)) {
    std::string word = normalize_word(token);
    if (!word.empty() && kept.find(word) == kept.end())
      removed.insert(std::move(word));
  }
  return removed;
}

AlignmentReport alignment_report(
    const Corpus& corpus,
    const std::map<std::string, AttributionResult>& attributions,
    double threshold, int top_n) {
  if (top_n < 0) throw InvalidConfig("top_n must be non-negative");
  AlignmentReport report;
  std::map<std::string, long> removed_freq;
  bool any_simple = false;
  for (const auto& pair : corpus.pairs) {
    if (pair.simple_texts.empty()) continue;
    any_simple = true;
    auto it = attributions.find(pair.id);
    if (it == attributions.end())
      throw Error("no attribution supplied for pair: " + pair.id);
    const std::set<std::string> complex_words =
        extract_complex_words(it->second, threshold);
    const std::set<std::string> removed =
        removed_words(pair.complex_text, pair.simple_texts);
    report.total_complex_words += static_cast<long>(complex_words.size());
    for (const auto& word : complex_words) {
      if (removed.find(word) != removed.end()) {
        report.removed_complex_words += 1;
        removed_freq[word] += 1;
      }
    }
  }
  if (!any_simple)
    throw EmptyInput("no pair has a simplified side to align against");

  if (report.total_complex_words > 0) {
    report.overlap_ratio =
        static_cast<double>(report.removed_complex_words) /
        static_cast<double>(report.total_complex_words);
  } else {
    report.zero_total = true;
  }

  std::vector<std::pair<std::string, long>> ranked(removed_freq.begin(),
                                                   removed_freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<int>(ranked.size()) > top_n)
    ranked.resize(static_cast<std::size_t>(top_n));
  report.top_removed = std::move(ranked);
  return report;
}

std::string format_percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", ratio * 100.0);
  return buf;
}

}  // namespace e2r
