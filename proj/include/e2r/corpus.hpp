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

#ifndef E2R_CORPUS_HPP
#define E2R_CORPUS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "e2r/taxonomy.hpp"

namespace e2r {

enum class Source { Health, PublicInfo, Politics, Other };

std::string_view source_name(Source source);
/// Lenient: "Health", "PublicInfo" / "Public info", "Politics" (any case,
/// spaces/underscores ignored); everything else is Other.
Source parse_source(std::string_view name);

/// One complex sentence with its Easy-to-Read counterparts. A labelled
/// pair carries exactly one simplification strategy.
struct SentencePair {
  std::string id;
  std::string complex_text;
  std::vector<std::string> simple_texts;
  std::optional<ClassLabel> label;
  Source source = Source::Other;

  bool operator==(const SentencePair&) const = default;
};

struct Corpus {
  std::vector<SentencePair> pairs;
  std::string name;
};

/// Reads UTF-8 JSONL: one object per line with fields
/// {id, source, complex, simple, label}. `label` may be a fine strategy
/// code (resolved through the taxonomy) or a class-label name, or null.
Corpus load_corpus(const std::filesystem::path& path,
                   const TaxonomyTable& taxonomy);
Corpus parse_corpus_jsonl(std::istream& in, std::string name,
                          const TaxonomyTable& taxonomy);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
nlohmann::json pair_to_json(const SentencePair& pair);

/// Whitespace split, then leading/trailing punctuation stripped from each
/// token; internal hyphens/apostrophes survive; empty tokens dropped.
std::vector<std::string> word_tokenize(std::string_view text);

/// Alignment-grade word identity: punctuation-stripped and case-folded.
std::string normalize_word(std::string_view token);

/// (q1, q3) by linear interpolation between closest ranks, i.e. the value
/// at zero-indexed position (n-1)*p. Input need not be sorted.
std::pair<double, double> quartiles(std::vector<double> values);

struct SideStats {
  long words = 0;
  long sentences = 0;
  std::optional<std::pair<double, double>> iqr;

  bool operator==(const SideStats&) const = default;
};

struct SourceRow {
  std::string source;  // source name, or "All" for the total row
  long num_texts = 0;
  SideStats complex_side;
  SideStats simple_side;
};

struct CorpusStats {
  std::vector<SourceRow> rows;  // one per present source, then "All"
};

CorpusStats corpus_stats(const Corpus& corpus);
nlohmann::json stats_to_json(const CorpusStats& stats);
std::string stats_to_csv(const CorpusStats& stats);

}  // namespace e2r

#endif  // E2R_CORPUS_HPP
