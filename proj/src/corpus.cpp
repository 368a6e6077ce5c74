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

#include "e2r/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace e2r {

namespace {

bool is_ascii_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

std::string fold_key(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::optional<ClassLabel> resolve_label(const nlohmann::json& value,
                                        const TaxonomyTable& taxonomy,
                                        std::size_t line) {
  if (value.is_null()) return std::nullopt;
  if (!value.is_string())
    throw ParseError("`label` must be a string or null", line);
  const std::string text = value.get<std::string>();
  if (is_class_label_name(text)) return parse_class_label(text);
  if (taxonomy.has_code(text)) return taxonomy.class_label_of(text);
  throw UnknownCode("line " + std::to_string(line) +
                    ": label is neither a class label nor a known strategy "
                    "code: " +
                    text);
}

}  // namespace

std::string_view source_name(Source source) {
  switch (source) {
    case Source::Health: return "Health";
    case Source::PublicInfo: return "PublicInfo";
    case Source::Politics: return "Politics";
    case Source::Other: return "Other";
  }
  return "Other";
}

Source parse_source(std::string_view name) {
  const std::string key = fold_key(name);
  if (key == "health") return Source::Health;
  if (key == "publicinfo" || key == "publicinformation") return Source::PublicInfo;
  if (key == "politics") return Source::Politics;
  return Source::Other;
}

Corpus load_corpus(const std::filesystem::path& path,
                   const TaxonomyTable& taxonomy) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file: " + path.string());
  return parse_corpus_jsonl(in, path.stem().string(), taxonomy);
}

Corpus parse_corpus_jsonl(std::istream& in, std::string name,
                          const TaxonomyTable& taxonomy) {
  Corpus corpus;
  corpus.name = std::move(name);
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    if (!record.is_object())
      throw ParseError("record must be a JSON object", lineno);
    for (const char* field : {"id", "complex"}) {
      if (!record.contains(field))
        throw ParseError(std::string("record missing field `") + field + "`",
                         lineno);
    }
    SentencePair pair;
    if (!record["id"].is_string())
      throw ParseError("`id` must be a string", lineno);
    pair.id = record["id"].get<std::string>();
    if (!record["complex"].is_string())
      throw ParseError("`complex` must be a string", lineno);
    pair.complex_text = record["complex"].get<std::string>();
    if (pair.complex_text.empty())
      throw ParseError("`complex` must be non-empty", lineno);
    if (record.contains("simple") && !record["simple"].is_null()) {
      if (!record["simple"].is_array())
        throw ParseError("`simple` must be an array of strings", lineno);
      for (const auto& s : record["simple"]) {
        if (!s.is_string())
          throw ParseError("`simple` must be an array of strings", lineno);
        pair.simple_texts.push_back(s.get<std::string>());
      }
    }
    if (record.contains("label"))
      pair.label = resolve_label(record["label"], taxonomy, lineno);
    if (record.contains("source") && !record["source"].is_null())
      pair.source = parse_source(record["source"].get<std::string>());
    if (!seen_ids.insert(pair.id).second)
      throw DuplicateId("duplicate pair id: " + pair.id);
    corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

nlohmann::json pair_to_json(const SentencePair& pair) {
  nlohmann::json record;
  record["id"] = pair.id;
  record["source"] = std::string(source_name(pair.source));
  record["complex"] = pair.complex_text;
  record["simple"] = pair.simple_texts;
  if (pair.label)
    record["label"] = std::string(class_label_name(*pair.label));
  else
    record["label"] = nullptr;
  return record;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write corpus file: " + path.string());
  for (const auto& pair : corpus.pairs) {
    out << pair_to_json(pair).dump() << "\n";
  }
}

std::vector<std::string> word_tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == start) continue;
    std::string_view raw = text.substr(start, i - start);
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && is_ascii_punct(raw[begin])) ++begin;
    while (end > begin && is_ascii_punct(raw[end - 1])) --end;
    if (end > begin) tokens.emplace_back(raw.substr(begin, end - begin));
  }
  return tokens;
}

std::string normalize_word(std::string_view token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && is_ascii_punct(token[begin])) ++begin;
  while (end > begin && is_ascii_punct(token[end - 1])) --end;
  std::string out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    out.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(token[i]))));
  }
  return out;
}

std::pair<double, double> quartiles(std::vector<double> values) {
  if (values.empty())
    throw EmptyInput("quartiles of an empty sample are undefined");
  std::sort(values.begin(), values.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {at(0.25), at(0.75)};
}

namespace {

struct SideAccum {
  long words = 0;
  long sentences = 0;
  std::vector<double> lengths;

  void add(const std::string& text) {
    const auto n = static_cast<long>(word_tokenize(text).size());
    words += n;
    sentences += 1;
    lengths.push_back(static_cast<double>(n));
  }
  SideStats finish() const {
    SideStats s;
    s.words = words;
    s.sentences = sentences;
    if (!lengths.empty()) s.iqr = quartiles(lengths);
    return s;
  }
};

struct RowAccum {
  long num_texts = 0;
  SideAccum complex_side;
  SideAccum simple_side;
};

}  // namespace

CorpusStats corpus_stats(const Corpus& corpus) {
  std::map<Source, RowAccum> per_source;
  RowAccum total;
  for (const auto& pair : corpus.pairs) {
    RowAccum& row = per_source[pair.source];
    for (RowAccum* acc : {&row, &total}) {
      acc->num_texts += 1;
      acc->complex_side.add(pair.complex_text);
      for (const auto& s : pair.simple_texts) acc->simple_side.add(s);
    }
  }
  CorpusStats stats;
  for (Source source : {Source::Health, Source::PublicInfo, Source::Politics,
                        Source::Other}) {
    auto it = per_source.find(source);
    if (it == per_source.end()) continue;
    SourceRow row;
    row.source = std::string(source_name(source));
    row.num_texts = it->second.num_texts;
    row.complex_side = it->second.complex_side.finish();
    row.simple_side = it->second.simple_side.finish();
    stats.rows.push_back(std::move(row));
  }
  SourceRow all;
  all.source = "All";
  all.num_texts = total.num_texts;
  all.complex_side = total.complex_side.finish();
  all.simple_side = total.simple_side.finish();
  stats.rows.push_back(std::move(all));
  return stats;
}

namespace {

nlohmann::json side_to_json(const SideStats& side) {
  nlohmann::json j;
  j["words"] = side.words;
  j["sentences"] = side.sentences;
  if (side.iqr)
    j["iqr"] = {side.iqr->first, side.iqr->second};
  else
    j["iqr"] = nullptr;
  return j;
}

}  // namespace

nlohmann::json stats_to_json(const CorpusStats& stats) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : stats.rows) {
    rows.push_back({{"source", row.source},
                    {"num_texts", row.num_texts},
                    {"complex", side_to_json(row.complex_side)},
                    {"simple", side_to_json(row.simple_side)}});
  }
  return nlohmann::json{{"rows", rows}};
}

std::string stats_to_csv(const CorpusStats& stats) {
  std::ostringstream out;
  out << "source,num_texts,complex_words,complex_sentences,complex_iqr_q1,"
         "complex_iqr_q3,simple_words,simple_sentences,simple_iqr_q1,"
         "simple_iqr_q3\n";
  auto put_side = [&](const SideStats& side) {
    out << "," << side.words << "," << side.sentences;
    if (side.iqr)
      out << "," << side.iqr->first << "," << side.iqr->second;
    else
      out << ",,";
  };
  for (const auto& row : stats.rows) {
    out << row.source << "," << row.num_texts;
    put_side(row.complex_side);
    put_side(row.simple_side);
    out << "\n";
  }
  return out.str();
}

}  // namespace e2r
