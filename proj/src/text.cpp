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

#include "e2r/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

namespace e2r {

namespace {

const char* kSpecialTokens[] = {"<pad>", "<unk>", "<cls>"};

std::string lowercase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

int Vocabulary::id_of(std::string_view token) const {
  auto it = token_to_id.find(std::string(token));
  return it == token_to_id.end() ? kUnk : it->second;
}

const std::string& Vocabulary::token_of(int id) const {
  if (id < 0 || id >= size())
    throw DimensionMismatch("token id out of range: " + std::to_string(id));
  return id_to_token[static_cast<std::size_t>(id)];
}

nlohmann::json Vocabulary::to_json() const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [token, id] : token_to_id) doc[token] = id;
  return doc;
}

Vocabulary Vocabulary::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("vocabulary must be a JSON object");
  Vocabulary vocab;
  vocab.id_to_token.resize(doc.size());
  for (const auto& [token, id_json] : doc.items()) {
    const int id = id_json.get<int>();
    if (id < 0 || id >= static_cast<int>(doc.size()))
      throw ParseError("vocabulary ids must be dense in [0, size)");
    if (!vocab.id_to_token[static_cast<std::size_t>(id)].empty())
      throw ParseError("duplicate vocabulary id: " + std::to_string(id));
    vocab.id_to_token[static_cast<std::size_t>(id)] = token;
    vocab.token_to_id[token] = id;
  }
  for (int special = 0; special < 3; ++special) {
    if (vocab.size() <= special ||
        vocab.id_to_token[static_cast<std::size_t>(special)] !=
            kSpecialTokens[special])
      throw ParseError("vocabulary is missing reserved special tokens");
  }
  return vocab;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write vocabulary file: " + path.string());
  out << to_json().dump(2) << "\n";
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open vocabulary file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return from_json(doc);
}

Vocabulary build_vocab(const Corpus& corpus, long min_freq) {
  if (min_freq < 1) throw InvalidConfig("min_freq must be >= 1");
  std::map<std::string, long> freq;
  for (const auto& pair : corpus.pairs) {
    for (const auto& token : word_tokenize(pair.complex_text))
      ++freq[lowercase(token)];
    for (const auto& text : pair.simple_texts)
      for (const auto& token : word_tokenize(text)) ++freq[lowercase(token)];
  }
  std::vector<std::pair<std::string, long>> kept;
  for (const auto& [token, count] : freq) {
    if (count >= min_freq) kept.emplace_back(token, count);
  }
  if (kept.empty())
    throw EmptyCorpus("no tokens survive the frequency cutoff");
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary vocab;
  for (const char* special : kSpecialTokens) {
    vocab.token_to_id.emplace(special, vocab.size());
    vocab.id_to_token.emplace_back(special);
  }
  for (const auto& [token, count] : kept) {
    vocab.token_to_id.emplace(token, vocab.size());
    vocab.id_to_token.push_back(token);
  }
  return vocab;
}

Encoded encode(std::string_view text, const Vocabulary& vocab, int max_len) {
  if (max_len < 2) throw InvalidConfig("max_len must be >= 2");
  Encoded enc;
  enc.ids.assign(static_cast<std::size_t>(max_len), Vocabulary::kPad);
  enc.ids[0] = Vocabulary::kCls;
  int pos = 1;
  for (const auto& token : word_tokenize(text)) {
    if (pos >= max_len) break;
    enc.ids[static_cast<std::size_t>(pos++)] = vocab.id_of(lowercase(token));
  }
  enc.true_length = pos;
  return enc;
}

std::vector<std::string> decode(const Encoded& input, const Vocabulary& vocab) {
  std::vector<std::string> tokens;
  for (int t = 1; t < input.true_length; ++t) {
    tokens.push_back(vocab.token_of(input.ids[static_cast<std::size_t>(t)]));
  }
  return tokens;
}

}  // namespace e2r
