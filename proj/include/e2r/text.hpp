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

#ifndef E2R_TEXT_HPP
#define E2R_TEXT_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "e2r/corpus.hpp"

namespace e2r {

/// Word-level vocabulary with dense ids. Immutable after build.
struct Vocabulary {
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kCls = 2;

  std::unordered_map<std::string, int> token_to_id;
  std::vector<std::string> id_to_token;

  int size() const { return static_cast<int>(id_to_token.size()); }
  int id_of(std::string_view token) const;
  const std::string& token_of(int id) const;

  nlohmann::json to_json() const;  // flat {token: id}
  static Vocabulary from_json(const nlohmann::json& doc);
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);
};

/// Lowercased word tokens from both corpus sides with frequency >=
/// min_freq, id order: specials, then (frequency desc, token asc).
Vocabulary build_vocab(const Corpus& corpus, long min_freq);

/// Fixed-length id sequence: [CLS, tokens..., PAD...] of length max_len.
struct Encoded {
  std::vector<int> ids;
  int true_length = 0;
};

Encoded encode(std::string_view text, const Vocabulary& vocab, int max_len);

/// In-vocabulary lowercased tokens, CLS and PAD excluded.
std::vector<std::string> decode(const Encoded& input, const Vocabulary& vocab);

}  // namespace e2r

#endif  // E2R_TEXT_HPP
