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

#ifndef E2R_TAXONOMY_HPP
#define E2R_TAXONOMY_HPP

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "e2r/errors.hpp"

namespace e2r {

// Top-level simplification strategy families. Each sits on a text
// addition/deduction continuum: Omission at one pole (most deduction),
// Explanation at the other (most addition), Transcription in the middle.
enum class MacroStrategy {
  Transcription,
  Synonymy,
  Explanation,
  SyntacticChange,
  Transposition,
  Modulation,
  Anaphora,
  Omission,
  IllocutionaryChange,
  Compression,
};

inline constexpr int kNumMacroStrategies = 10;

std::string_view macro_strategy_name(MacroStrategy macro);
MacroStrategy parse_macro_strategy(std::string_view name);  // throws UnknownCode
const std::array<MacroStrategy, kNumMacroStrategies>& all_macro_strategies();

/// Default continuum position of a macro-strategy, in [-4, +4].
/// Transcription is 0, Omission -4, Explanation +4; the rest are
/// interpolated metadata and can be overridden per taxonomy file.
int continuum_position(MacroStrategy macro);

// The seven classifier labels. Enum order is the canonical class-index
// order used for tie-breaking everywhere.
enum class ClassLabel {
  Explanation = 0,
  GrammaticalAdjustments,
  Modulation,
  Omission,
  Substitution,
  Transposition,
  SyntacticChanges,
};

inline constexpr int kNumClassLabels = 7;

std::string_view class_label_name(ClassLabel label);     // "SyntacticChanges"
std::string_view class_label_display(ClassLabel label);  // "Syntactic Changes"
ClassLabel parse_class_label(std::string_view name);     // accepts either form
bool is_class_label_name(std::string_view name);
const std::vector<std::string>& class_label_names();  // all 7, enum order

/// A fine-grained annotation code, e.g. "OmiSen".
struct StrategyCode {
  std::string code;
  MacroStrategy macro;
  std::string description;
};

/// The code table plus the code -> classifier-label mapping. Immutable
/// after construction; safe for concurrent reads.
class TaxonomyTable {
public:
  /// The embedded default table. GrammaticalAdjustments has no default
  /// codes and is reachable only through a user-supplied mapping.
  static TaxonomyTable builtin_default();

  static TaxonomyTable from_json(const nlohmann::json& doc);
  static TaxonomyTable load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
  void save(const std::filesystem::path& path) const;

  /// Case-sensitive lookup. Throws UnknownCode for absent codes.
  const StrategyCode& parse_strategy_code(std::string_view code) const;

  ClassLabel class_label_of(const StrategyCode& code) const;
  ClassLabel class_label_of(std::string_view code) const;

  /// Configured continuum position (default unless overridden).
  int continuum_position(MacroStrategy macro) const;

  bool has_code(std::string_view code) const;
  const std::vector<StrategyCode>& codes() const { return codes_; }
  const std::map<std::string, ClassLabel, std::less<>>& code_to_class() const {
    return code_to_class_;
  }

private:
  TaxonomyTable() = default;
  void index_codes();
  void validate() const;

  std::vector<StrategyCode> codes_;
  std::map<std::string, std::size_t, std::less<>> code_index_;
  std::map<std::string, ClassLabel, std::less<>> code_to_class_;
  std::array<int, kNumMacroStrategies> continuum_{};
};

}  // namespace e2r

#endif  // E2R_TAXONOMY_HPP
