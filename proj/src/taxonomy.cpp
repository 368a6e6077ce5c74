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

#include "e2r/taxonomy.hpp"

#include <algorithm>
#include <fstream>

namespace e2r {

namespace {

struct MacroInfo {
  MacroStrategy macro;
  std::string_view name;
  int default_position;
};

// Transcription is the fixed midpoint, Omission/Explanation the poles.
// In-between positions are metadata defaults, overridable per file.
constexpr std::array<MacroInfo, kNumMacroStrategies> kMacros{{
    {MacroStrategy::Transcription, "Transcription", 0},
    {MacroStrategy::Synonymy, "Synonymy", 2},
    {MacroStrategy::Explanation, "Explanation", 4},
    {MacroStrategy::SyntacticChange, "SyntacticChange", 1},
    {MacroStrategy::Transposition, "Transposition", 2},
    {MacroStrategy::Modulation, "Modulation", 3},
    {MacroStrategy::Anaphora, "Anaphora", -1},
    {MacroStrategy::Omission, "Omission", -4},
    {MacroStrategy::IllocutionaryChange, "IllocutionaryChange", -2},
    {MacroStrategy::Compression, "Compression", -3},
}};

struct ClassInfo {
  ClassLabel label;
  std::string_view name;
  std::string_view display;
};

constexpr std::array<ClassInfo, kNumClassLabels> kClasses{{
    {ClassLabel::Explanation, "Explanation", "Explanation"},
    {ClassLabel::GrammaticalAdjustments, "GrammaticalAdjustments",
     "Grammatical Adjustments"},
    {ClassLabel::Modulation, "Modulation", "Modulation"},
    {ClassLabel::Omission, "Omission", "Omission"},
    {ClassLabel::Substitution, "Substitution", "Substitution"},
    {ClassLabel::Transposition, "Transposition", "Transposition"},
    {ClassLabel::SyntacticChanges, "SyntacticChanges", "Syntactic Changes"},
}};

struct DefaultCode {
  std::string_view code;
  MacroStrategy macro;
  ClassLabel cls;
  std::string_view description;
};

constexpr MacroStrategy kOmi = MacroStrategy::Omission;
constexpr MacroStrategy kCom = MacroStrategy::Compression;
constexpr MacroStrategy kExp = MacroStrategy::Explanation;
constexpr MacroStrategy kSyn = MacroStrategy::SyntacticChange;
constexpr MacroStrategy kAna = MacroStrategy::Anaphora;
constexpr MacroStrategy kSyy = MacroStrategy::Synonymy;
constexpr MacroStrategy kTra = MacroStrategy::Transposition;
constexpr MacroStrategy kMod = MacroStrategy::Modulation;

constexpr ClassLabel kClsOmi = ClassLabel::Omission;
constexpr ClassLabel kClsExp = ClassLabel::Explanation;
constexpr ClassLabel kClsSyn = ClassLabel::SyntacticChanges;
constexpr ClassLabel kClsSub = ClassLabel::Substitution;
constexpr ClassLabel kClsTra = ClassLabel::Transposition;
constexpr ClassLabel kClsMod = ClassLabel::Modulation;

// Compression codes classify as Omission by default: both macro-strategies
// remove text and sit next to each other on the continuum. Override via
// the taxonomy file to reach GrammaticalAdjustments instead.
constexpr std::array<DefaultCode, 25> kDefaultCodes{{
    {"OmiSen", kOmi, kClsOmi, "omission of a useless sentence"},
    {"OmiWor", kOmi, kClsOmi, "omission of a useless word"},
    {"OmiClau", kOmi, kClsOmi, "omission of a useless clause"},
    {"OmiRhet", kOmi, kClsOmi, "omission of a rhetorical construct"},
    {"SinGram", kCom, kClsOmi, "grammatical construct compressed"},
    {"SimGram", kCom, kClsOmi, "grammatical construct simplified"},
    {"SinSem", kCom, kClsOmi, "semantic construct compressed"},
    {"SinPrag", kCom, kClsOmi, "pragmatic construct compressed"},
    {"ExplWor", kExp, kClsExp, "word given for known, explained"},
    {"ExplCont", kExp, kClsExp, "content explained"},
    {"ExplExpr", kExp, kClsExp, "expression given for known, explained"},
    {"HidCont", kExp, kClsExp, "hidden concept made explicit"},
    {"HidGram", kExp, kClsExp, "hidden grammar made explicit"},
    {"WordExpl", kExp, kClsExp, "word explained in place"},
    {"SynChange", kSyn, kClsSyn, "syntactic level changed"},
    {"Clause2Word", kSyn, kClsSyn, "clause turned into a word"},
    {"WordsOrder", kSyn, kClsSyn, "word order linearised"},
    {"GroupOrder", kSyn, kClsSyn, "group order linearised"},
    {"LinearOrderSen", kSyn, kClsSyn, "sentences put in linear order"},
    {"LinearOrderCla", kSyn, kClsSyn, "clauses put in linear order"},
    {"Anaph", kAna, kClsSub, "repetition replaces a synonym"},
    {"SynSem", kSyy, kClsSub, "semantic synonym substituted"},
    {"SemStereo", kSyy, kClsSub, "stereotype substituted for abstraction"},
    {"TranspNoun", kTra, kClsTra, "word class changed to a noun"},
    {"ModInfo", kMod, kClsMod, "information redistributed linearly"},
}};

}  // namespace

std::string_view macro_strategy_name(MacroStrategy macro) {
  for (const auto& m : kMacros) {
    if (m.macro == macro) return m.name;
  }
  throw UnknownCode("invalid macro-strategy value");
}

MacroStrategy parse_macro_strategy(std::string_view name) {
  for (const auto& m : kMacros) {
    if (m.name == name) return m.macro;
  }
  // Spaced spellings used in running text.
  if (name == "Syntactic Change" || name == "Syntactic Changes")
    return MacroStrategy::SyntacticChange;
  if (name == "Illocutionary Change") return MacroStrategy::IllocutionaryChange;
  throw UnknownCode("unknown macro-strategy: " + std::string(name));
}

const std::array<MacroStrategy, kNumMacroStrategies>& all_macro_strategies() {
  static const std::array<MacroStrategy, kNumMacroStrategies> all = [] {
    std::array<MacroStrategy, kNumMacroStrategies> a{};
    for (std::size_t i = 0; i < kMacros.size(); ++i) a[i] = kMacros[i].macro;
    return a;
  }();
  return all;
}

int continuum_position(MacroStrategy macro) {
  for (const auto& m : kMacros) {
    if (m.macro == macro) return m.default_position;
  }
  throw UnknownCode("invalid macro-strategy value");
}

std::string_view class_label_name(ClassLabel label) {
  return kClasses[static_cast<std::size_t>(label)].name;
}

std::string_view class_label_display(ClassLabel label) {
  return kClasses[static_cast<std::size_t>(label)].display;
}

ClassLabel parse_class_label(std::string_view name) {
  for (const auto& c : kClasses) {
    if (c.name == name || c.display == name) return c.label;
  }
  throw UnknownCode("unknown class label: " + std::string(name));
}

bool is_class_label_name(std::string_view name) {
  return std::any_of(kClasses.begin(), kClasses.end(), [&](const ClassInfo& c) {
    return c.name == name || c.display == name;
  });
}

const std::vector<std::string>& class_label_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    v.reserve(kNumClassLabels);
    for (const auto& c : kClasses) v.emplace_back(c.name);
    return v;
  }();
  return names;
}

TaxonomyTable TaxonomyTable::builtin_default() {
  TaxonomyTable t;
  for (const auto& d : kDefaultCodes) {
    t.codes_.push_back(StrategyCode{std::string(d.code), d.macro,
                                    std::string(d.description)});
    t.code_to_class_.emplace(std::string(d.code), d.cls);
  }
  for (const auto& m : kMacros) {
    t.continuum_[static_cast<std::size_t>(m.macro)] = m.default_position;
  }
  t.index_codes();
  t.validate();
  return t;
}

TaxonomyTable TaxonomyTable::from_json(const nlohmann::json& doc) {
  TaxonomyTable t;
  if (!doc.is_object()) throw ParseError("taxonomy document must be an object");
  if (!doc.contains("codes") || !doc["codes"].is_array())
    throw ParseError("taxonomy document missing `codes` array");
  for (const auto& entry : doc["codes"]) {
    if (!entry.is_object() || !entry.contains("code") || !entry.contains("macro"))
      throw ParseError("taxonomy code entry needs `code` and `macro`");
    StrategyCode sc;
    sc.code = entry["code"].get<std::string>();
    sc.macro = parse_macro_strategy(entry["macro"].get<std::string>());
    sc.description = entry.value("description", std::string());
    t.codes_.push_back(std::move(sc));
  }
  if (!doc.contains("code_to_class") || !doc["code_to_class"].is_array())
    throw ParseError("taxonomy document missing `code_to_class` array");
  for (const auto& pair : doc["code_to_class"]) {
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError("`code_to_class` entries must be [code, class] pairs");
    t.code_to_class_[pair[0].get<std::string>()] =
        parse_class_label(pair[1].get<std::string>());
  }
  for (const auto& m : kMacros) {
    t.continuum_[static_cast<std::size_t>(m.macro)] = m.default_position;
  }
  if (doc.contains("continuum")) {
    for (const auto& [name, pos] : doc["continuum"].items()) {
      MacroStrategy macro = parse_macro_strategy(name);
      t.continuum_[static_cast<std::size_t>(macro)] = pos.get<int>();
    }
  }
  t.index_codes();
  t.validate();
  return t;
}

TaxonomyTable TaxonomyTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open taxonomy file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return from_json(doc);
}

nlohmann::json TaxonomyTable::to_json() const {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  auto& codes = doc["codes"] = nlohmann::json::array();
  for (const auto& c : codes_) {
    codes.push_back({{"code", c.code},
                     {"macro", std::string(macro_strategy_name(c.macro))},
                     {"description", c.description}});
  }
  auto& pairs = doc["code_to_class"] = nlohmann::json::array();
  for (const auto& [code, cls] : code_to_class_) {
    pairs.push_back({code, std::string(class_label_name(cls))});
  }
  auto& cont = doc["continuum"] = nlohmann::json::object();
  for (const auto& m : kMacros) {
    cont[std::string(m.name)] = continuum_[static_cast<std::size_t>(m.macro)];
  }
  return doc;
}

void TaxonomyTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write taxonomy file: " + path.string());
  out << to_json().dump(2) << "\n";
}

void TaxonomyTable::index_codes() {
  code_index_.clear();
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    auto [it, inserted] = code_index_.emplace(codes_[i].code, i);
    if (!inserted)
      throw ParseError("duplicate strategy code: " + codes_[i].code);
  }
}

void TaxonomyTable::validate() const {
  const int transcription =
      continuum_[static_cast<std::size_t>(MacroStrategy::Transcription)];
  if (transcription != 0)
    throw InvalidConfig("Transcription must sit at continuum position 0");
  const int omission =
      continuum_[static_cast<std::size_t>(MacroStrategy::Omission)];
  const int explanation =
      continuum_[static_cast<std::size_t>(MacroStrategy::Explanation)];
  for (const auto& m : kMacros) {
    const int pos = continuum_[static_cast<std::size_t>(m.macro)];
    if (pos < -4 || pos > 4)
      throw InvalidConfig("continuum position out of [-4, 4] for " +
                          std::string(m.name));
    if (pos < omission)
      throw InvalidConfig("Omission must hold the minimum continuum position");
    if (pos > explanation)
      throw InvalidConfig(
          "Explanation must hold the maximum continuum position");
  }
  for (const auto& c : codes_) {
    if (code_to_class_.find(c.code) == code_to_class_.end())
      throw InvalidConfig("code_to_class is missing code: " + c.code);
  }
}

const StrategyCode& TaxonomyTable::parse_strategy_code(
    std::string_view code) const {
  auto it = code_index_.find(code);
  if (it == code_index_.end())
    throw UnknownCode("unknown strategy code: " + std::string(code));
  return codes_[it->second];
}

ClassLabel TaxonomyTable::class_label_of(const StrategyCode& code) const {
  return class_label_of(code.code);
}

ClassLabel TaxonomyTable::class_label_of(std::string_view code) const {
  auto it = code_to_class_.find(code);
  if (it == code_to_class_.end())
    throw UnknownCode("no class label mapped for code: " + std::string(code));
  return it->second;
}

int TaxonomyTable::continuum_position(MacroStrategy macro) const {
  return continuum_[static_cast<std::size_t>(macro)];
}

bool TaxonomyTable::has_code(std::string_view code) const {
  return code_index_.find(code) != code_index_.end();
}

}  // namespace e2r
