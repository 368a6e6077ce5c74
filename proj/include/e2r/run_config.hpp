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

#ifndef E2R_RUN_CONFIG_HPP
#define E2R_RUN_CONFIG_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "e2r/training.hpp"

namespace e2r {

inline constexpr int kOutputSchemaVersion = 1;

/// Fully resolved settings of one CLI run (defaults, then config file,
/// then flags). Serialized into every output file for reproducibility.
struct RunConfig {
  std::string command;
  std::string corpus_path;
  std::string taxonomy_path;  // empty = embedded default table
  std::string model_path;
  std::string out_dir = "out";
  std::string task = "strategy";
  std::string sentence;      // explain: ad-hoc input instead of a corpus
  std::string target_class;  // explain: fixed attribution target
  int max_len = 64;
  long min_freq = 1;
  int embed_dim = 16;
  int hidden_dim = 32;
  std::string encoder = "mean_pool";
  int ig_steps = 64;
  std::string ig_baseline = "pad";
  double threshold = 0.10;
  int top_n = 20;
  std::uint64_t seed = 42;
  TrainConfig train;

  nlohmann::json to_json() const;
};

/// {"schema_version": ..., "run_config": ...} envelope every output uses.
nlohmann::json output_envelope(const RunConfig& config);

}  // namespace e2r

#endif  // E2R_RUN_CONFIG_HPP
