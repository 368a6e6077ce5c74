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

#include "e2r/run_config.hpp"

namespace e2r {

nlohmann::json RunConfig::to_json() const {
  return nlohmann::json{
      {"command", command},
      {"corpus", corpus_path},
      {"taxonomy", taxonomy_path},
      {"model", model_path},
      {"out", out_dir},
      {"task", task},
      {"sentence", sentence},
      {"target_class", target_class},
      {"max_len", max_len},
      {"min_freq", min_freq},
      {"embed_dim", embed_dim},
      {"hidden_dim", hidden_dim},
      {"encoder", encoder},
      {"ig_steps", ig_steps},
      {"ig_baseline", ig_baseline},
      {"threshold", threshold},
      {"top_n", top_n},
      {"seed", seed},
      {"train",
       {{"learning_rate", train.learning_rate},
        {"batch_size", train.batch_size},
        {"weight_decay", train.weight_decay},
        {"max_epochs", train.max_epochs},
        {"patience", train.patience},
        {"clip_threshold", train.clip_threshold},
        {"folds", train.folds}}}};
}

nlohmann::json output_envelope(const RunConfig& config) {
  return nlohmann::json{{"schema_version", kOutputSchemaVersion},
                        {"run_config", config.to_json()}};
}

}  // namespace e2r
