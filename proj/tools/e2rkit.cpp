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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "e2r/alignment.hpp"
#include "e2r/attribution.hpp"
#include "e2r/corpus.hpp"
#include "e2r/evaluation.hpp"
#include "e2r/model.hpp"
#include "e2r/run_config.hpp"
#include "e2r/taxonomy.hpp"
#include "e2r/text.hpp"
#include "e2r/training.hpp"

namespace fs = std::filesystem;
using namespace e2r;

namespace {

TaxonomyTable load_taxonomy(const RunConfig& cfg) {
  if (cfg.taxonomy_path.empty()) return TaxonomyTable::builtin_default();
  return TaxonomyTable::load(cfg.taxonomy_path);
}

Corpus load_corpus_checked(const RunConfig& cfg, const TaxonomyTable& taxonomy) {
  if (cfg.corpus_path.empty())
    throw InvalidConfig("a corpus file is required (--corpus)");
  return load_corpus(cfg.corpus_path, taxonomy);
}

void write_json_file(const fs::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write output file: " + path.string());
  out << doc.dump(2) << "\n";
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write output file: " + path.string());
  out << content;
}

/// CSV and text outputs carry the run configuration as comment lines.
std::string file_preamble(const RunConfig& cfg) {
  return "# schema_version=" + std::to_string(kOutputSchemaVersion) +
         " run_config=" + cfg.to_json().dump() + "\n";
}

fs::path ensure_out_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

Dataset dataset_for_task(const RunConfig& cfg, const Corpus& corpus,
                         const Vocabulary& vocab, int max_len) {
  if (cfg.task == "strategy")
    return make_strategy_dataset(corpus, vocab, max_len);
  if (cfg.task == "complexity")
    return make_binary_dataset(corpus, vocab, max_len);
  throw InvalidConfig("unknown task: " + cfg.task +
                      " (expected strategy or complexity)");
}

int find_class(const std::vector<std::string>& class_names,
               const std::string& name) {
  for (std::size_t c = 0; c < class_names.size(); ++c)
    if (class_names[c] == name) return static_cast<int>(c);
  // Accept display spellings of the strategy labels ("Syntactic Changes").
  if (is_class_label_name(name)) {
    const std::string canonical(class_label_name(parse_class_label(name)));
    for (std::size_t c = 0; c < class_names.size(); ++c)
      if (class_names[c] == canonical) return static_cast<int>(c);
  }
  throw UnknownCode("class not in this model: " + name);
}

nlohmann::json probabilities_json(const Prediction& pred,
                                  const std::vector<std::string>& class_names) {
  nlohmann::json probs = nlohmann::json::array();
  for (std::size_t c = 0; c < pred.probabilities.size(); ++c) {
    probs.push_back({{"class", class_names[c]},
                     {"probability", pred.probabilities[c]}});
  }
  return probs;
}

int cmd_stats(const RunConfig& cfg) {
  const TaxonomyTable taxonomy = load_taxonomy(cfg);
  const Corpus corpus = load_corpus_checked(cfg, taxonomy);
  const CorpusStats stats = corpus_stats(corpus);
  const fs::path out = ensure_out_dir(cfg);

  nlohmann::json doc = output_envelope(cfg);
  doc["name"] = corpus.name;
  doc.update(stats_to_json(stats));
  write_json_file(out / "stats.json", doc);
  write_text_file(out / "stats.csv", file_preamble(cfg) + stats_to_csv(stats));
  std::cout << stats_to_csv(stats);
  return 0;
}

int cmd_train(const RunConfig& cfg) {
  const TaxonomyTable taxonomy = load_taxonomy(cfg);
  const Corpus corpus = load_corpus_checked(cfg, taxonomy);
  const Vocabulary vocab = build_vocab(corpus, cfg.min_freq);
  const Dataset data = dataset_for_task(cfg, corpus, vocab, cfg.max_len);
  if (data.inputs.empty())
    throw EmptyInput("no labelled instances in the corpus");

  ModelConfig mc;
  mc.vocab_size = vocab.size();
  mc.embed_dim = cfg.embed_dim;
  mc.hidden_dim = cfg.hidden_dim;
  mc.num_classes = static_cast<int>(data.class_names.size());
  mc.max_len = cfg.max_len;
  mc.seed = cfg.seed;
  mc.encoder = parse_encoder_kind(cfg.encoder);

  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;

  const CrossValResult cv = cross_validate(data, mc, tc);
  const fs::path out = ensure_out_dir(cfg);

  for (const std::string& warning : cv.warnings)
    std::cerr << "warning: " << warning << "\n";

  write_text_file(out / "history.csv", file_preamble(cfg) + history_csv(cv));

  nlohmann::json folds = nlohmann::json::array();
  for (const FoldResult& fold : cv.folds) {
    const fs::path ckpt_path =
        out / ("fold_" + std::to_string(fold.fold_index) + ".ckpt.json");
    save_checkpoint(ckpt_path, *fold.model, vocab, data.class_names, cfg.task);
    folds.push_back({{"fold_index", fold.fold_index},
                     {"best_epoch", fold.best_epoch},
                     {"epochs_run", fold.history.size()},
                     {"train_accuracy", fold.train_accuracy},
                     {"checkpoint", ckpt_path.filename().string()},
                     {"report", report_to_json(fold.report)}});
  }

  nlohmann::json doc = output_envelope(cfg);
  doc["task"] = cfg.task;
  doc["class_names"] = data.class_names;
  doc["instances"] = data.inputs.size();
  doc["warnings"] = cv.warnings;
  doc["averaged"] = report_to_json(cv.averaged);
  doc["folds"] = folds;
  write_json_file(out / "report.json", doc);

  std::string text = file_preamble(cfg) + "\n" + report_to_text(cv.averaged);
  write_text_file(out / "report.txt", text);
  std::cout << "cross-validation (" << tc.folds << " folds, "
            << data.inputs.size() << " instances)\n"
            << report_to_text(cv.averaged);
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  if (cfg.model_path.empty())
    throw InvalidConfig("a model checkpoint is required (--model)");
  const Checkpoint ckpt = load_checkpoint(cfg.model_path);
  const Model model = model_from_checkpoint(ckpt);
  const TaxonomyTable taxonomy = load_taxonomy(cfg);
  const Corpus corpus = load_corpus_checked(cfg, taxonomy);

  RunConfig task_cfg = cfg;
  task_cfg.task = ckpt.task;
  const Dataset data =
      dataset_for_task(task_cfg, corpus, ckpt.vocab, ckpt.config.max_len);
  if (data.inputs.empty())
    throw EmptyInput("no labelled instances to evaluate");

  std::vector<int> predicted;
  predicted.reserve(data.inputs.size());
  for (const Encoded& input : data.inputs)
    predicted.push_back(model.forward(input).predicted);
  const ClassificationReport report =
      classification_report(data.labels, predicted, ckpt.class_names);

  const fs::path out = ensure_out_dir(cfg);
  nlohmann::json doc = output_envelope(cfg);
  doc["task"] = ckpt.task;
  doc["report"] = report_to_json(report);
  write_json_file(out / "report.json", doc);
  write_text_file(out / "report.txt",
                  file_preamble(cfg) + "\n" + report_to_text(report));
  std::cout << report_to_text(report);
  return 0;
}

int cmd_baseline(const RunConfig& cfg) {
  const TaxonomyTable taxonomy = load_taxonomy(cfg);
  const Corpus corpus = load_corpus_checked(cfg, taxonomy);
  // The baseline never looks at the text, so reuse the label extraction
  // with a minimal throwaway vocabulary.
  Vocabulary vocab;
  vocab.token_to_id = {{"<pad>", 0}, {"<unk>", 1}, {"<cls>", 2}};
  vocab.id_to_token = {"<pad>", "<unk>", "<cls>"};
  const Dataset data = dataset_for_task(cfg, corpus, vocab, 2);
  if (data.labels.empty()) throw EmptyInput("no labelled instances");

  const int num_classes = static_cast<int>(data.class_names.size());
  const MajorityBaseline baseline = majority_baseline(data.labels, num_classes);
  const std::vector<int> predicted(data.labels.size(), baseline.predict());
  const ClassificationReport report =
      classification_report(data.labels, predicted, data.class_names);

  long modal_count = 0;
  for (int label : data.labels)
    if (label == baseline.modal_class) ++modal_count;
  const double proportion = static_cast<double>(modal_count) /
                            static_cast<double>(data.labels.size());
  const BaselineScores expected =
      baseline_expected_scores(proportion, num_classes);

  const fs::path out = ensure_out_dir(cfg);
  nlohmann::json doc = output_envelope(cfg);
  doc["task"] = cfg.task;
  doc["majority_class"] =
      data.class_names[static_cast<std::size_t>(baseline.modal_class)];
  doc["majority_proportion"] = proportion;
  doc["report"] = report_to_json(report);
  doc["expected"] = {{"accuracy", expected.accuracy},
                     {"weighted_f1", expected.weighted_f1},
                     {"macro_f1", expected.macro_f1}};
  write_json_file(out / "baseline.json", doc);
  write_text_file(out / "baseline.txt",
                  file_preamble(cfg) + "\n" + report_to_text(report));
  std::cout << "majority class: " << doc["majority_class"].get<std::string>()
            << " (proportion " << proportion << ")\n"
            << report_to_text(report);
  return 0;
}

struct ExplainInput {
  std::string id;
  std::string text;
};

int cmd_explain(const RunConfig& cfg, bool print_table) {
  if (cfg.model_path.empty())
    throw InvalidConfig("a model checkpoint is required (--model)");
  const Checkpoint ckpt = load_checkpoint(cfg.model_path);
  const Model model = model_from_checkpoint(ckpt);

  std::vector<ExplainInput> inputs;
  if (!cfg.sentence.empty()) {
    inputs.push_back({"sentence", cfg.sentence});
  } else {
    const TaxonomyTable taxonomy = load_taxonomy(cfg);
    const Corpus corpus = load_corpus_checked(cfg, taxonomy);
    for (const auto& pair : corpus.pairs)
      inputs.push_back({pair.id, pair.complex_text});
  }

  IGConfig ig;
  ig.steps = cfg.ig_steps;
  ig.baseline = parse_baseline_kind(cfg.ig_baseline);

  nlohmann::json explanations = nlohmann::json::array();
  for (const ExplainInput& item : inputs) {
    const Encoded enc = encode(item.text, ckpt.vocab, ckpt.config.max_len);
    const Prediction pred = model.forward(enc);
    ig.target = cfg.target_class.empty()
                    ? pred.predicted
                    : find_class(ckpt.class_names, cfg.target_class);
    const AttributionResult attr = attribute(model, enc, ckpt.vocab, ig);

    // Display the words as typed; encode() saw the same token sequence.
    std::vector<std::string> words = word_tokenize(item.text);
    words.resize(attr.scores.size());

    nlohmann::json word_rows = nlohmann::json::array();
    for (std::size_t i = 0; i < words.size(); ++i) {
      word_rows.push_back(
          {{"word", words[i]},
           {"attribution", attr.scores[i]},
           {"bucket",
            std::string(bucket_label_name(bucket_label(attr.scores[i])))}});
    }
    explanations.push_back(
        {{"id", item.id},
         {"sentence", item.text},
         {"prediction",
          {{"predicted",
            ckpt.class_names[static_cast<std::size_t>(pred.predicted)]},
           {"probabilities", probabilities_json(pred, ckpt.class_names)}}},
         {"target", ckpt.class_names[static_cast<std::size_t>(ig.target)]},
         {"words", word_rows},
         {"completeness_gap", attr.completeness_gap}});

    if (print_table) {
      std::size_t width = std::string("Word").size();
      for (const auto& w : words) width = std::max(width, w.size());
      std::cout << item.text << "\npredicted: "
                << ckpt.class_names[static_cast<std::size_t>(pred.predicted)]
                << "  completeness_gap: " << attr.completeness_gap << "\n";
      std::printf("%-*s  %11s  %s\n", static_cast<int>(width), "Word",
                  "Attribution", "Contribution");
      for (std::size_t i = 0; i < words.size(); ++i) {
        std::printf("%-*s  %11.4f  %s\n", static_cast<int>(width),
                    words[i].c_str(), attr.scores[i],
                    std::string(bucket_label_name(bucket_label(attr.scores[i])))
                        .c_str());
      }
      std::cout << "\n";
    }
  }

  const fs::path out = ensure_out_dir(cfg);
  nlohmann::json doc = output_envelope(cfg);
  doc["task"] = ckpt.task;
  doc["explanations"] = explanations;
  write_json_file(out / "explanations.json", doc);
  if (!print_table)
    std::cout << "wrote " << explanations.size() << " explanations to "
              << (out / "explanations.json").string() << "\n";
  return 0;
}

int cmd_align(const RunConfig& cfg) {
  if (cfg.model_path.empty())
    throw InvalidConfig("a model checkpoint is required (--model)");
  const Checkpoint ckpt = load_checkpoint(cfg.model_path);
  const Model model = model_from_checkpoint(ckpt);
  const TaxonomyTable taxonomy = load_taxonomy(cfg);
  const Corpus corpus = load_corpus_checked(cfg, taxonomy);

  IGConfig ig;
  ig.steps = cfg.ig_steps;
  ig.baseline = parse_baseline_kind(cfg.ig_baseline);
  const bool binary = ckpt.task == "complexity";
  const int complex_class =
      binary ? find_class(ckpt.class_names, "Complex") : 0;

  std::map<std::string, AttributionResult> attributions;
  for (const auto& pair : corpus.pairs) {
    if (pair.simple_texts.empty()) continue;
    const Encoded enc =
        encode(pair.complex_text, ckpt.vocab, ckpt.config.max_len);
    ig.target = binary ? complex_class : model.forward(enc).predicted;
    attributions.emplace(pair.id, attribute(model, enc, ckpt.vocab, ig));
  }

  const AlignmentReport report =
      alignment_report(corpus, attributions, cfg.threshold, cfg.top_n);

  const fs::path out = ensure_out_dir(cfg);
  nlohmann::json top = nlohmann::json::array();
  std::string csv = file_preamble(cfg) + "word,frequency\n";
  for (const auto& [word, freq] : report.top_removed) {
    top.push_back({word, freq});
    csv += word + "," + std::to_string(freq) + "\n";
  }
  nlohmann::json doc = output_envelope(cfg);
  doc["task"] = ckpt.task;
  doc["total_complex_words"] = report.total_complex_words;
  doc["removed_complex_words"] = report.removed_complex_words;
  doc["overlap_ratio"] = report.overlap_ratio;
  doc["overlap_percent"] = format_percent(report.overlap_ratio);
  doc["zero_total"] = report.zero_total;
  doc["top_removed"] = top;
  write_json_file(out / "align.json", doc);
  write_text_file(out / "top_removed.csv", csv);
  std::cout << "removed " << report.removed_complex_words << " of "
            << report.total_complex_words << " complex words ("
            << format_percent(report.overlap_ratio) << ")\n";
  return 0;
}

int cmd_taxonomy_export(const RunConfig& cfg) {
  const TaxonomyTable taxonomy = load_taxonomy(cfg);
  const fs::path out = ensure_out_dir(cfg);
  taxonomy.save(out / "taxonomy.json");
  std::cout << "wrote " << (out / "taxonomy.json").string() << "\n";
  return 0;
}

int run_guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

void add_corpus_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--corpus", cfg.corpus_path, "Corpus JSONL file");
  cmd->add_option("--taxonomy", cfg.taxonomy_path,
                  "Taxonomy JSON file (default: embedded table)");
  cmd->add_option("--out", cfg.out_dir, "Output directory");
  cmd->add_option("--seed", cfg.seed, "Random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "e2rkit - classify Easy-to-Read simplification strategies, train and "
      "cross-validate the classifier, explain predictions with integrated "
      "gradients, and align attributed complex words with human edits"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML-style config file; command-line flags take precedence");
  app.set_version_flag("--version", "e2rkit 0.1.0");

  RunConfig cfg;
  bool explain_table = false;

  CLI::App* stats = app.add_subcommand("stats", "Corpus statistics table");
  add_corpus_options(stats, cfg);

  CLI::App* train =
      app.add_subcommand("train", "Stratified cross-validated training");
  add_corpus_options(train, cfg);
  train->add_option("--task", cfg.task, "strategy or complexity");
  train->add_option("--folds", cfg.train.folds, "Cross-validation folds");
  train->add_option("--max-len", cfg.max_len, "Maximum token sequence length");
  train->add_option("--min-freq", cfg.min_freq, "Vocabulary frequency cutoff");
  train->add_option("--embed-dim", cfg.embed_dim, "Embedding dimension");
  train->add_option("--hidden-dim", cfg.hidden_dim, "Hidden layer width");
  train->add_option("--encoder", cfg.encoder, "mean_pool or self_attention");
  train->add_option("--lr", cfg.train.learning_rate, "Learning rate");
  train->add_option("--batch-size", cfg.train.batch_size, "Mini-batch size");
  train->add_option("--weight-decay", cfg.train.weight_decay,
                    "Decoupled weight decay");
  train->add_option("--max-epochs", cfg.train.max_epochs, "Epoch cap");
  train->add_option("--patience", cfg.train.patience,
                    "Early-stopping patience in epochs");
  train->add_option("--clip", cfg.train.clip_threshold,
                    "Gradient-norm clipping threshold");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Score a checkpoint on a labelled corpus");
  add_corpus_options(evaluate, cfg);
  evaluate->add_option("--model", cfg.model_path, "Checkpoint file")
      ->required();

  CLI::App* baseline =
      app.add_subcommand("baseline", "Majority-class baseline report");
  add_corpus_options(baseline, cfg);
  baseline->add_option("--task", cfg.task, "strategy or complexity");

  CLI::App* explain = app.add_subcommand(
      "explain", "Integrated-gradients attributions per sentence");
  add_corpus_options(explain, cfg);
  explain->add_option("--model", cfg.model_path, "Checkpoint file")->required();
  explain->add_option("--steps", cfg.ig_steps, "IG interpolation steps");
  explain->add_option("--ig-baseline", cfg.ig_baseline, "pad or zero");
  explain->add_option("--target", cfg.target_class,
                      "Fixed target class (default: the predicted class)");
  explain->add_option("--sentence", cfg.sentence,
                      "Explain one ad-hoc sentence instead of a corpus");
  explain->add_flag("--table", explain_table,
                    "Print an aligned attribution table per sentence");

  CLI::App* align = app.add_subcommand(
      "align", "Overlap of attributed complex words with removed words");
  add_corpus_options(align, cfg);
  align->add_option("--model", cfg.model_path, "Checkpoint file")->required();
  align->add_option("--steps", cfg.ig_steps, "IG interpolation steps");
  align->add_option("--ig-baseline", cfg.ig_baseline, "pad or zero");
  align->add_option("--threshold", cfg.threshold,
                    "Attribution threshold for a word to count as complex");
  align->add_option("--top-n", cfg.top_n, "Size of the removed-word ranking");

  CLI::App* taxonomy = app.add_subcommand("taxonomy", "Taxonomy utilities");
  taxonomy->require_subcommand(1);
  CLI::App* taxonomy_export =
      taxonomy->add_subcommand("export", "Write the taxonomy table as JSON");
  taxonomy_export->add_option("--taxonomy", cfg.taxonomy_path,
                              "Taxonomy JSON file to validate and re-export");
  taxonomy_export->add_option("--out", cfg.out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  if (stats->parsed()) cfg.command = "stats";
  if (train->parsed()) cfg.command = "train";
  if (evaluate->parsed()) cfg.command = "evaluate";
  if (baseline->parsed()) cfg.command = "baseline";
  if (explain->parsed()) cfg.command = "explain";
  if (align->parsed()) cfg.command = "align";
  if (taxonomy->parsed()) cfg.command = "taxonomy export";

  if (stats->parsed()) return run_guarded([&] { return cmd_stats(cfg); });
  if (train->parsed()) return run_guarded([&] { return cmd_train(cfg); });
  if (evaluate->parsed()) return run_guarded([&] { return cmd_evaluate(cfg); });
  if (baseline->parsed()) return run_guarded([&] { return cmd_baseline(cfg); });
  if (explain->parsed())
    return run_guarded([&] { return cmd_explain(cfg, explain_table); });
  if (align->parsed()) return run_guarded([&] { return cmd_align(cfg); });
  if (taxonomy->parsed())
    return run_guarded([&] { return cmd_taxonomy_export(cfg); });
  return 1;
}
