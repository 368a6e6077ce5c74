// Integration tests driving the e2rkit binary end to end. The harness
// provides E2RKIT_BIN and E2R_DATA_DIR (see tests/CMakeLists.txt).

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "e2r/taxonomy.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string required_env(const char* name) {
  const char* value = std::getenv(name);
  REQUIRE_MESSAGE(value != nullptr, "missing env var ", name,
                  " (run through ctest)");
  return value;
}

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CmdResult run_cli(const std::string& args) {
  static int serial = 0;
  const fs::path log =
      fs::current_path() / ("cli_log_" + std::to_string(serial++) + ".txt");
  const std::string command =
      required_env("E2RKIT_BIN") + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(command.c_str());
  CmdResult result;
  result.exit_code = WEXITSTATUS(status);
  result.output = e2r::testutil::read_file(log);
  fs::remove(log);
  return result;
}

std::string corpus_path() {
  return (fs::path(required_env("E2R_DATA_DIR")) / "synthetic_corpus.jsonl")
      .string();
}

json read_json(const fs::path& path) {
  return json::parse(e2r::testutil::read_file(path));
}

}  // namespace

TEST_CASE("cli: stats writes JSON and CSV with the run envelope") {
  const auto out = e2r::testutil::fresh_dir("cli_stats");
  const CmdResult r =
      run_cli("stats --corpus " + corpus_path() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  const json doc = read_json(out / "stats.json");
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["run_config"]["command"] == "stats");
  REQUIRE(doc.contains("rows"));
  CHECK(doc["rows"].back()["source"] == "All");
  CHECK(doc["rows"].back()["complex"]["sentences"] == 40);
  const std::string csv = e2r::testutil::read_file(out / "stats.csv");
  CHECK(csv.rfind("# schema_version=1 run_config=", 0) == 0);
  CHECK(csv.find("source,num_texts,complex_words") != std::string::npos);
}

TEST_CASE("cli: missing corpus file exits 2 and names the path") {
  const CmdResult r = run_cli("stats --corpus /no/such/file.jsonl --out .");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("/no/such/file.jsonl") != std::string::npos);
}

TEST_CASE("cli: empty corpus produces zero-row stats and exit 0") {
  const auto out = e2r::testutil::fresh_dir("cli_stats_empty");
  e2r::testutil::write_file(out / "empty.jsonl", "");
  const CmdResult r = run_cli("stats --corpus " + (out / "empty.jsonl").string() +
                              " --out " + out.string());
  CHECK(r.exit_code == 0);
  const json doc = read_json(out / "stats.json");
  CHECK(doc["rows"].size() == 1);  // just the All row
  CHECK(doc["rows"][0]["num_texts"] == 0);
}

TEST_CASE("cli: baseline report reconciles with the closed form") {
  const auto out = e2r::testutil::fresh_dir("cli_baseline");
  const CmdResult r =
      run_cli("baseline --corpus " + corpus_path() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  const json doc = read_json(out / "baseline.json");
  CHECK(doc["majority_class"] == "Explanation");  // 10 of 40
  CHECK(doc["majority_proportion"].get<double>() == doctest::Approx(0.25));
  CHECK(doc["report"]["accuracy"].get<double>() ==
        doctest::Approx(doc["expected"]["accuracy"].get<double>()));
  CHECK(doc["report"]["weighted"]["f1"].get<double>() ==
        doctest::Approx(doc["expected"]["weighted_f1"].get<double>())
            .epsilon(1e-12));
  CHECK(doc["report"]["macro"]["f1"].get<double>() ==
        doctest::Approx(doc["expected"]["macro_f1"].get<double>())
            .epsilon(1e-12));
}

TEST_CASE("cli: train, evaluate, explain and align round trip") {
  const auto out = e2r::testutil::fresh_dir("cli_train");
  const std::string train_args =
      "train --corpus " + corpus_path() + " --folds 2 --seed 9 " +
      "--max-epochs 4 --patience 4 --out " + out.string();
  const CmdResult r = run_cli(train_args);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "fold_0.ckpt.json"));
  CHECK(fs::exists(out / "fold_1.ckpt.json"));
  CHECK(fs::exists(out / "report.txt"));

  const json report = read_json(out / "report.json");
  CHECK(report["run_config"]["train"]["folds"] == 2);
  CHECK(report["folds"].size() == 2);
  CHECK(report["instances"] == 40);
  CHECK(report["averaged"]["total_support"] == 40);

  const std::string history =
      e2r::testutil::read_file(out / "history.csv");
  CHECK(history.find("epoch,fold,train_loss,val_loss,val_macro_f1") !=
        std::string::npos);

  SUBCASE("byte-identical on rerun with the same seed") {
    const std::string report_bytes =
        e2r::testutil::read_file(out / "report.json");
    const std::string ckpt_bytes =
        e2r::testutil::read_file(out / "fold_0.ckpt.json");
    const CmdResult again = run_cli(train_args);
    CHECK(again.exit_code == 0);
    CHECK(e2r::testutil::read_file(out / "report.json") == report_bytes);
    CHECK(e2r::testutil::read_file(out / "history.csv") == history);
    CHECK(e2r::testutil::read_file(out / "fold_0.ckpt.json") == ckpt_bytes);
  }

  SUBCASE("evaluate consumes the checkpoint") {
    const auto eval_out = e2r::testutil::fresh_dir("cli_eval");
    const CmdResult e = run_cli("evaluate --corpus " + corpus_path() +
                                " --model " + (out / "fold_0.ckpt.json").string() +
                                " --out " + eval_out.string());
    CHECK(e.exit_code == 0);
    const json doc = read_json(eval_out / "report.json");
    const double acc = doc["report"]["accuracy"].get<double>();
    CHECK(acc >= 0.0);
    CHECK(acc <= 1.0);
  }

  SUBCASE("explain emits attributions with buckets and the gap") {
    const auto ex_out = e2r::testutil::fresh_dir("cli_explain");
    const CmdResult e = run_cli("explain --corpus " + corpus_path() +
                                " --model " + (out / "fold_0.ckpt.json").string() +
                                " --steps 32 --out " + ex_out.string());
    CHECK(e.exit_code == 0);
    const json doc = read_json(ex_out / "explanations.json");
    CHECK(doc["run_config"]["ig_steps"] == 32);
    REQUIRE(doc["explanations"].size() == 40);
    const json& first = doc["explanations"][0];
    CHECK(first.contains("completeness_gap"));
    CHECK(first["prediction"]["probabilities"].size() == 7);
    REQUIRE(first["words"].size() > 0);
    CHECK(first["words"][0].contains("word"));
    CHECK(first["words"][0].contains("attribution"));
    CHECK(first["words"][0].contains("bucket"));
  }

  SUBCASE("explain at 256 steps records a tight completeness gap") {
    const auto ex_out = e2r::testutil::fresh_dir("cli_explain_256");
    const CmdResult e = run_cli(
        "explain --sentence \"Explain the meaning of this concept.\" "
        "--model " + (out / "fold_0.ckpt.json").string() +
        " --steps 256 --out " + ex_out.string());
    CHECK(e.exit_code == 0);
    const json doc = read_json(ex_out / "explanations.json");
    CHECK(doc["run_config"]["ig_steps"] == 256);
    CHECK(doc["explanations"][0]["completeness_gap"].get<double>() <= 1e-3);
  }

  SUBCASE("explain honours a fixed target class, display spelling included") {
    const auto ex_out = e2r::testutil::fresh_dir("cli_explain_target");
    const CmdResult e = run_cli(
        "explain --sentence \"Sentence split clause.\" --target "
        "\"Syntactic Changes\" --model " + (out / "fold_0.ckpt.json").string() +
        " --out " + ex_out.string());
    CHECK(e.exit_code == 0);
    const json doc = read_json(ex_out / "explanations.json");
    CHECK(doc["explanations"][0]["target"] == "SyntacticChanges");

    const CmdResult bad = run_cli(
        "explain --sentence \"x.\" --target NotAClass --model " +
        (out / "fold_0.ckpt.json").string() + " --out " + ex_out.string());
    CHECK(bad.exit_code == 2);
  }

  SUBCASE("explain a single sentence with a table") {
    const auto ex_out = e2r::testutil::fresh_dir("cli_explain_one");
    const CmdResult e = run_cli(
        "explain --sentence \"Explain the meaning of this concept.\" "
        "--model " + (out / "fold_0.ckpt.json").string() + " --table --out " +
        ex_out.string());
    CHECK(e.exit_code == 0);
    CHECK(e.output.find("Attribution") != std::string::npos);
    CHECK(e.output.find("Contribution") != std::string::npos);
    const json doc = read_json(ex_out / "explanations.json");
    CHECK(doc["explanations"].size() == 1);
  }

  SUBCASE("align writes the overlap report and the frequency CSV") {
    const auto al_out = e2r::testutil::fresh_dir("cli_align");
    const CmdResult a = run_cli("align --corpus " + corpus_path() +
                                " --model " + (out / "fold_0.ckpt.json").string() +
                                " --steps 16 --threshold 0.05 --top-n 10 " +
                                "--out " + al_out.string());
    CHECK(a.exit_code == 0);
    const json doc = read_json(al_out / "align.json");
    CHECK(doc["total_complex_words"].get<long>() >=
          doc["removed_complex_words"].get<long>());
    CHECK(doc.contains("overlap_percent"));
    const std::string csv =
        e2r::testutil::read_file(al_out / "top_removed.csv");
    CHECK(csv.find("word,frequency") != std::string::npos);
  }
}

TEST_CASE("cli: complexity task trains a binary difficulty model") {
  const auto out = e2r::testutil::fresh_dir("cli_binary");
  const CmdResult r = run_cli(
      "train --corpus " + corpus_path() + " --task complexity --folds 2 " +
      "--seed 3 --max-epochs 4 --patience 4 --out " + out.string());
  CHECK(r.exit_code == 0);
  const json report = read_json(out / "report.json");
  CHECK(report["class_names"] ==
        json(std::vector<std::string>{"Simple", "Complex"}));
  CHECK(report["instances"] == 80);  // 40 complex + 40 simple sides

  const auto al_out = e2r::testutil::fresh_dir("cli_binary_align");
  const CmdResult a = run_cli("align --corpus " + corpus_path() + " --model " +
                              (out / "fold_0.ckpt.json").string() +
                              " --steps 8 --out " + al_out.string());
  CHECK(a.exit_code == 0);
  CHECK(read_json(al_out / "align.json")["task"] == "complexity");

  SUBCASE("evaluate rebuilds the binary dataset from the checkpoint task") {
    const auto ev_out = e2r::testutil::fresh_dir("cli_binary_eval");
    const CmdResult e = run_cli("evaluate --corpus " + corpus_path() +
                                " --model " +
                                (out / "fold_0.ckpt.json").string() +
                                " --out " + ev_out.string());
    CHECK(e.exit_code == 0);
    const json doc = read_json(ev_out / "report.json");
    CHECK(doc["task"] == "complexity");
    CHECK(doc["report"]["total_support"] == 80);
  }
}

TEST_CASE("cli: the self-attention encoder trains through the same pipeline") {
  const auto out = e2r::testutil::fresh_dir("cli_attention");
  const CmdResult r = run_cli(
      "train --corpus " + corpus_path() + " --encoder self_attention " +
      "--folds 2 --seed 4 --max-epochs 3 --patience 3 --out " + out.string());
  CHECK(r.exit_code == 0);
  const json report = read_json(out / "report.json");
  CHECK(report["run_config"]["encoder"] == "self_attention");

  const auto ex_out = e2r::testutil::fresh_dir("cli_attention_explain");
  const CmdResult e = run_cli(
      "explain --sentence \"Meaning definition concept.\" --model " +
      (out / "fold_0.ckpt.json").string() + " --steps 16 --out " +
      ex_out.string());
  CHECK(e.exit_code == 0);
}

TEST_CASE("cli: taxonomy export round-trips the embedded table") {
  const auto out = e2r::testutil::fresh_dir("cli_taxonomy");
  const CmdResult r = run_cli("taxonomy export --out " + out.string());
  CHECK(r.exit_code == 0);
  const e2r::TaxonomyTable exported =
      e2r::TaxonomyTable::load(out / "taxonomy.json");
  const e2r::TaxonomyTable builtin = e2r::TaxonomyTable::builtin_default();
  CHECK(exported.code_to_class() == builtin.code_to_class());
  CHECK(exported.codes().size() == builtin.codes().size());
}

TEST_CASE("cli: corpus with an unknown label exits 2") {
  const auto out = e2r::testutil::fresh_dir("cli_badlabel");
  e2r::testutil::write_file(
      out / "bad.jsonl",
      R"({"id":"x","complex":"some text","label":"NotALabel"})" "\n");
  const CmdResult r = run_cli("stats --corpus " + (out / "bad.jsonl").string() +
                              " --out " + out.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("NotALabel") != std::string::npos);
}

TEST_CASE("cli: numerical failure during training exits 3") {
  const auto out = e2r::testutil::fresh_dir("cli_diverge");
  const CmdResult r = run_cli(
      "train --corpus " + corpus_path() + " --folds 2 --seed 1 --lr 1e18 " +
      "--weight-decay 1 --max-epochs 40 --patience 40 --out " + out.string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("numerical error") != std::string::npos);
}

TEST_CASE("cli: config file values are overridden by flags") {
  const auto out = e2r::testutil::fresh_dir("cli_config");
  e2r::testutil::write_file(out / "run.toml",
                            "[train]\nfolds=2\nmax-epochs=3\npatience=3\n"
                            "seed=3\nmax-len=32\n");
  const CmdResult r = run_cli("--config " + (out / "run.toml").string() +
                              " train --corpus " + corpus_path() +
                              " --seed 12 --out " + out.string());
  CHECK(r.exit_code == 0);
  const json doc = read_json(out / "report.json");
  CHECK(doc["run_config"]["train"]["folds"] == 2);      // from the file
  CHECK(doc["run_config"]["max_len"] == 32);            // from the file
  CHECK(doc["run_config"]["seed"] == 12);               // flag wins
}
