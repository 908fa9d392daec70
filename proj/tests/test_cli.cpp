// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include "doctest.h"
#include "json.hpp"
#include "support/cli_runner.hpp"
#include "support/synthetic.hpp"
#include "support/w2v_writer.hpp"
#include "tweetsense/classifier.hpp"
#include "tweetsense/corpus.hpp"
#include "tweetsense/lexicon.hpp"

using namespace tweetsense;
using testsupport::TempDir;

namespace {

// A small world: embeddings, a labeled training corpus and a test corpus.
struct Fixture {
  TempDir dir{"cli"};
  std::string embeddings = (dir / "vectors.bin").string();
  std::string train = (dir / "train.jsonl").string();
  std::string test = (dir / "test.jsonl").string();
  std::string lexicon = (dir / "lexicon.json").string();
  std::string threshold = (dir / "threshold.json").string();
  std::string results = (dir / "results.jsonl").string();
  std::string report = (dir / "report.json").string();

  Fixture() {
    const auto background = testsupport::background_vocabulary(300, 1);
    const auto space = testsupport::make_cluster_space(32, 2, background);
    const auto table = EmbeddingTable::from_rows(space.tokens, space.rows, space.dim);
    write_embeddings(table, embeddings, EmbeddingFormat::Word2VecBinary);
    testsupport::CorpusShape shape;
    shape.tweets = 200;
    write_jsonl_corpus(testsupport::make_corpus(background, shape, 3, "tr"), train);
    write_jsonl_corpus(testsupport::make_corpus(background, shape, 4, "te"), test);
  }

  testsupport::CliRun build_dict() {
    return testsupport::run_cli({"build-dict", "--corpus", train, "--k", "15", "--out", lexicon});
  }
  testsupport::CliRun calibrate() {
    return testsupport::run_cli({"calibrate", "--corpus", train, "--lexicon", lexicon, "--embeddings",
                                 embeddings, "--out", threshold});
  }
  testsupport::CliRun classify(const std::string& parallelism = "1") {
    return testsupport::run_cli({"classify", "--corpus", test, "--lexicon", lexicon, "--embeddings",
                                 embeddings, "--threshold", threshold, "--out", results,
                                 "--parallelism", parallelism});
  }
};

}  // namespace

TEST_CASE("cli: full pipeline and library equivalence") {
  Fixture f;
  auto run = f.build_dict();
  REQUIRE_MESSAGE(run.code == 0, run.err);
  const auto lexicon = load_lexicon(f.lexicon);
  CHECK(lexicon.entries.size() == 15);
  CHECK_FALSE(lexicon.event_keywords.empty());
  CHECK_FALSE(lexicon.condition_keywords.empty());

  run = f.calibrate();
  REQUIRE_MESSAGE(run.code == 0, run.err);
  const auto threshold = load_threshold(f.threshold);
  CHECK(threshold.lexicon_version == lexicon.version);
  CHECK(threshold.calibration_size == 200);

  run = f.classify("3");
  REQUIRE_MESSAGE(run.code == 0, run.err);
  const auto results = read_results(f.results);
  const auto tweets = ingest(f.test, CorpusFormat::TweetJsonl).tweets;
  REQUIRE(results.size() == tweets.size());
  const auto table = load_embeddings(f.embeddings, EmbeddingFormat::Word2VecBinary);
  const auto library = classify_batch(tweets, lexicon, table, threshold);
  std::string expected;
  for (const auto& r : library) expected += result_to_json_line(r) + "\n";
  CHECK(testsupport::read_file(f.results) == expected);

  run = testsupport::run_cli({"evaluate", "--results", f.results, "--corpus", f.test, "--threshold",
                              f.threshold, "--out", f.report});
  REQUIRE_MESSAGE(run.code == 0, run.err);
  CHECK(run.out == testsupport::read_file(f.report));
  const auto report = nlohmann::json::parse(run.out);
  CHECK(report["n"] == 200);
  CHECK(report["accuracy"]["value"].get<double>() >= 0.95);
  CHECK(report["threshold_used"].get<double>() == threshold.theta);
}

TEST_CASE("cli: evaluate prints accuracy 0.7 on the hand confusion fixture") {
  TempDir dir("cli-eval");
  // tp=3, fp=1, fn=2, tn=4
  const char* predicted[] = {"traffic_related", "traffic_related", "traffic_related", "traffic_related",
                             "unrelated", "unrelated", "unrelated", "unrelated", "unrelated", "unrelated"};
  const char* truth[] = {"traffic_high", "traffic_low", "traffic_high", "unrelated", "traffic_high",
                         "traffic_low", "unrelated", "unrelated", "unrelated", "unrelated"};
  std::string results, corpus;
  for (int i = 0; i < 10; ++i) {
    results += R"({"id":")" + std::to_string(i) + R"(","label":")" + predicted[i] +
               R"(","subtype":null,"score":null,"best_token":null,"best_keyword":null})" "\n";
    corpus += R"({"id":")" + std::to_string(i) + R"(","text":"t","label":")" + truth[i] + "\"}\n";
  }
  testsupport::write_file(dir / "results.jsonl", results);
  testsupport::write_file(dir / "truth.jsonl", corpus);
  save_threshold(Threshold{0.5, 1.0, 4, ""}, dir / "t.json");
  const auto run = testsupport::run_cli({"evaluate", "--results", (dir / "results.jsonl").string(),
                                         "--corpus", (dir / "truth.jsonl").string(), "--threshold",
                                         (dir / "t.json").string()});
  REQUIRE_MESSAGE(run.code == 0, run.err);
  const auto report = nlohmann::json::parse(run.out);
  CHECK(report["accuracy"]["value"].get<double>() == doctest::Approx(0.7));
  CHECK(report["accuracy"]["display"] == "0.7000");
  CHECK(run.err.find("accuracy=0.7000") != std::string::npos);
}

TEST_CASE("cli: score a single text") {
  Fixture f;
  REQUIRE(f.build_dict().code == 0);
  REQUIRE(load_lexicon(f.lexicon).contains("accident"));
  auto run = testsupport::run_cli({"score", "--text", "accident on road", "--lexicon", f.lexicon,
                                   "--embeddings", f.embeddings});
  REQUIRE_MESSAGE(run.code == 0, run.err);
  auto j = nlohmann::json::parse(run.out);
  CHECK(j["score"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(j["best_token"] == "accident");
  CHECK(j["best_keyword"] == "accident");
  CHECK(j["tokens"] == std::vector<std::string>{"accident", "on", "road"});

  run = testsupport::run_cli({"score", "--text", "zzz qqq", "--lexicon", f.lexicon, "--embeddings", f.embeddings});
  REQUIRE(run.code == 0);
  j = nlohmann::json::parse(run.out);
  CHECK(j["score"].is_null());
  CHECK(j["covered_tokens"] == 0);
}

TEST_CASE("cli: exit codes") {
  Fixture f;
  CHECK(testsupport::run_cli({}).code == 1);
  CHECK(testsupport::run_cli({"--help"}).code == 0);
  CHECK(testsupport::run_cli({"classify", "--bogus"}).code == 1);
  CHECK(testsupport::run_cli({"frobnicate"}).code == 1);

  auto run = testsupport::run_cli({"build-dict", "--corpus", f.train});
  CHECK(run.code == 1);
  CHECK(run.err.find("--out") != std::string::npos);
  CHECK(testsupport::run_cli({"build-dict", "--corpus", f.train, "--out", f.lexicon, "--k", "0"}).code == 1);
  CHECK(testsupport::run_cli({"calibrate", "--corpus", f.train, "--lexicon", f.lexicon, "--embeddings",
                              f.embeddings, "--format", "glove", "--out", f.threshold}).code == 1);

  run = testsupport::run_cli({"build-dict", "--corpus", (f.dir / "nope.jsonl").string(), "--out", f.lexicon});
  CHECK(run.code == 2);
  CHECK(run.err.find("FileNotFound") != std::string::npos);
  REQUIRE(f.build_dict().code == 0);
  run = testsupport::run_cli({"calibrate", "--corpus", f.train, "--lexicon", f.lexicon, "--embeddings",
                              f.embeddings, "--format", "text", "--out", f.threshold});
  CHECK(run.code == 2);
}

TEST_CASE("cli: config file with flag precedence") {
  Fixture f;
  testsupport::write_file(f.dir / "config.json", R"({
    "corpus": "train.jsonl", "k": 5, "out": "from-config.json",
    "event_keywords": ["crash"], "condition_keywords": ["jam", "Congestion"]
  })");
  const auto config = (f.dir / "config.json").string();
  auto run = testsupport::run_cli({"build-dict", "--config", config});
  REQUIRE_MESSAGE(run.code == 0, run.err);
  auto lexicon = load_lexicon(f.dir / "from-config.json");
  CHECK(lexicon.entries.size() == 5);

  run = testsupport::run_cli({"build-dict", "--config", config, "--k", "7", "--out", f.lexicon});
  REQUIRE_MESSAGE(run.code == 0, run.err);
  lexicon = load_lexicon(f.lexicon);
  CHECK(lexicon.entries.size() == 7);
  for (const auto& w : lexicon.event_keywords) CHECK(w == "crash");
  for (const auto& w : lexicon.condition_keywords) CHECK((w == "jam" || w == "congestion"));

  testsupport::write_file(f.dir / "bad.json", R"({"korpus": "x"})");
  CHECK(testsupport::run_cli({"build-dict", "--config", (f.dir / "bad.json").string()}).code == 1);

  PartialConfig flags, file;
  file.k = 9;
  file.parallelism = 4;
  flags.k = 3;
  const auto resolved = resolve_config(flags, file);
  CHECK(resolved.k == 3);
  CHECK(resolved.parallelism == 4);
  CHECK(resolved.embedding_format == EmbeddingFormat::Word2VecBinary);
  CHECK(resolved.event_keywords == default_event_keywords());
}

TEST_CASE("cli: seed label filter and CSV corpora") {
  TempDir dir("cli-csv");
  testsupport::write_file(dir / "seed.csv",
                          "id,text,label\n"
                          "1,\"Crash, crash on ORR\",traffic_high\n"
                          "2,jam jam jam,traffic_low\n"
                          "3,movie night,unrelated\n");
  auto run = testsupport::run_cli({"build-dict", "--corpus", (dir / "seed.csv").string(), "--seed-labels",
                                   "high", "--out", (dir / "lex.json").string()});
  REQUIRE_MESSAGE(run.code == 0, run.err);
  auto lexicon = load_lexicon(dir / "lex.json");
  CHECK(lexicon.entries == std::vector<LexiconEntry>{{"crash", 2}, {"orr", 1}});
  CHECK(lexicon.event_keywords == std::vector<std::string>{"crash"});

  run = testsupport::run_cli({"build-dict", "--corpus", (dir / "seed.csv").string(), "--out",
                              (dir / "lex.json").string()});
  REQUIRE(run.code == 0);
  lexicon = load_lexicon(dir / "lex.json");
  CHECK(lexicon.entries.front() == LexiconEntry{"jam", 3});
}

TEST_CASE("cli: classify writes one line per tweet including error-marked ones") {
  Fixture f;
  REQUIRE(f.build_dict().code == 0);
  REQUIRE(f.calibrate().code == 0);
  testsupport::write_file(f.dir / "mixed.jsonl",
                          R"({"id":"1","text":"accident at junction"})" "\n"
                          R"({"id":"2","text":"pothole","geo":{"lat":10,"lon":20}})" "\n");
  const auto run = testsupport::run_cli({"classify", "--corpus", (f.dir / "mixed.jsonl").string(), "--lexicon",
                                         f.lexicon, "--embeddings", f.embeddings, "--threshold", f.threshold,
                                         "--out", f.results, "--max-vocab", "100000"});
  REQUIRE_MESSAGE(run.code == 0, run.err);
  const auto results = read_results(f.results);
  REQUIRE(results.size() == 2);
  CHECK(results[0].label == Label::TrafficRelated);
  CHECK(results[0].subtype.has_value());
}
