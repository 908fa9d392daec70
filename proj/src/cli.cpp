// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include "tweetsense/cli.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tweetsense/classifier.hpp"
#include "tweetsense/error.hpp"
#include "tweetsense/evaluation.hpp"
#include "tweetsense/lexicon.hpp"

namespace tweetsense {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kMaxReportedWarnings = 20;

EmbeddingFormat parse_embedding_format(const std::string& text) {
  if (text == "binary") return EmbeddingFormat::Word2VecBinary;
  if (text == "text") return EmbeddingFormat::Word2VecText;
  throw UsageError("--format must be 'binary' or 'text', got '" + text + "'");
}

CorpusFormat parse_corpus_format(const std::string& text) {
  if (text == "jsonl") return CorpusFormat::TweetJsonl;
  if (text == "csv") return CorpusFormat::LabeledCsv;
  throw UsageError("--corpus-format must be 'jsonl' or 'csv', got '" + text + "'");
}

SeedLabels parse_seed_labels(const std::string& text) {
  if (text == "all") return SeedLabels::All;
  if (text == "high") return SeedLabels::High;
  if (text == "low") return SeedLabels::Low;
  throw UsageError("--seed-labels must be 'all', 'high' or 'low', got '" + text + "'");
}

std::set<std::string> parse_keyword_list(const std::string& text) {
  std::set<std::string> words;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    for (auto& token : tokenize(item)) words.insert(std::move(token));
  }
  return words;
}

template <typename T>
std::optional<T> pick(const std::optional<T>& flag, const std::optional<T>& file) {
  return flag ? flag : file;
}

template <typename T>
T pick(const std::optional<T>& flag, const std::optional<T>& file, T fallback) {
  if (flag) return *flag;
  if (file) return *file;
  return fallback;
}

const fs::path& require(const std::optional<fs::path>& value, const char* flag,
                        const char* command) {
  if (!value || value->empty()) {
    throw UsageError(std::string(command) + " needs " + flag + " (flag or config file)");
  }
  return *value;
}

void report_ingest(const IngestResult& ingested, const fs::path& path, std::ostream& err) {
  for (std::size_t i = 0; i < ingested.rejects.size() && i < kMaxReportedWarnings; ++i) {
    err << "warning: " << path.string() << ":" << ingested.rejects[i].line
        << ": rejected: " << ingested.rejects[i].reason << '\n';
  }
  if (ingested.rejects.size() > kMaxReportedWarnings) {
    err << "warning: " << ingested.rejects.size() - kMaxReportedWarnings
        << " more rejected records\n";
  }
}

IngestResult ingest_corpus(const RunConfig& config, const char* command, std::ostream& err) {
  const auto& path = require(config.corpus, "--corpus", command);
  auto ingested = ingest(path, config.corpus_format.value_or(corpus_format_for(path)));
  report_ingest(ingested, path, err);
  return ingested;
}

EmbeddingTable load_table(const RunConfig& config, const char* command, std::ostream& err) {
  LoadOptions options;
  options.max_vocab = config.max_vocab;
  options.no_header = config.no_header;
  options.keep_raw = false;
  auto table = load_embeddings(require(config.embeddings, "--embeddings", command),
                               config.embedding_format, options);
  const auto& warnings = table.warnings();
  for (std::size_t i = 0; i < warnings.size() && i < kMaxReportedWarnings; ++i) {
    err << "warning: embeddings: " << warnings[i] << '\n';
  }
  if (warnings.size() > kMaxReportedWarnings) {
    err << "warning: embeddings: " << warnings.size() - kMaxReportedWarnings << " more warnings\n";
  }
  return table;
}

int cmd_build_dict(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto& out_path = require(config.out, "--out", "build-dict");
  const auto ingested = ingest_corpus(config, "build-dict", err);

  std::vector<TokenizedTweet> seed;
  for (const auto& t : ingested.tweets) {
    if (!t.label || !is_traffic(*t.label)) continue;
    if (config.seed_labels == SeedLabels::High && *t.label != CorpusLabel::TrafficHigh) continue;
    if (config.seed_labels == SeedLabels::Low && *t.label != CorpusLabel::TrafficLow) continue;
    seed.push_back(tokenize_tweet(t));
  }
  const StopwordList stopwords =
      config.stopwords ? load_stopwords(*config.stopwords) : default_stopwords();
  auto lexicon = build_lexicon(seed, config.k, stopwords);
  lexicon = assign_subtypes(std::move(lexicon), config.event_keywords, config.condition_keywords);
  save_lexicon(lexicon, out_path);
  out << "lexicon " << lexicon.version << ": " << lexicon.entries.size() << " keywords from "
      << seed.size() << " seed tweets -> " << out_path.string() << '\n';
  return 0;
}

int cmd_calibrate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto& out_path = require(config.out, "--out", "calibrate");
  const auto lexicon = load_lexicon(require(config.lexicon, "--lexicon", "calibrate"));
  const auto ingested = ingest_corpus(config, "calibrate", err);
  const auto table = load_table(config, "calibrate", err);
  if (lexicon.empty()) throw Error(ErrorCode::EmptyLexicon, "lexicon has no keywords");

  const KeywordScorer scorer(table, ranked_keywords(lexicon));
  std::vector<ScoredExample> examples;
  std::size_t unlabeled = 0;
  for (const auto& t : ingested.tweets) {
    if (!t.label) {
      ++unlabeled;
      continue;
    }
    examples.push_back({scorer.score(tokenize(t.text)).value, is_traffic(*t.label)});
  }
  if (unlabeled > 0) err << "warning: skipped " << unlabeled << " unlabeled tweets\n";
  auto threshold = calibrate_threshold(examples);
  threshold.lexicon_version = lexicon.version;
  save_threshold(threshold, out_path);
  out << "theta " << threshold.theta << " (F1 " << threshold.objective_value << " on "
      << threshold.calibration_size << " tweets) -> " << out_path.string() << '\n';
  return 0;
}

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto& out_path = require(config.out, "--out", "classify");
  const auto lexicon = load_lexicon(require(config.lexicon, "--lexicon", "classify"));
  const auto threshold = load_threshold(require(config.threshold, "--threshold", "classify"));
  const auto ingested = ingest_corpus(config, "classify", err);
  const auto table = load_table(config, "classify", err);
  if (!threshold.lexicon_version.empty() && threshold.lexicon_version != lexicon.version) {
    err << "warning: threshold was calibrated against lexicon " << threshold.lexicon_version
        << ", using " << lexicon.version << '\n';
  }
  const auto results =
      classify_batch(ingested.tweets, lexicon, table, threshold, config.parallelism);
  write_results(results, out_path);
  std::size_t positives = 0;
  std::size_t errors = 0;
  for (const auto& r : results) {
    positives += r.label == Label::TrafficRelated ? 1 : 0;
    errors += r.error ? 1 : 0;
  }
  out << results.size() << " tweets classified, " << positives << " traffic related";
  if (errors) out << ", " << errors << " errors";
  out << " -> " << out_path.string() << '\n';
  return 0;
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto& results_path = require(config.results, "--results", "evaluate");
  const auto threshold = load_threshold(require(config.threshold, "--threshold", "evaluate"));
  const auto results = read_results(results_path);
  const auto ingested = ingest_corpus(config, "evaluate", err);

  std::map<std::string, CorpusLabel> truth_by_id;
  for (const auto& t : ingested.tweets) {
    if (t.label) truth_by_id.emplace(t.id, *t.label);
  }
  std::vector<Label> predictions;
  std::vector<Label> truths;
  predictions.reserve(results.size());
  truths.reserve(results.size());
  for (const auto& r : results) {
    auto it = truth_by_id.find(r.tweet_id);
    if (it == truth_by_id.end()) {
      throw Error(ErrorCode::LengthMismatch, "no labeled truth for result id '" + r.tweet_id + "'");
    }
    predictions.push_back(r.label);
    truths.push_back(is_traffic(it->second) ? Label::TrafficRelated : Label::Unrelated);
  }
  const auto report = evaluate(predictions, truths, threshold.theta);
  const auto json = report_to_json(report);
  out << json;
  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary | std::ios::trunc);
    file << json;
    if (!file) throw Error(ErrorCode::IoError, "cannot write report '" + config.out->string() + "'");
  }
  err << format_summary(report) << '\n';
  return 0;
}

int cmd_score(const RunConfig& config, const std::string& text, std::ostream& out,
              std::ostream& err) {
  const auto lexicon = load_lexicon(require(config.lexicon, "--lexicon", "score"));
  const auto table = load_table(config, "score", err);
  const TokenizedTweet tokens{"", tokenize(text)};
  const auto score = score_tweet(tokens, lexicon, table);

  nlohmann::ordered_json j;
  j["tokens"] = tokens.tokens;
  j["score"] = score.value ? nlohmann::ordered_json(*score.value) : nlohmann::ordered_json(nullptr);
  j["best_token"] = score.best_pair ? nlohmann::ordered_json(score.best_pair->tweet_token)
                                    : nlohmann::ordered_json(nullptr);
  j["best_keyword"] = score.best_pair ? nlohmann::ordered_json(score.best_pair->keyword)
                                      : nlohmann::ordered_json(nullptr);
  j["covered_tokens"] = score.covered_tokens;
  if (config.threshold) {
    const auto threshold = load_threshold(*config.threshold);
    j["label"] = std::string(to_string(classify(score, threshold)));
  }
  out << j.dump() << '\n';
  return 0;
}

// Flag storage shared by every subcommand.
struct FlagValues {
  std::string config;
  std::string corpus;
  std::string corpus_format;
  std::string embeddings;
  std::string format;
  bool no_header = false;
  std::string lexicon;
  std::size_t k = 0;
  std::string stopwords;
  std::string threshold;
  std::string results;
  std::string out;
  std::size_t parallelism = 0;
  std::size_t max_vocab = 0;
  std::string event_keywords;
  std::string condition_keywords;
  std::string seed_labels;
  std::string text;
};

PartialConfig flags_to_partial(const CLI::App& sub, const FlagValues& v) {
  PartialConfig p;
  auto given = [&](const char* name) {
    const std::string flag = std::string("--") + name;
    return sub.get_option_no_throw(flag) != nullptr && sub.count(flag) > 0;
  };
  if (given("corpus")) p.corpus = v.corpus;
  if (given("corpus-format")) p.corpus_format = parse_corpus_format(v.corpus_format);
  if (given("embeddings")) p.embeddings = v.embeddings;
  if (given("format")) p.embedding_format = parse_embedding_format(v.format);
  if (given("no-header")) p.no_header = v.no_header;
  if (given("lexicon")) p.lexicon = v.lexicon;
  if (given("k")) p.k = v.k;
  if (given("stopwords")) p.stopwords = v.stopwords;
  if (given("threshold")) p.threshold = v.threshold;
  if (given("results")) p.results = v.results;
  if (given("out")) p.out = v.out;
  if (given("parallelism")) p.parallelism = v.parallelism;
  if (given("max-vocab")) p.max_vocab = v.max_vocab;
  if (given("event-keywords")) p.event_keywords = parse_keyword_list(v.event_keywords);
  if (given("condition-keywords")) p.condition_keywords = parse_keyword_list(v.condition_keywords);
  if (given("seed-labels")) p.seed_labels = parse_seed_labels(v.seed_labels);
  return p;
}

}  // namespace

PartialConfig load_config_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config file '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");

  static const std::set<std::string> known = {
      "corpus",    "corpus_format", "embeddings",  "format",         "no_header",
      "lexicon",   "k",             "stopwords",   "threshold",      "results",
      "out",       "parallelism",   "max_vocab",   "event_keywords", "condition_keywords",
      "seed_labels"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw UsageError("unknown config key '" + key + "'");
  }

  const fs::path base = path.parent_path();
  PartialConfig p;
  try {
    auto path_of = [&](const char* key) -> std::optional<fs::path> {
      if (!j.contains(key)) return std::nullopt;
      fs::path value = j[key].get<std::string>();
      return value.is_relative() ? base / value : value;
    };
    auto count_of = [&](const char* key) -> std::optional<std::size_t> {
      if (!j.contains(key)) return std::nullopt;
      if (!j[key].is_number_unsigned()) throw UsageError(std::string("'") + key + "' must be a non-negative integer");
      return j[key].get<std::size_t>();
    };
    auto words_of = [&](const char* key) -> std::optional<std::set<std::string>> {
      if (!j.contains(key)) return std::nullopt;
      std::set<std::string> words;
      for (const auto& w : j[key].get<std::vector<std::string>>()) {
        for (auto& token : tokenize(w)) words.insert(std::move(token));
      }
      return words;
    };
    p.corpus = path_of("corpus");
    if (j.contains("corpus_format")) p.corpus_format = parse_corpus_format(j["corpus_format"].get<std::string>());
    p.embeddings = path_of("embeddings");
    if (j.contains("format")) p.embedding_format = parse_embedding_format(j["format"].get<std::string>());
    if (j.contains("no_header")) p.no_header = j["no_header"].get<bool>();
    p.lexicon = path_of("lexicon");
    p.k = count_of("k");
    p.stopwords = path_of("stopwords");
    p.threshold = path_of("threshold");
    p.results = path_of("results");
    p.out = path_of("out");
    p.parallelism = count_of("parallelism");
    p.max_vocab = count_of("max_vocab");
    p.event_keywords = words_of("event_keywords");
    p.condition_keywords = words_of("condition_keywords");
    if (j.contains("seed_labels")) p.seed_labels = parse_seed_labels(j["seed_labels"].get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path.string() + "': " + e.what());
  }
  return p;
}

RunConfig resolve_config(const PartialConfig& flags, const PartialConfig& file) {
  RunConfig c;
  c.corpus = pick(flags.corpus, file.corpus);
  c.corpus_format = pick(flags.corpus_format, file.corpus_format);
  c.embeddings = pick(flags.embeddings, file.embeddings);
  c.embedding_format = pick(flags.embedding_format, file.embedding_format, c.embedding_format);
  c.no_header = pick(flags.no_header, file.no_header, false);
  c.lexicon = pick(flags.lexicon, file.lexicon);
  c.k = pick(flags.k, file.k, kDefaultLexiconSize);
  c.stopwords = pick(flags.stopwords, file.stopwords);
  c.threshold = pick(flags.threshold, file.threshold);
  c.results = pick(flags.results, file.results);
  c.out = pick(flags.out, file.out);
  c.parallelism = pick(flags.parallelism, file.parallelism, std::size_t{1});
  c.max_vocab = pick(flags.max_vocab, file.max_vocab);
  c.event_keywords = pick(flags.event_keywords, file.event_keywords, default_event_keywords());
  c.condition_keywords =
      pick(flags.condition_keywords, file.condition_keywords, default_condition_keywords());
  c.seed_labels = pick(flags.seed_labels, file.seed_labels, SeedLabels::All);
  if (c.k == 0) throw UsageError("--k must be at least 1");
  if (c.parallelism == 0) throw UsageError("--parallelism must be at least 1");
  return c;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify tweets as traffic related by word-embedding similarity to a keyword lexicon"};
  app.name("tweetsense");
  app.require_subcommand(1);
  FlagValues v;

  auto* build = app.add_subcommand("build-dict", "Build the keyword lexicon from a labeled corpus");
  auto* calibrate = app.add_subcommand("calibrate", "Fit the similarity threshold on a labeled corpus");
  auto* classify_cmd = app.add_subcommand("classify", "Classify a corpus into a results JSONL file");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a results file against corpus labels");
  auto* score = app.add_subcommand("score", "Show the similarity score of one text");

  auto add_corpus = [&](CLI::App* sub) {
    sub->add_option("--corpus", v.corpus, "Tweet corpus (.jsonl or .csv)");
    sub->add_option("--corpus-format", v.corpus_format, "jsonl or csv (default: by extension)");
  };
  auto add_embeddings = [&](CLI::App* sub) {
    sub->add_option("--embeddings", v.embeddings, "word2vec embedding file");
    sub->add_option("--format", v.format, "binary or text (default binary)");
    sub->add_flag("--no-header", v.no_header, "Text embeddings without a header line");
    sub->add_option("--max-vocab", v.max_vocab, "Load at most N embedding records");
  };
  for (auto* sub : {build, calibrate, classify_cmd, evaluate_cmd, score}) {
    sub->add_option("--config", v.config, "JSON config file; flags take precedence");
  }
  add_corpus(build);
  build->add_option("--k", v.k, "Lexicon size (default 50)");
  build->add_option("--stopwords", v.stopwords, "Stopword file replacing the built-in list");
  build->add_option("--seed-labels", v.seed_labels, "Seed tweets: all, high or low (default all)");
  build->add_option("--event-keywords", v.event_keywords, "Comma-separated event keywords");
  build->add_option("--condition-keywords", v.condition_keywords, "Comma-separated condition keywords");
  build->add_option("--out", v.out, "Lexicon JSON to write");

  add_corpus(calibrate);
  add_embeddings(calibrate);
  calibrate->add_option("--lexicon", v.lexicon, "Lexicon JSON");
  calibrate->add_option("--out", v.out, "Threshold JSON to write");

  add_corpus(classify_cmd);
  add_embeddings(classify_cmd);
  classify_cmd->add_option("--lexicon", v.lexicon, "Lexicon JSON");
  classify_cmd->add_option("--threshold", v.threshold, "Threshold JSON");
  classify_cmd->add_option("--parallelism", v.parallelism, "Worker threads (default 1)");
  classify_cmd->add_option("--out", v.out, "Results JSONL to write");

  evaluate_cmd->add_option("--results", v.results, "Results JSONL from classify");
  add_corpus(evaluate_cmd);
  evaluate_cmd->add_option("--threshold", v.threshold, "Threshold JSON used for the results");
  evaluate_cmd->add_option("--out", v.out, "Also write the report JSON here");

  score->add_option("--text", v.text, "Text to score")->required();
  add_embeddings(score);
  score->add_option("--lexicon", v.lexicon, "Lexicon JSON");
  score->add_option("--threshold", v.threshold, "Optional threshold JSON to also print a label");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* active = nullptr;
    for (auto* sub : {build, calibrate, classify_cmd, evaluate_cmd, score}) {
      if (sub->parsed()) active = sub;
    }
    const PartialConfig flags = flags_to_partial(*active, v);
    const PartialConfig file = v.config.empty() ? PartialConfig{} : load_config_file(v.config);
    const RunConfig config = resolve_config(flags, file);

    if (active == build) return cmd_build_dict(config, out, err);
    if (active == calibrate) return cmd_calibrate(config, out, err);
    if (active == classify_cmd) return cmd_classify(config, out, err);
    if (active == evaluate_cmd) return cmd_evaluate(config, out, err);
    return cmd_score(config, v.text, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace tweetsense
