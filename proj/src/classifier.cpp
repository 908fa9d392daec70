// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include "tweetsense/classifier.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "tweetsense/error.hpp"
#include "tweetsense/evaluation.hpp"

namespace tweetsense {

std::string_view to_string(Subtype subtype) noexcept {
  return subtype == Subtype::Event ? "event" : "condition";
}

KeywordScorer::KeywordScorer(const EmbeddingTable& table, std::span<const std::string> keywords)
    : table_(&table) {
  for (const auto& k : keywords) {
    if (auto v = table.lookup(k)) keywords_.push_back({k, *v});
  }
}

SimilarityScore KeywordScorer::score(std::span<const std::string> tokens) const {
  SimilarityScore result;
  std::size_t best_token = 0;
  std::size_t best_keyword = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const auto vec = table_->lookup(tokens[t]);
    if (!vec) continue;
    ++result.covered_tokens;
    for (std::size_t k = 0; k < keywords_.size(); ++k) {
      const double sim = cosine(*vec, keywords_[k].vector);
      // Strict comparison keeps the earliest token, then the higher-ranked keyword.
      if (!result.value || sim > *result.value) {
        result.value = sim;
        best_token = t;
        best_keyword = k;
      }
    }
  }
  if (result.value) result.best_pair = BestPair{tokens[best_token], keywords_[best_keyword].text};
  return result;
}

std::vector<std::string> ranked_keywords(const KeywordLexicon& lexicon) {
  std::vector<std::string> out;
  out.reserve(lexicon.entries.size());
  for (const auto& e : lexicon.entries) out.push_back(e.keyword);
  return out;
}

SimilarityScore score_tweet(const TokenizedTweet& tweet, const KeywordLexicon& lexicon,
                            const EmbeddingTable& table) {
  if (lexicon.empty()) throw Error(ErrorCode::EmptyLexicon, "lexicon has no keywords");
  const auto keywords = ranked_keywords(lexicon);
  return KeywordScorer(table, keywords).score(tweet.tokens);
}

Threshold calibrate_threshold(std::span<const ScoredExample> examples) {
  std::vector<std::pair<double, bool>> present;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  for (const auto& e : examples) {
    (e.positive ? positives : negatives) += 1;
    if (e.score) present.emplace_back(*e.score, e.positive);
  }
  if (positives == 0 || negatives == 0 || present.empty()) {
    throw Error(ErrorCode::DegenerateCalibrationSet,
                "calibration needs positives, negatives and at least one present score (got " +
                    std::to_string(positives) + " positive, " + std::to_string(negatives) +
                    " negative, " + std::to_string(present.size()) + " scored)");
  }
  std::sort(present.begin(), present.end());

  std::vector<double> distinct;
  for (const auto& [score, _] : present) {
    if (distinct.empty() || distinct.back() != score) distinct.push_back(score);
  }
  std::vector<double> candidates;
  candidates.reserve(distinct.size() + 1);
  const double lowest = distinct.front();
  const double highest = distinct.back();
  candidates.push_back(lowest > -1.0 ? (lowest - 1.0) / 2.0 : -1.0);
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    candidates.push_back((distinct[i] + distinct[i + 1]) / 2.0);
  }
  // Above the maximum. At 1.0 there is no room inside [-1, 1]; that
  // candidate then keeps the top scores positive, which the midpoints
  // already cover, so it can only win when every candidate scores zero.
  candidates.push_back(highest < 1.0 ? (highest + 1.0) / 2.0 : 1.0);

  std::size_t present_pos = 0;
  for (const auto& [_, positive] : present) present_pos += positive ? 1 : 0;
  const std::size_t present_neg = present.size() - present_pos;

  Threshold best;
  best.calibration_size = examples.size();
  bool have_best = false;
  std::size_t below = 0;
  std::size_t pos_below = 0;
  for (double theta : candidates) {
    while (below < present.size() && present[below].first < theta) {
      pos_below += present[below].second ? 1 : 0;
      ++below;
    }
    const std::size_t tp = present_pos - pos_below;
    const std::size_t fp = present_neg - (below - pos_below);
    const std::size_t fn = positives - tp;
    const double f1 = f1_of(tp, fp, fn).value_or(0.0);
    if (!have_best || f1 >= best.objective_value) {
      best.theta = theta;
      best.objective_value = f1;
      have_best = true;
    }
  }
  return best;
}

Label classify(const std::optional<double>& score, double theta) noexcept {
  return score && *score >= theta ? Label::TrafficRelated : Label::Unrelated;
}

namespace {

std::optional<SubtypeMatch> pick_subtype(const SimilarityScore& event,
                                         const SimilarityScore& condition) {
  if (!event.value && !condition.value) return std::nullopt;
  if (!condition.value) return SubtypeMatch{Subtype::Event, *event.value};
  if (!event.value) return SubtypeMatch{Subtype::Condition, *condition.value};
  if (*event.value >= *condition.value) return SubtypeMatch{Subtype::Event, *event.value};
  return SubtypeMatch{Subtype::Condition, *condition.value};
}

}  // namespace

std::optional<SubtypeMatch> categorize_subtype(const TokenizedTweet& tweet,
                                               const KeywordLexicon& lexicon,
                                               const EmbeddingTable& table) {
  if (lexicon.event_keywords.empty() || lexicon.condition_keywords.empty()) {
    throw Error(ErrorCode::MissingSubtypePartition,
                "lexicon needs at least one event and one condition keyword");
  }
  const auto event = KeywordScorer(table, lexicon.event_keywords).score(tweet.tokens);
  const auto condition = KeywordScorer(table, lexicon.condition_keywords).score(tweet.tokens);
  return pick_subtype(event, condition);
}

namespace {

const KeywordLexicon& require_keywords(const KeywordLexicon& lexicon) {
  if (lexicon.empty()) throw Error(ErrorCode::EmptyLexicon, "lexicon has no keywords");
  return lexicon;
}

}  // namespace

TweetClassifier::TweetClassifier(const KeywordLexicon& lexicon, const EmbeddingTable& table,
                                 Threshold threshold)
    : threshold_(std::move(threshold)),
      all_(table, ranked_keywords(require_keywords(lexicon))),
      events_(table, lexicon.event_keywords),
      conditions_(table, lexicon.condition_keywords),
      subtyping_(!lexicon.event_keywords.empty() && !lexicon.condition_keywords.empty()) {}

ClassificationResult TweetClassifier::classify(const Tweet& tweet) const {
  ClassificationResult result;
  result.tweet_id = tweet.id;
  if (auto problem = validate(tweet)) {
    result.error = *problem;
    return result;
  }
  const auto tokens = tokenize(tweet.text);
  result.score = all_.score(tokens);
  result.label = tweetsense::classify(result.score, threshold_);
  if (result.label == Label::TrafficRelated && subtyping_) {
    if (auto match = pick_subtype(events_.score(tokens), conditions_.score(tokens))) {
      result.subtype = match->subtype;
    }
  }
  return result;
}

std::vector<ClassificationResult> classify_batch(std::span<const Tweet> tweets,
                                                 const KeywordLexicon& lexicon,
                                                 const EmbeddingTable& table,
                                                 const Threshold& threshold,
                                                 std::size_t parallelism) {
  std::vector<ClassificationResult> results(tweets.size());
  std::optional<TweetClassifier> classifier;
  try {
    classifier.emplace(lexicon, table, threshold);
  } catch (const Error& e) {
    for (std::size_t i = 0; i < tweets.size(); ++i) {
      results[i].tweet_id = tweets[i].id;
      results[i].error = e.what();
    }
    return results;
  }

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        results[i] = classifier->classify(tweets[i]);
      } catch (const std::exception& e) {
        results[i] = ClassificationResult{};
        results[i].tweet_id = tweets[i].id;
        results[i].error = e.what();
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(tweets.size(), 1));
  if (workers == 1) {
    run(0, tweets.size());
    return results;
  }
  const std::size_t chunk = (tweets.size() + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(tweets.size(), w * chunk);
    const std::size_t end = std::min(tweets.size(), begin + chunk);
    if (begin < end) pool.emplace_back(run, begin, end);
  }
  pool.clear();
  return results;
}

std::string threshold_to_json(const Threshold& threshold) {
  nlohmann::ordered_json j;
  j["theta"] = threshold.theta;
  j["objective_value"] = threshold.objective_value;
  j["calibration_size"] = threshold.calibration_size;
  j["lexicon_version"] = threshold.lexicon_version;
  return j.dump(2) + "\n";
}

Threshold threshold_from_json(const std::string& text) {
  Threshold t;
  try {
    const auto j = nlohmann::json::parse(text);
    t.theta = j.at("theta").get<double>();
    t.objective_value = j.at("objective_value").get<double>();
    t.calibration_size = j.at("calibration_size").get<std::size_t>();
    t.lexicon_version = j.value("lexicon_version", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedThresholdFile, e.what());
  }
  if (!(t.theta >= -1.0 && t.theta <= 1.0)) {
    throw Error(ErrorCode::MalformedThresholdFile, "theta outside [-1, 1]");
  }
  if (!(t.objective_value >= 0.0 && t.objective_value <= 1.0)) {
    throw Error(ErrorCode::MalformedThresholdFile, "objective_value outside [0, 1]");
  }
  return t;
}

void save_threshold(const Threshold& threshold, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write threshold '" + path.string() + "'");
  out << threshold_to_json(threshold);
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

Threshold load_threshold(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open threshold '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return threshold_from_json(buffer.str());
}

}  // namespace tweetsense
