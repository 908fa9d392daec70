// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tweetsense/embedding_store.hpp"
#include "tweetsense/label.hpp"
#include "tweetsense/lexicon.hpp"
#include "tweetsense/text_pipeline.hpp"

namespace tweetsense {

struct BestPair {
  std::string tweet_token;
  std::string keyword;

  bool operator==(const BestPair&) const = default;
};

/// Highest cosine similarity between any in-vocabulary tweet token and any
/// in-vocabulary keyword. `value` is absent when either side has no vectors.
struct SimilarityScore {
  std::optional<double> value;
  std::optional<BestPair> best_pair;
  std::size_t covered_tokens = 0;

  bool operator==(const SimilarityScore&) const = default;
};

/// The one trained parameter: tweets scoring at or above `theta` are traffic related.
struct Threshold {
  double theta = 0.0;
  double objective_value = 0.0;  // F1 on the calibration set
  std::size_t calibration_size = 0;
  std::string lexicon_version;

  bool operator==(const Threshold&) const = default;
};

enum class Subtype { Event, Condition };

std::string_view to_string(Subtype subtype) noexcept;

struct SubtypeMatch {
  Subtype subtype = Subtype::Event;
  double similarity = 0.0;
};

struct ClassificationResult {
  std::string tweet_id;
  Label label = Label::Unrelated;
  std::optional<Subtype> subtype;
  SimilarityScore score;
  /// Set when this tweet could not be processed; label is then Unrelated.
  std::optional<std::string> error;

  bool operator==(const ClassificationResult&) const = default;
};

/// Keyword vectors resolved once against a table, reusable across tweets.
/// Keywords must be given in rank order; earlier keywords win score ties.
class KeywordScorer {
 public:
  KeywordScorer(const EmbeddingTable& table, std::span<const std::string> keywords);

  SimilarityScore score(std::span<const std::string> tokens) const;
  std::size_t keywords_in_vocab() const noexcept { return keywords_.size(); }

 private:
  struct Keyword {
    std::string text;
    std::span<const float> vector;
  };
  const EmbeddingTable* table_;
  std::vector<Keyword> keywords_;
};

std::vector<std::string> ranked_keywords(const KeywordLexicon& lexicon);

SimilarityScore score_tweet(const TokenizedTweet& tweet, const KeywordLexicon& lexicon,
                            const EmbeddingTable& table);

struct ScoredExample {
  std::optional<double> score;
  bool positive = false;
};

/// Picks the theta maximizing F1 of (score present && score >= theta).
/// Candidates are midpoints between consecutive distinct scores plus one
/// value below the minimum and one above the maximum; ties go to the higher
/// theta. Examples without a score count as predicted negatives.
Threshold calibrate_threshold(std::span<const ScoredExample> examples);

Label classify(const std::optional<double>& score, double theta) noexcept;
inline Label classify(const SimilarityScore& score, const Threshold& threshold) noexcept {
  return classify(score.value, threshold.theta);
}

std::optional<SubtypeMatch> categorize_subtype(const TokenizedTweet& tweet,
                                               const KeywordLexicon& lexicon,
                                               const EmbeddingTable& table);

/// Full per-tweet pipeline: tokenize, score, threshold, sub-type.
/// Throws EmptyLexicon on construction. Holds a reference to `table`.
class TweetClassifier {
 public:
  TweetClassifier(const KeywordLexicon& lexicon, const EmbeddingTable& table,
                  Threshold threshold);

  ClassificationResult classify(const Tweet& tweet) const;
  bool has_subtype_partition() const noexcept { return subtyping_; }

 private:
  Threshold threshold_;
  KeywordScorer all_;
  KeywordScorer events_;
  KeywordScorer conditions_;
  bool subtyping_;
};

/// Element-wise classification. Output order matches input order and does
/// not depend on `parallelism`. Per-tweet failures become error-marked results.
std::vector<ClassificationResult> classify_batch(std::span<const Tweet> tweets,
                                                 const KeywordLexicon& lexicon,
                                                 const EmbeddingTable& table,
                                                 const Threshold& threshold,
                                                 std::size_t parallelism = 1);

std::string threshold_to_json(const Threshold& threshold);
Threshold threshold_from_json(const std::string& text);
void save_threshold(const Threshold& threshold, const std::filesystem::path& path);
Threshold load_threshold(const std::filesystem::path& path);

}  // namespace tweetsense
